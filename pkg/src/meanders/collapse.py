"""Collapsed bi-rainbow meanders.

Each symmetric pair of arcs in a rainbow family is squashed to one arc on
points ``1..alpha``; the middle arc of an odd family becomes a point.  The
collapsed picture splits into paths and cycles, and every cycle stands for
two curves of the original meander while every path stands for one:
``Z = P + 2C``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .birainbow import _families


@dataclass(frozen=True)
class CollapsedRainbow:
    size: int
    upper_pairing: tuple[int, ...]  # 1-based; 0 marks an unpaired point
    lower_pairing: tuple[int, ...]
    paths: int
    cycles: int
    isolated: int

    @property
    def z(self) -> int:
        return self.paths + 2 * self.cycles

    def semi_isolated(self) -> list[int]:
        """Points with at least one unpaired side, in order."""
        return [p for p in range(1, self.size + 1)
                if self.upper_pairing[p - 1] == 0 or self.lower_pairing[p - 1] == 0]

    def __str__(self):
        return f"paths={self.paths} cycles={self.cycles} isolated={self.isolated} Z={self.z}"


def _pairings(fams: list[int]) -> tuple[list[int], list[int]]:
    alpha = sum(fams)
    upper = [0] * (alpha + 1)
    left = 0
    for a in fams:
        for i in range(left + 1, left + a + 1):
            j = 2 * left + a + 1 - i
            if j != i:
                upper[i] = j
        left += a
    lower = [0] * (alpha + 1)
    for i in range(1, alpha + 1):
        j = alpha + 1 - i
        if j != i:
            lower[i] = j
    return upper, lower


def collapse(t) -> CollapsedRainbow:
    fams = _families(t)
    alpha = sum(fams)
    upper, lower = _pairings(fams)
    seen = [False] * (alpha + 1)
    paths = isolated = cycles = 0

    # paths start at a point with a free side and leave through the other side
    for p in range(1, alpha + 1):
        if seen[p] or (upper[p] and lower[p]):
            continue
        if not upper[p] and not lower[p]:
            seen[p] = True
            isolated += 1
            paths += 1
            continue
        use_upper = bool(upper[p])
        k = p
        while True:
            seen[k] = True
            nxt = upper[k] if use_upper else lower[k]
            if not nxt:
                break
            k = nxt
            use_upper = not use_upper
        paths += 1

    for p in range(1, alpha + 1):
        if seen[p]:
            continue
        k, use_upper = p, True
        while not seen[k]:
            seen[k] = True
            k = upper[k] if use_upper else lower[k]
            use_upper = not use_upper
        cycles += 1

    return CollapsedRainbow(alpha, tuple(upper[1:]), tuple(lower[1:]), paths, cycles, isolated)


def z_via_collapse(t) -> int:
    return collapse(t).z
