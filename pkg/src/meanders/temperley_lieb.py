"""Temperley-Lieb words as strand diagrams, and their closure into meanders.

Boundary points of an ``alpha``-strand diagram are numbered ``1..alpha`` down
the left side and ``alpha+1..2*alpha`` down the right side.  The generator
``e_l`` caps left ``l, l+1`` together, cups right ``l, l+1`` together and runs
every other strand straight across.  Closed loops created while multiplying
are counted as islands; each contributes one factor ``q``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import core
from .errors import BadParameters, IndexOutOfRange, ParseError


@dataclass(frozen=True)
class TLWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise BadParameters(f"a word needs at least 2 strands, got {self.strands}")
        letters = tuple(int(x) for x in self.letters)
        for pos, l in enumerate(letters):
            if not 1 <= l < self.strands:
                raise IndexOutOfRange(f"generator e{l} at position {pos} outside 1..{self.strands - 1}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(f"e{l}" for l in self.letters) or "1"


_LETTER = re.compile(r"e?(\d+)")


def parse_word(text: str, strands: int) -> TLWord:
    """Accept ``"e3 e2 e4"``, ``"3,2,4"`` or mixtures; ``""``/``"1"`` is the identity."""
    body = text.strip()
    if body in ("", "1", "e0"):
        return TLWord(strands, ())
    letters = []
    for tok in re.split(r"[\s,]+", body):
        if not tok:
            continue
        m = _LETTER.fullmatch(tok)
        if m is None:
            raise ParseError(f"unexpected token {tok!r} in generator word")
        value = int(m.group(1))
        if value == 0:
            continue  # e0 is the unit
        letters.append(value)
    return TLWord(strands, tuple(letters))


@dataclass(frozen=True)
class StrandDiagram:
    strands: int
    boundary_pairing: tuple[int, ...]  # 1-based partner of boundary point 1..2*alpha
    islands: int = 0

    def partner(self, p: int) -> int:
        return self.boundary_pairing[p - 1]

    def same_diagram(self, other: "StrandDiagram") -> bool:
        return self.strands == other.strands and self.boundary_pairing == other.boundary_pairing


def identity(strands: int) -> StrandDiagram:
    a = strands
    pairing = [a + i for i in range(1, a + 1)] + list(range(1, a + 1))
    return StrandDiagram(a, tuple(pairing), 0)


def generator(strands: int, l: int) -> StrandDiagram:
    return diagram(TLWord(strands, (l,)))


def diagram(w: TLWord) -> StrandDiagram:
    """Multiply the generators left to right, updating the right boundary in place."""
    a = w.strands
    pair = np.empty(2 * a + 1, dtype=np.int64)
    pair[0] = 0
    pair[1:a + 1] = np.arange(a + 1, 2 * a + 1)
    pair[a + 1:] = np.arange(1, a + 1)
    islands = 0
    for l in w.letters:
        r1, r2 = a + l, a + l + 1
        p, q = int(pair[r1]), int(pair[r2])
        if p == r2:
            islands += 1
        else:
            pair[p] = q
            pair[q] = p
        pair[r1] = r2
        pair[r2] = r1
    return StrandDiagram(a, tuple(int(x) for x in pair[1:]), islands)


def compose(d1: StrandDiagram, d2: StrandDiagram) -> StrandDiagram:
    """Place ``d2`` to the right of ``d1`` by following strands across the seam."""
    if d1.strands != d2.strands:
        raise BadParameters(f"cannot compose {d1.strands} strands with {d2.strands}")
    a = d1.strands
    p1, p2 = d1.boundary_pairing, d2.boundary_pairing
    # seam heights visited while tracing boundary strands
    seam_seen = [False] * (a + 1)
    out = [0] * (2 * a + 1)

    def follow(side: int, point: int) -> int:
        # side 1: at a point of d1, side 2: at a point of d2; returns result label
        while True:
            if side == 1:
                q = p1[point - 1]
                if q <= a:
                    return q
                h = q - a
                seam_seen[h] = True
                side, point = 2, h
            else:
                q = p2[point - 1]
                if q > a:
                    return q
                seam_seen[q] = True
                side, point = 1, a + q

    for p in range(1, a + 1):
        if not out[p]:
            q = follow(1, p)
            out[p], out[q] = q, p
    for p in range(a + 1, 2 * a + 1):
        if not out[p]:
            q = follow(2, p)
            out[p], out[q] = q, p

    # the rest of the seam closes up into loops
    loops = 0
    for h in range(1, a + 1):
        if seam_seen[h]:
            continue
        loops += 1
        k = h
        while not seam_seen[k]:
            seam_seen[k] = True
            k = p2[k - 1]  # d2 left -> d2 left
            seam_seen[k] = True
            k = p1[a + k - 1] - a  # d1 right -> d1 right
    return StrandDiagram(a, tuple(out[1:]), d1.islands + d2.islands + loops)


def closure_to_meander(d: StrandDiagram) -> core.Meander:
    """Close the diagram with a rainbow below the glued left/right boundaries.

    Left height ``i`` becomes axis point ``i`` and right height ``i`` becomes
    ``2*alpha + 1 - i``, so the identification of equal heights is exactly the
    lower rainbow.
    """
    a = d.strands
    n = 2 * a

    def axis(p):
        return p if p <= a else n + 1 - (p - a)

    upper = [0] * n
    for p in range(1, n + 1):
        upper[axis(p) - 1] = axis(d.partner(p))
    return core.Meander(core.validate_arc_collection(upper), core.rainbow(a))


def closure_components(d: StrandDiagram) -> int:
    return core.count_components(closure_to_meander(d))


def trace_exponent(w: TLWord) -> int:
    d = diagram(w)
    return d.islands + closure_components(d)


# -- single rewrites of the defining relations --------------------------------

def square_sites(w: TLWord) -> list[int]:
    return [i for i in range(len(w) - 1) if w.letters[i] == w.letters[i + 1]]


def commute_sites(w: TLWord) -> list[int]:
    return [i for i in range(len(w) - 1) if abs(w.letters[i] - w.letters[i + 1]) >= 2]


def braid_sites(w: TLWord) -> list[int]:
    L = w.letters
    return [i for i in range(len(w) - 2)
            if L[i] == L[i + 2] and abs(L[i] - L[i + 1]) == 1]


def rewrite_square(w: TLWord, i: int) -> TLWord:
    """``e_l e_l -> e_l`` at position ``i``; the diagram loses one island."""
    if i not in square_sites(w):
        raise IndexOutOfRange(f"no repeated generator at position {i}")
    return TLWord(w.strands, w.letters[:i] + w.letters[i + 1:])


def rewrite_commute(w: TLWord, i: int) -> TLWord:
    """Swap distant neighbours ``e_l e_k`` with ``|l - k| >= 2``."""
    if i not in commute_sites(w):
        raise IndexOutOfRange(f"letters at position {i} do not commute")
    L = list(w.letters)
    L[i], L[i + 1] = L[i + 1], L[i]
    return TLWord(w.strands, tuple(L))


def rewrite_braid(w: TLWord, i: int) -> TLWord:
    """``e_l e_{l+-1} e_l -> e_l`` at position ``i``."""
    if i not in braid_sites(w):
        raise IndexOutOfRange(f"no e_l e_(l+-1) e_l pattern at position {i}")
    return TLWord(w.strands, w.letters[:i + 1] + w.letters[i + 3:])
