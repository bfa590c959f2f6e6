"""Cartesian billiards built from bracket expressions.

The boundary is a closed lattice polyline made of ``2*alpha`` unit edges, one
per bracket.  Billiard flights run on diagonals and bounce off edge
midpoints; the NE-SW flights realise the upper arcs and the NW-SE flights
the lower rainbow, so closed trajectories are the meander's curves.

Coordinates are kept doubled so that edge midpoints are integers.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from . import _kernels, core
from .errors import CircleDetected, DegenerateBoundary, NotCleaved

UP, RIGHT, DOWN, LEFT = (0, 1), (1, 0), (0, -1), (-1, 0)


@dataclass(frozen=True)
class BilliardBoundary:
    vertices: tuple[tuple[int, int], ...]  # lattice points, first == last
    moves: tuple[tuple[int, int], ...]

    @property
    def edges(self) -> int:
        return len(self.moves)

    @property
    def midpoints2(self) -> tuple[tuple[int, int], ...]:
        """Edge midpoints in doubled coordinates, in boundary order."""
        v = self.vertices
        return tuple((v[k][0] + v[k + 1][0], v[k][1] + v[k + 1][1]) for k in range(len(self.moves)))

    @property
    def midpoints(self) -> tuple[tuple[float, float], ...]:
        return tuple((x / 2, y / 2) for x, y in self.midpoints2)

    def vertex_text(self) -> str:
        return ";".join(f"{x},{y}" for x, y in self.vertices)


def _trace(moves) -> BilliardBoundary:
    x = y = 0
    verts = [(0, 0)]
    for dx, dy in moves:
        x, y = x + dx, y + dy
        verts.append((x, y))
    bd = BilliardBoundary(tuple(verts), tuple(moves))
    _check_boundary(bd)
    return bd


def _check_boundary(bd: BilliardBoundary) -> None:
    if not bd.moves:
        raise DegenerateBoundary("boundary has no edges")
    if bd.vertices[-1] != bd.vertices[0]:
        raise DegenerateBoundary(f"boundary does not close: ends at {bd.vertices[-1]}")
    mids = bd.midpoints2
    if len(set(mids)) != len(mids):
        raise DegenerateBoundary("boundary runs along the same unit edge twice")


def boundary_from_cleaved(b: core.BracketExpression) -> BilliardBoundary:
    """Up/right for the first half of the brackets, down/left for the second."""
    if not core.is_cleaved(b):
        raise NotCleaved(f"{b} has no block boundary splitting it into two balanced halves")
    alpha = b.size
    moves = []
    for k, opening in enumerate(b.word()):
        if k < alpha:
            moves.append(UP if opening else RIGHT)
        else:
            moves.append(DOWN if opening else LEFT)
    return _trace(moves)


def boundary_from_general(b: core.BracketExpression) -> BilliardBoundary:
    """Like :func:`boundary_from_cleaved`, with pairs straddling the midpoint twisted.

    For such a pair the bracket nearer the midpoint switches rule: a nearer
    opener goes right (its closer left), a nearer closer goes down (its opener up).
    """
    alpha = b.size
    word = list(b.word())
    partner = core.brackets_to_arcs(b).array0
    moves = []
    for k, opening in enumerate(word):
        if k < alpha:
            moves.append(UP if opening else RIGHT)
        else:
            moves.append(DOWN if opening else LEFT)
    for i in range(alpha):
        j = int(partner[i])
        if not word[i] or j < alpha:
            continue
        # 0-based: opener i in the first half, closer j in the second
        d_open = alpha - 1 - i
        d_close = j - alpha
        if d_open == d_close:
            raise CircleDetected(
                f"arc ({i + 1},{j + 1}) is symmetric about the midpoint and closes a circle with the lower rainbow"
            )
        if d_open < d_close:
            moves[i], moves[j] = RIGHT, LEFT
        else:
            moves[i], moves[j] = UP, DOWN
    return _trace(moves)


def boundary_from_meander(m: core.Meander) -> BilliardBoundary:
    return boundary_from_cleaved(core.flip(m))


def _interior_test(bd: BilliardBoundary):
    rows = defaultdict(list)
    for (x0, y0), (x1, y1) in zip(bd.vertices, bd.vertices[1:]):
        if x0 == x1:
            rows[min(y0, y1)].append(x0)
    for xs in rows.values():
        xs.sort()

    def inside(cx: int, cy: int) -> bool:
        xs = rows.get(cy)
        return bool(xs) and bisect_right(xs, cx) % 2 == 1

    return inside


def diagonal_pairings(bd: BilliardBoundary) -> tuple[np.ndarray, np.ndarray]:
    """0-based midpoint pairings along NE-SW and NW-SE flights."""
    _check_boundary(bd)
    mids = bd.midpoints2
    index = {p: k for k, p in enumerate(mids)}
    inside = _interior_test(bd)
    n = len(mids)
    limit = 4 * n + 4  # no flight can be longer than the boundary is wide
    out = []
    for family in ((1, 1), (-1, 1)):
        pairing = np.full(n, -1, dtype=np.int64)
        for k, (X, Y) in enumerate(mids):
            if pairing[k] >= 0:
                continue
            hit = None
            for sign in (1, -1):
                dx, dy = sign * family[0], sign * family[1]
                if not inside((2 * X + dx) // 4, (2 * Y + dy) // 4):
                    continue
                x, y = X + dx, Y + dy
                for _ in range(limit):
                    if (x, y) in index:
                        hit = index[(x, y)]
                        break
                    x, y = x + dx, y + dy
                break
            if hit is None or hit == k or pairing[hit] >= 0:
                raise DegenerateBoundary(f"flight from midpoint {k + 1} does not end on a fresh boundary midpoint")
            pairing[k], pairing[hit] = hit, k
        out.append(pairing)
    return out[0], out[1]


def count_trajectories(bd: BilliardBoundary) -> int:
    ne, nw = diagonal_pairings(bd)
    return _kernels.count_cycles(ne[nw]) // 2


def trajectory_meander(bd: BilliardBoundary) -> core.Meander:
    """The meander read off the billiard: NE-SW flights above, NW-SE below."""
    ne, nw = diagonal_pairings(bd)
    return core.Meander(core.validate_arc_collection(ne + 1), core.validate_arc_collection(nw + 1))
