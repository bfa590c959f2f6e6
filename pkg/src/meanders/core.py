"""Meander representations and the brute-force component count.

Points on the horizontal axis are numbered ``1..2*alpha`` on every public
surface.  Internally arc collections keep a 0-based partner array, which is
what the kernels in :mod:`meanders._kernels` consume.

A meander is a pair of arc collections (upper, lower) over the same points.
Its *combined permutation* sends odd points to their upper partner and even
points to their lower partner; its cycles are the closed curves.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import (
    BracketSyntaxError,
    Interlaced,
    InternalConsistencyError,
    NotCleaved,
    NotConnected,
    NotInvolution,
    ParityViolation,
    ParseError,
    PrefixViolation,
    SizeMismatch,
    TooLargeForOracle,
    TotalMismatch,
)

DEFAULT_ORACLE_CAP = 2**32


def oracle_cap() -> int:
    """Largest number of axis points the brute-force count will touch."""
    raw = os.environ.get("MEANDER_ORACLE_CAP")
    if raw is None or not raw.strip():
        return DEFAULT_ORACLE_CAP
    try:
        cap = int(raw.strip().replace("_", ""), 0)
    except ValueError:
        raise ParseError(f"MEANDER_ORACLE_CAP={raw!r} is not an integer") from None
    return cap


def check_oracle_size(points: int) -> None:
    cap = oracle_cap()
    if points > cap:
        raise TooLargeForOracle(f"{points} axis points exceed the oracle cap of {cap}")


# ---------------------------------------------------------------------------
# arc collections
# ---------------------------------------------------------------------------

class ArcCollection:
    """A non-interlaced fixed-point-free involution on ``1..2*alpha``.

    Build instances with :func:`validate_arc_collection`; the constructor
    trusts its input and is meant for internal callers that produce valid
    collections by construction.
    """

    __slots__ = ("_partner",)

    def __init__(self, partner0: np.ndarray):
        arr = np.asarray(partner0, dtype=np.int64).copy()
        arr.setflags(write=False)
        self._partner = arr

    @property
    def size(self) -> int:
        return self._partner.shape[0] // 2

    @property
    def points(self) -> int:
        return self._partner.shape[0]

    @property
    def array0(self) -> np.ndarray:
        """Read-only 0-based partner array."""
        return self._partner

    @property
    def pairing(self) -> tuple[int, ...]:
        """1-based partner list: entry ``p-1`` is the partner of point ``p``."""
        return tuple(int(q) + 1 for q in self._partner)

    def partner(self, p: int) -> int:
        return int(self._partner[p - 1]) + 1

    def arcs(self) -> list[tuple[int, int]]:
        """Arcs ``(a, b)`` with ``a < b``, ordered by left end."""
        return [(p + 1, int(q) + 1) for p, q in enumerate(self._partner) if q > p]

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if not isinstance(other, ArcCollection):
            return NotImplemented
        return np.array_equal(self._partner, other._partner)

    def __hash__(self):
        return hash(self._partner.tobytes())

    def __repr__(self):
        return "ArcCollection(" + "".join(f"({a},{b})" for a, b in self.arcs()) + ")"


def _cyclic_euler_cycles(partner0: np.ndarray) -> int:
    n = partner0.shape[0]
    if n == 0:
        return 1
    # (pairing o sigma)(k) = pairing(k + 1), with 2*alpha + 1 wrapping to 1
    return int(_kernels.count_cycles(np.roll(partner0, -1)))


def validate_arc_collection(pairing: Sequence[int] | np.ndarray) -> ArcCollection:
    """Validate a 1-based partner list and wrap it.

    Runs the direct interlacing scan and the face count of ``pairing o sigma``
    (``alpha + 1`` cycles exactly for a planar collection); the two must agree.
    """
    arr = np.asarray(pairing, dtype=np.int64)
    if arr.ndim != 1:
        raise NotInvolution("partner list must be one-dimensional")
    n = arr.shape[0]
    if n % 2:
        raise NotInvolution(f"odd number of points ({n})")
    check_oracle_size(n)
    if n and (arr.min() < 1 or arr.max() > n):
        raise NotInvolution(f"partners must lie in 1..{n}")
    p0 = arr - 1
    idx = np.arange(n)
    fixed = np.flatnonzero(p0 == idx)
    if fixed.size:
        raise NotInvolution(f"point {fixed[0] + 1} is a fixed point")
    broken = np.flatnonzero(p0[p0] != idx)
    if broken.size:
        p = int(broken[0])
        raise NotInvolution(f"point {p + 1} maps to {p0[p] + 1}, which does not map back")
    same = np.flatnonzero((idx + p0) % 2 == 0)
    if same.size:
        p = int(same[0])
        raise ParityViolation(p + 1, int(p0[p]) + 1)

    a, b = _kernels.interlace_witness(p0)
    cycles = _cyclic_euler_cycles(p0)
    alpha = n // 2
    if a < 0:
        if cycles != alpha + 1:
            raise InternalConsistencyError(
                f"interlacing scan passed but pairing o sigma has {cycles} cycles, expected {alpha + 1}"
            )
        return ArcCollection(p0)
    if cycles > alpha:
        raise InternalConsistencyError(
            f"interlaced arcs found but pairing o sigma still has {cycles} > {alpha} cycles"
        )
    raise Interlaced(int(a) + 1, int(b) + 1)


def euler_cycle_count(arcs: ArcCollection | Sequence[int]) -> int:
    """Cycles of ``pairing o sigma`` for a (not necessarily planar) involution."""
    if isinstance(arcs, ArcCollection):
        p0 = arcs.array0
    else:
        p0 = np.asarray(arcs, dtype=np.int64) - 1
    return _cyclic_euler_cycles(p0)


def arcs_from_pairs(pairs: Iterable[tuple[int, int]], points: int | None = None) -> ArcCollection:
    """Validated collection from transpositions such as ``[(1, 10), (2, 5)]``."""
    pairs = list(pairs)
    n = 2 * len(pairs) if points is None else points
    partner = [0] * n
    for a, b in pairs:
        for p in (a, b):
            if not 1 <= p <= n:
                raise NotInvolution(f"point {p} outside 1..{n}")
            if partner[p - 1]:
                raise NotInvolution(f"point {p} used twice")
        partner[a - 1] = b
        partner[b - 1] = a
    if 0 in partner:
        raise NotInvolution(f"point {partner.index(0) + 1} is not covered")
    return validate_arc_collection(partner)


def rainbow(alpha: int) -> ArcCollection:
    """``alpha`` nested arcs ``(k, 2*alpha + 1 - k)``."""
    n = 2 * alpha
    return ArcCollection(np.arange(n - 1, -1, -1, dtype=np.int64))


def parse_involution(text: str) -> ArcCollection:
    """Parse ``"10,5,4,3,2,9,8,7,6,1"`` (partner of each point in order)."""
    body = text.strip()
    if not body:
        return validate_arc_collection([])
    values = []
    for tok in body.split(","):
        tok = tok.strip()
        if not re.fullmatch(r"\d+", tok):
            raise BracketSyntaxError(f"unexpected token {tok!r} in partner list", token=tok)
        values.append(int(tok))
    return validate_arc_collection(values)


def format_involution(arcs: ArcCollection) -> str:
    return ",".join(str(p) for p in arcs.pairing)


# ---------------------------------------------------------------------------
# meanders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Meander:
    upper: ArcCollection
    lower: ArcCollection

    def __post_init__(self):
        if self.upper.size != self.lower.size:
            raise SizeMismatch(f"upper has {self.upper.size} arcs, lower has {self.lower.size}")

    @property
    def size(self) -> int:
        return self.upper.size

    @property
    def points(self) -> int:
        return 2 * self.upper.size


def combine(upper: ArcCollection, lower: ArcCollection) -> Meander:
    return Meander(upper, lower)


def meander_permutation(m: Meander) -> tuple[int, ...]:
    """Combined permutation as a 1-based image list."""
    comb = _kernels.combined_permutation(m.upper.array0, m.lower.array0)
    return tuple(int(q) + 1 for q in comb)


def cycles_of(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycle decomposition of a 1-based image list; each cycle starts at its minimum."""
    n = len(perm)
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = perm[k - 1]
        out.append(tuple(cyc))
    return out


def format_cycles(cycles: Iterable[Sequence[int]]) -> str:
    return "".join("(" + ",".join(str(k) for k in c) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, points: int | None = None) -> tuple[int, ...]:
    """Inverse of :func:`format_cycles`; unlisted points are fixed."""
    body = re.sub(r"\s+", "", text)
    found = _CYCLE_RE.findall(body)
    if _CYCLE_RE.sub("", body):
        raise BracketSyntaxError(f"unexpected characters in cycle notation {text!r}")
    cycles = []
    for grp in found:
        if not grp:
            continue
        try:
            cycles.append([int(t) for t in grp.split(",")])
        except ValueError:
            raise BracketSyntaxError(f"bad cycle ({grp})", token=grp) from None
    n = points if points is not None else max((max(c) for c in cycles), default=0)
    perm = list(range(1, n + 1))
    seen = set()
    for c in cycles:
        for i, k in enumerate(c):
            if not 1 <= k <= n or k in seen:
                raise ParseError(f"point {k} repeated or out of range in cycle notation")
            seen.add(k)
            perm[k - 1] = c[(i + 1) % len(c)]
    return tuple(perm)


def meander_from_permutation(perm: Sequence[int]) -> Meander:
    """Recover (upper, lower) from a combined permutation."""
    n = len(perm)
    if n % 2:
        raise NotInvolution("meander permutation needs an even number of points")
    upper = [0] * n
    lower = [0] * n
    for k in range(1, n + 1):
        q = perm[k - 1]
        if (q - k) % 2 == 0:
            raise ParityViolation(k, q)
        target = upper if k % 2 else lower
        if target[k - 1] and target[k - 1] != q or target[q - 1] and target[q - 1] != k:
            raise NotInvolution(f"point {k} is attached to two arcs on the same side")
        target[k - 1] = q
        target[q - 1] = k
    return Meander(validate_arc_collection(upper), validate_arc_collection(lower))


def count_components(m: Meander) -> int:
    """Number of closed curves: cycles of the combined permutation.

    Cross-checked against the cycles of ``upper o lower``, which must be
    exactly twice as many.
    """
    check_oracle_size(m.points)
    if m.points == 0:
        return 0
    up = m.upper.array0
    low = m.lower.array0
    z = int(_kernels.meander_cycles(up, low))
    double = int(_kernels.count_cycles(up[low]))
    if double != 2 * z:
        raise InternalConsistencyError(f"upper o lower has {double} cycles, expected {2 * z}")
    return z


def product_cycles(m: Meander) -> list[tuple[int, ...]]:
    """Cycles of ``upper o lower`` (apply lower first)."""
    up = m.upper.array0
    low = m.lower.array0
    return cycles_of([int(q) + 1 for q in up[low]])


def trace_shooting(m: Meander) -> tuple[int, ...]:
    """Shooting permutation ``pi`` with ``pi(P^k(1)) = k + 1`` for the combined ``P``.

    Returned as a 1-based table indexed by axis position.  Verifies
    ``P = pi^-1 o sigma o pi`` before returning.
    """
    n = m.points
    if n == 0:
        return ()
    comb = _kernels.combined_permutation(m.upper.array0, m.lower.array0)
    pi = np.zeros(n, dtype=np.int64)
    k = 0
    for step in range(n):
        if step and k == 0:
            raise NotConnected(f"meander has {count_components(m)} components")
        pi[k] = step
        k = comb[k]
    if k != 0:
        raise NotConnected(f"meander has {count_components(m)} components")
    inv = np.empty(n, dtype=np.int64)
    inv[pi] = np.arange(n)
    conj = inv[(pi + 1) % n]
    if not np.array_equal(conj, comb):
        raise InternalConsistencyError("shooting permutation fails pi^-1 sigma pi = P")
    return tuple(int(v) + 1 for v in pi)


def meander_from_shooting(pi: Sequence[int]) -> Meander:
    n = len(pi)
    arr = np.asarray(pi, dtype=np.int64) - 1
    if sorted(arr.tolist()) != list(range(n)):
        raise ParseError("shooting table is not a permutation")
    inv = np.empty(n, dtype=np.int64)
    inv[arr] = np.arange(n)
    comb = inv[(arr + 1) % n]
    return meander_from_permutation([int(q) + 1 for q in comb])


# ---------------------------------------------------------------------------
# condensed bracket expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BracketExpression:
    """Run-length encoded bracket word: ``((open, close), ...)``, all positive."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        blocks = tuple((int(o), int(c)) for o, c in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        opened = closed = 0
        for i, (o, c) in enumerate(blocks, start=1):
            opened += o
            closed += c
            if closed > opened:
                raise PrefixViolation(i, opened, closed)
        if opened != closed:
            raise TotalMismatch(opened, closed)
        for i, (o, c) in enumerate(blocks, start=1):
            if o <= 0 or c <= 0:
                raise ParseError(f"block {i} has a non-positive entry; use from_blocks to merge zeros")

    @classmethod
    def from_blocks(cls, blocks: Iterable[tuple[int, int]]) -> "BracketExpression":
        """Accept zero entries and merge them away before validating."""
        return cls(normalize_blocks(blocks))

    @property
    def size(self) -> int:
        return sum(o for o, _ in self.blocks)

    def word(self) -> Iterator[bool]:
        """Expanded brackets, ``True`` for opening."""
        for o, c in self.blocks:
            for _ in range(o):
                yield True
            for _ in range(c):
                yield False

    def __str__(self):
        return emit_brackets(self)


def normalize_blocks(blocks: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Drop zero entries by merging neighbouring runs."""
    out: list[list[int]] = []
    for o, c in blocks:
        o, c = int(o), int(c)
        if o < 0 or c < 0:
            raise ParseError(f"negative block entry ({o},{c})")
        if o == 0 and c == 0:
            continue
        if out and o == 0:
            out[-1][1] += c
            continue
        if out and out[-1][1] == 0:
            out[-1][0] += o
            out[-1][1] = c
            continue
        out.append([o, c])
    return tuple((o, c) for o, c in out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([(),])|(\S))")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        pos = m.end()
        if m.group(1) is not None:
            yield "int", m.group(1), m.start(1)
        elif m.group(2) is not None:
            yield m.group(2), m.group(2), m.start(2)
        else:
            yield "bad", m.group(3), m.start(3)


def parse_brackets(text: str) -> BracketExpression:
    """Parse ``"((3,2),(2,3))"``; whitespace is ignored, zero entries are merged away."""
    toks = list(_tokens(text))
    toks.append(("end", "<end>", len(text)))
    i = 0

    def expect(kind):
        nonlocal i
        k, val, pos = toks[i]
        if k != kind:
            raise BracketSyntaxError(
                f"expected {kind!r} at position {pos}, found {val!r}", token=val, position=pos
            )
        i += 1
        return val

    expect("(")
    blocks = []
    if toks[i][0] == "(":
        while True:
            expect("(")
            o = int(expect("int"))
            expect(",")
            c = int(expect("int"))
            expect(")")
            blocks.append((o, c))
            if toks[i][0] == ",":
                i += 1
                continue
            break
    expect(")")
    expect("end")
    return BracketExpression.from_blocks(blocks)


def emit_brackets(b: BracketExpression) -> str:
    return "(" + ",".join(f"({o},{c})" for o, c in b.blocks) + ")"


def brackets_to_arcs(b: BracketExpression) -> ArcCollection:
    n = 2 * b.size
    check_oracle_size(n)
    partner = np.empty(n, dtype=np.int64)
    stack = []
    for p, is_open in enumerate(b.word()):
        if is_open:
            stack.append(p)
        else:
            q = stack.pop()
            partner[p] = q
            partner[q] = p
    return ArcCollection(partner)


def arcs_to_brackets(a: ArcCollection) -> BracketExpression:
    p0 = a.array0
    blocks: list[tuple[int, int]] = []
    opens = closes = 0
    for p, q in enumerate(p0):
        if q > p:
            if closes:
                blocks.append((opens, closes))
                opens = closes = 0
            opens += 1
        else:
            closes += 1
    if opens or closes:
        blocks.append((opens, closes))
    return BracketExpression(tuple(blocks))


def parse_meander(text: str) -> Meander:
    """Parse ``"UPPER/LOWER"`` bracket pair."""
    if text.count("/") != 1:
        raise BracketSyntaxError(f"meander needs exactly one '/' separating upper and lower: {text!r}")
    up, low = text.split("/")
    return combine(brackets_to_arcs(parse_brackets(up)), brackets_to_arcs(parse_brackets(low)))


def format_meander(m: Meander) -> str:
    return emit_brackets(arcs_to_brackets(m.upper)) + "/" + emit_brackets(arcs_to_brackets(m.lower))


# ---------------------------------------------------------------------------
# flip and rainbow meanders
# ---------------------------------------------------------------------------

def reflect_blocks(b: BracketExpression) -> BracketExpression:
    """Mirror image: reversed order, opening and closing runs swapped."""
    return BracketExpression(tuple((c, o) for o, c in reversed(b.blocks)))


def cleavage_index(b: BracketExpression) -> int | None:
    """Block count ``k`` after which the expression splits at its midpoint, or None."""
    half2 = b.size  # twice alpha/2
    opened = closed = 0
    if b.size == 0:
        return 0
    for k, (o, c) in enumerate(b.blocks, start=1):
        opened += o
        closed += c
        if 2 * opened == half2 and 2 * closed == half2:
            return k
        if 2 * opened > half2:
            return None
    return None


def is_cleaved(b: BracketExpression) -> bool:
    return cleavage_index(b) is not None


def flip(m: Meander) -> BracketExpression:
    """Rotate the lower collection to the right of the upper one.

    The result describes a cleaved rainbow meander on ``4*alpha`` points with
    the same number of curves.
    """
    upper = arcs_to_brackets(m.upper)
    lower = arcs_to_brackets(m.lower)
    out = BracketExpression(upper.blocks + reflect_blocks(lower).blocks)
    if cleavage_index(out) is None:
        raise InternalConsistencyError(f"flip produced a non-cleaved expression {out}")
    return out


def unflip(b: BracketExpression) -> Meander:
    """Inverse of :func:`flip` for cleaved expressions."""
    k = cleavage_index(b)
    if k is None:
        raise NotCleaved(f"{b} does not split at its midpoint")
    upper = BracketExpression(b.blocks[:k])
    lower = reflect_blocks(BracketExpression(b.blocks[k:]))
    return combine(brackets_to_arcs(upper), brackets_to_arcs(lower))


def rainbow_meander(b: BracketExpression) -> Meander:
    """Upper collection from ``b`` over a single lower rainbow."""
    return combine(brackets_to_arcs(b), rainbow(b.size))


def birainbow_to_meander(families: Sequence[int]) -> Meander:
    """Upper rainbow families of the given sizes over one lower rainbow.

    The empty tuple gives the empty meander (zero curves).
    """
    fams = [int(a) for a in families]
    for a in fams:
        if a < 1:
            raise ParseError(f"family sizes must be positive, got {a}")
    alpha = sum(fams)
    n = 2 * alpha
    check_oracle_size(n)
    upper = np.empty(n, dtype=np.int64)
    start = 0
    for a in fams:
        span = np.arange(start, start + 2 * a, dtype=np.int64)
        upper[start:start + 2 * a] = span[::-1]
        start += 2 * a
    return combine(ArcCollection(upper), rainbow(alpha))
