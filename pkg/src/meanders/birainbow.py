"""Bi-rainbow meanders and the nose-retraction algorithms.

A bi-rainbow meander ``RM(a_1, ..., a_n)`` has ``n`` upper rainbow families
of the given sizes over a single lower rainbow of ``alpha = sum(a)`` arcs.
``Z(...)`` is its number of closed curves.

Two exact, logarithmic-time algorithms are provided:

* :func:`z_inner` retracts the middle family by the remainder of
  ``a_m`` modulo ``|L - R|``; for two families it is Euclid's algorithm.
* :func:`z_outer` works on the first/last families with seven cases.

Both run on plain Python integers and guard every intermediate against the
128-bit range so that results match a fixed-width implementation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from . import core
from .errors import (
    BadParameters,
    EmptyTuple,
    IndexOutOfRange,
    InternalConsistencyError,
    Overflow,
    ParseError,
    TooManyFamilies,
)

MAX_ENTRY = 2**63 - 1
MAX_WIDE = 2**127 - 1


def _wide(x: int) -> int:
    if x > MAX_WIDE or x < -MAX_WIDE:
        raise Overflow(f"intermediate value {x} exceeds the 128-bit range")
    return x


def bit_size(families: Iterable[int]) -> int:
    """Bits needed to write down the tuple: sum of ceil(log2(a + 1))."""
    return sum(int(a).bit_length() for a in families)


@dataclass(frozen=True)
class BiRainbow:
    families: tuple[int, ...]

    def __post_init__(self):
        fams = tuple(int(a) for a in self.families)
        for a in fams:
            if a < 1:
                raise ParseError(f"family sizes must be positive, got {a}")
            if a > MAX_ENTRY:
                raise Overflow(f"family size {a} exceeds 2^63 - 1")
        _wide(sum(fams))
        object.__setattr__(self, "families", fams)

    @classmethod
    def of(cls, *families: int) -> "BiRainbow":
        return cls(tuple(families))

    @property
    def n(self) -> int:
        return len(self.families)

    @property
    def total(self) -> int:
        return sum(self.families)

    @property
    def bits(self) -> int:
        return bit_size(self.families)

    def __iter__(self):
        return iter(self.families)

    def __len__(self):
        return len(self.families)

    def __getitem__(self, i):
        return self.families[i]

    def __str__(self):
        return format_tuple(self.families)


def _families(t) -> list[int]:
    if isinstance(t, BiRainbow):
        return list(t.families)
    return list(BiRainbow(tuple(t)).families)


def parse_tuple(text: str) -> BiRainbow:
    """Parse ``"4,5,3,4,5"``; an empty string is the empty tuple."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        return BiRainbow(())
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if not tok.isdigit():
            raise ParseError(f"unexpected token {tok!r} in family tuple")
        out.append(int(tok))
    return BiRainbow(tuple(out))


def format_tuple(families: Iterable[int]) -> str:
    return ",".join(str(a) for a in families)


# ---------------------------------------------------------------------------
# oracle and closed formulas
# ---------------------------------------------------------------------------

def z_oracle(t) -> int:
    """Brute-force count by walking the 2*alpha-point meander."""
    fams = _families(t)
    core.check_oracle_size(2 * sum(fams))
    return core.count_components(core.birainbow_to_meander(fams))


def z_gcd_small(t) -> int:
    fams = _families(t)
    n = len(fams)
    if n == 0:
        return 0
    if n == 1:
        return fams[0]
    if n == 2:
        return math.gcd(fams[0], fams[1])
    if n == 3:
        return math.gcd(fams[0] + fams[1], fams[1] + fams[2])
    raise TooManyFamilies(f"no gcd formula for {n} >= 4 families")


class MiddleInfo(NamedTuple):
    m_star: int  # 1-based
    L_star: int
    R_star: int


def middle(t) -> MiddleInfo:
    """Index of the family straddling the axis midpoint: ``L(m) < alpha/2 <= L(m+1)``."""
    fams = t if isinstance(t, list) else _families(t)
    if not fams:
        raise EmptyTuple("the empty tuple has no middle family")
    alpha = _wide(sum(fams))
    left = 0
    for i, a in enumerate(fams):
        # integer form of left < alpha/2 <= left + a
        if 2 * left < alpha <= 2 * (left + a):
            return MiddleInfo(i + 1, left, alpha - left - a)
        left += a
    raise InternalConsistencyError("no middle family found")  # pragma: no cover


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

@dataclass
class StepTrace:
    """Record of one algorithm run.

    ``steps`` holds ``(rule, families_after)`` pairs and ``remainders`` the
    ``(dividend, divisor, remainder)`` triple of every integer division.
    ``remainder_ops`` counts the size-reducing steps: inner cases (b) and (c),
    and every outer case except the reflection.
    """

    algorithm: str = ""
    steps: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    remainders: list[tuple[int, int, int]] = field(default_factory=list)
    remainder_ops: int = 0

    def rules(self) -> list[str]:
        return [r for r, _ in self.steps]

    def lines(self) -> list[str]:
        return [f"{rule} {format_tuple(fams) or '()'}" for rule, fams in self.steps]


# ---------------------------------------------------------------------------
# single lemma steps
# ---------------------------------------------------------------------------

class LemmaStep(NamedTuple):
    case: str
    families: tuple[int, ...]
    cycles: int  # closed curves split off by this step
    reflected: bool = False


def z_outer_lemma_step(t) -> LemmaStep:
    """One un-iterated outer retraction (cases a-d); reflects first if a_n < a_1."""
    fams = _families(t)
    if not fams:
        raise EmptyTuple("nothing to retract")
    reflected = False
    if fams[-1] < fams[0]:
        fams.reverse()
        reflected = True
    a1, an = fams[0], fams[-1]
    inner = fams[1:-1]
    if len(fams) == 1:
        return LemmaStep("a", (), a1, reflected)
    if a1 == an:
        return LemmaStep("a", tuple(inner), a1, reflected)
    if an < 2 * a1:
        return LemmaStep("b", (2 * a1 - an, *inner, a1), 0, reflected)
    if an == 2 * a1:
        return LemmaStep("c", (*inner, a1), 0, reflected)
    return LemmaStep("d", (*inner, a1, an - 2 * a1), 0, reflected)


def z_inner_lemma_step(t) -> LemmaStep:
    """One un-iterated inner retraction of the middle family (cases a-c)."""
    fams = _families(t)
    m, left, right = middle(fams)
    a = fams[m - 1]
    d = abs(left - right)
    rest = fams[:m - 1] + fams[m:]
    if d == 0:
        return LemmaStep("a", tuple(rest), a)
    if d == a:
        return LemmaStep("b", tuple(rest), 0)
    out = list(fams)
    out[m - 1] = a - d
    return LemmaStep("c", tuple(out), 0)


# ---------------------------------------------------------------------------
# iterated algorithms
# ---------------------------------------------------------------------------

def z_inner(t, trace: StepTrace | None = None) -> int:
    """Iterated inner nose retraction.

    Each round finds the middle family ``m`` with arc counts ``L`` and ``R`` on
    either side and either removes it (adding ``a_m`` curves when ``L == R``)
    or replaces ``a_m`` with ``a_m mod |L - R|``.
    """
    fams = _families(t)
    if trace is not None:
        trace.algorithm = "inner"
    z = 0
    while fams:
        m, left, right = middle(fams)
        i = m - 1
        a = fams[i]
        d = abs(left - right)
        if d == 0:
            z = _wide(z + a)
            del fams[i]
            rule = "a"
        else:
            r = a % d
            if trace is not None:
                trace.remainders.append((a, d, r))
                trace.remainder_ops += 1
            if r == 0:
                del fams[i]
                rule = "b"
            else:
                fams[i] = r
                rule = "c"
        if trace is not None:
            trace.steps.append((rule, tuple(fams)))
    return z


def z_outer(t, trace: StepTrace | None = None) -> int:
    """Iterated outer nose retraction.

    Cases, tried in order on ``(a_1, ..., a_n)``:

    a. ``a_1 > a_n``: reverse the tuple
    b. ``a_1 == a_n``: drop both ends, add ``a_1`` curves
    c. ``a_1 < a_n < 2 a_1``: with ``d = a_n - a_1`` and ``r = a_1 mod d``,
       ends become ``r`` and ``d + r``
    d. ``a_n == 2 a_1``: move ``a_1`` to the end, drop ``a_n``
    e. ``2 a_1 < a_n < 2 alpha / 3``: move ``a_1`` before a shortened ``a_n - 2 a_1``
    f. ``2 (alpha - a_n)`` divides ``a_n``: drop ``a_n``
    g. otherwise ``a_n <- a_n mod 2 (alpha - a_n)``

    The empty tuple has no curves and a single family ``(a)`` has ``a``.
    Zero-size families produced by a remainder are dropped at once.
    """
    fams = _families(t)
    if trace is not None:
        trace.algorithm = "outer"
    z = 0
    prev = None
    while len(fams) > 1:
        a1, an = fams[0], fams[-1]
        if a1 > an:
            if prev == "a":
                raise InternalConsistencyError("reflection applied twice in succession")
            fams.reverse()
            rule = "a"
        elif a1 == an:
            z = _wide(z + a1)
            fams = fams[1:-1]
            rule = "b"
        elif an < 2 * a1:
            d = an - a1
            r = a1 % d
            if trace is not None:
                trace.remainders.append((a1, d, r))
            fams = ([r] if r else []) + fams[1:-1] + [d + r]
            rule = "c"
        elif an == 2 * a1:
            fams = fams[1:-1] + [a1]
            rule = "d"
        else:
            alpha = _wide(sum(fams))
            if 3 * an < 2 * alpha:
                fams = fams[1:-1] + [a1, an - 2 * a1]
                rule = "e"
            else:
                span = _wide(2 * (alpha - an))
                r = an % span
                if trace is not None:
                    trace.remainders.append((an, span, r))
                if r == 0:
                    fams.pop()
                    rule = "f"
                else:
                    fams[-1] = r
                    rule = "g"
        prev = rule
        if trace is not None:
            trace.steps.append((rule, tuple(fams)))
            if rule != "a":
                trace.remainder_ops += 1
    if fams:
        z = _wide(z + fams[0])
        if trace is not None:
            trace.steps.append(("base", ()))
    return z


def euclid_remainders(a: int, b: int) -> list[tuple[int, int, int]]:
    """``(dividend, divisor, remainder)`` of Euclid's algorithm on positive ``a, b``."""
    hi, lo = max(a, b), min(a, b)
    out = []
    while lo:
        r = hi % lo
        out.append((hi, lo, r))
        hi, lo = lo, r
    return out


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def inverse_outer(t) -> BiRainbow:
    """``(a_1..a_n) -> (a_n, a_1, ..., a_{n-1}, 2 a_n)``; same number of curves."""
    fams = _families(t)
    if not fams:
        raise EmptyTuple("inverse outer retraction needs at least one family")
    an = fams[-1]
    return BiRainbow((an, *fams[:-1], 2 * an))


def inverse_inner(t, index: int) -> BiRainbow:
    """Grow family ``index`` (1-based) by ``|L(index) - R(index)|``; same number of curves."""
    fams = _families(t)
    if not 1 <= index <= len(fams):
        raise IndexOutOfRange(f"family index {index} outside 1..{len(fams)}")
    left = sum(fams[:index - 1])
    right = sum(fams[index:])
    fams[index - 1] += abs(left - right)
    return BiRainbow(tuple(fams))


def connected_family(tilde: int, star: int, reps: int, parity: str) -> BiRainbow:
    """Connected tuples with ``2*reps + 3`` (odd) or ``2*reps + 4`` (even) families.

    ``star`` is the middle family; ``tilde >= 2`` sets the repeated ``2*tilde`` blocks.
    """
    if tilde < 2 or star < 1 or reps < 0:
        raise BadParameters(f"need tilde >= 2, star >= 1, reps >= 0 (got {tilde}, {star}, {reps})")
    block = [2 * tilde] * reps
    if parity == "odd":
        fams = [*block, tilde - 1, star, *block, tilde]
    elif parity == "even":
        fams = [tilde, *block, tilde - 1, star, *block, 2 * tilde]
    else:
        raise BadParameters(f"parity must be 'odd' or 'even', got {parity!r}")
    return BiRainbow(tuple(fams))


def connected_family_for(n: int, tilde: int = 2, star: int = 1) -> BiRainbow:
    """The member of :func:`connected_family` with exactly ``n >= 3`` families."""
    if n < 3:
        raise BadParameters(f"connected family needs n >= 3, got {n}")
    if n % 2:
        return connected_family(tilde, star, (n - 3) // 2, "odd")
    return connected_family(tilde, star, (n - 4) // 2, "even")


def star_index(n: int) -> int:
    """1-based position of ``star`` inside :func:`connected_family_for`."""
    return (n - 3) // 2 + 2 if n % 2 else (n - 4) // 2 + 3


def scale(t, lam: int) -> BiRainbow:
    if lam < 1:
        raise BadParameters(f"scale factor must be >= 1, got {lam}")
    out = []
    for a in _families(t):
        v = a * lam
        if v > MAX_ENTRY:
            raise Overflow(f"{lam} * {a} exceeds 2^63 - 1")
        out.append(v)
    return BiRainbow(tuple(out))


def parity_paths(t) -> int:
    """Half the number of odd entries among ``(a_1, ..., a_n, alpha)``; ``Z`` has its parity."""
    fams = _families(t)
    odd = sum(a & 1 for a in fams) + (sum(fams) & 1)
    return odd // 2


def compositions(total: int, max_parts: int | None = None) -> Iterable[tuple[int, ...]]:
    """All tuples of positive integers summing to ``total`` (at most ``max_parts`` parts)."""
    if total == 0:
        yield ()
        return
    limit = total if max_parts is None else max_parts
    if limit == 0:
        return

    def rec(remaining, parts_left, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        if parts_left == 0:
            return
        for a in range(1, remaining + 1):
            prefix.append(a)
            yield from rec(remaining - a, parts_left - 1, prefix)
            prefix.pop()

    yield from rec(total, limit, [])


def families_of_meander(m: core.Meander) -> tuple[int, ...] | None:
    """Family sizes if ``m`` is a bi-rainbow meander, else None."""
    if m.lower != core.rainbow(m.size):
        return None
    blocks = core.arcs_to_brackets(m.upper).blocks
    if any(o != c for o, c in blocks):
        return None
    return tuple(o for o, _ in blocks)


def z_all(t) -> dict[str, int]:
    """Every applicable algorithm on one tuple, keyed by name."""
    fams = _families(t)
    out = {"inner": z_inner(fams), "outer": z_outer(fams)}
    if len(fams) <= 3:
        out["gcd"] = z_gcd_small(fams)
    if 2 * sum(fams) <= core.oracle_cap():
        out["oracle"] = z_oracle(fams)
    return out

