"""Counterexamples to gcd formulas for bi-rainbow meanders with four or more families.

Given two homogeneous integer polynomials ``f1, f2`` in ``n >= 4`` variables,
:func:`falsify` builds a tuple ``t`` with ``Z(t) != gcd(f1(t), f2(t))``:

* both of degree >= 2: scale a connected tuple by ``lam``; ``Z`` grows like
  ``lam`` while the gcd grows at least like ``lam**2``
* one linear, one not: scale a connected tuple by ``lam = f1(t)``
* both linear: put odd entries where the coefficient parities collide

Every returned tuple is re-counted by independent algorithms before it is
handed back.  Negative polynomial values enter the gcd by absolute value and
``gcd(0, 0) == 0``.
"""
from __future__ import annotations

import functools
import itertools
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import birainbow as br
from . import core
from .errors import (
    BadParameters,
    InternalConsistencyError,
    NotHomogeneous,
    PolynomialSyntaxError,
    SearchBudgetExceeded,
)

DEFAULT_STAR_BUDGET = 10**6
DEFAULT_LAMBDA_BUDGET = 10**3
ORACLE_CHECK_POINTS = 4096


@dataclass(frozen=True)
class HomogeneousCandidate:
    n: int
    degree: int
    terms: tuple[tuple[tuple[int, ...], int], ...]  # (exponents, coefficient), sorted

    def __post_init__(self):
        if self.n < 4:
            raise BadParameters(f"candidates need arity n >= 4, got {self.n}")
        if not self.terms:
            raise BadParameters("the zero polynomial is not a candidate")
        for exps, coef in self.terms:
            if len(exps) != self.n:
                raise BadParameters(f"exponent vector {exps} does not have {self.n} entries")
            if sum(exps) != self.degree:
                raise NotHomogeneous(f"term of degree {sum(exps)} in a polynomial of degree {self.degree}")
            if coef == 0:
                raise BadParameters("zero coefficients must be dropped")

    @classmethod
    def from_terms(cls, n: int, terms: dict[tuple[int, ...], int]) -> "HomogeneousCandidate":
        kept = {e: c for e, c in terms.items() if c}
        if not kept:
            raise BadParameters("the zero polynomial is not a candidate")
        degrees = {sum(e) for e in kept}
        if len(degrees) > 1:
            raise NotHomogeneous(f"terms of degrees {sorted(degrees)} mixed")
        degree = degrees.pop()
        if degree < 1:
            raise NotHomogeneous("constant polynomials have degree 0")
        return cls(n, degree, tuple(sorted(kept.items(), reverse=True)))

    @classmethod
    def linear(cls, coefficients: Iterable[int]) -> "HomogeneousCandidate":
        coefs = list(coefficients)
        n = len(coefs)
        terms = {}
        for i, c in enumerate(coefs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls.from_terms(n, terms)

    def coefficient(self, index: int) -> int:
        """Coefficient of ``x_index`` (1-based) in a linear candidate."""
        e = [0] * self.n
        e[index - 1] = 1
        return dict(self.terms).get(tuple(e), 0)

    def coefficients(self) -> tuple[int, ...]:
        if self.degree != 1:
            raise BadParameters("coefficient columns only exist for linear candidates")
        return tuple(self.coefficient(i) for i in range(1, self.n + 1))

    def depends_on(self, index: int) -> bool:
        return any(e[index - 1] for e, _ in self.terms)

    def __str__(self):
        return format_polynomial(self)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


@functools.lru_cache(maxsize=4096)
def parse_polynomial(text: str, n: int) -> HomogeneousCandidate:
    """Parse ``"x1+2*x2^2-x3*x4"``; every variable is ``x<i>`` with ``1 <= i <= n``."""
    body = text.strip()
    if not body:
        raise PolynomialSyntaxError("empty polynomial")
    if body[0] not in "+-":
        body = "+" + body
    parts = _TERM_SPLIT.split(body)
    # split yields ['', sign, term, sign, term, ...]
    if parts[0] != "" or len(parts) % 2 == 0:
        raise PolynomialSyntaxError(f"cannot split {text!r} into terms")
    terms: dict[tuple[int, ...], int] = {}
    for sign, term in zip(parts[1::2], parts[2::2]):
        if not term:
            raise PolynomialSyntaxError(f"dangling {sign!r} in {text!r}")
        coef = 1
        exps = [0] * n
        factors = [f.strip() for f in term.split("*")]
        if factors and factors[0].isdigit():
            coef = int(factors.pop(0))
        for f in factors:
            m = _FACTOR.fullmatch(f)
            if m is None:
                raise PolynomialSyntaxError(f"unexpected factor {f!r} in term {term!r}")
            var = int(m.group(1))
            if not 1 <= var <= n:
                raise PolynomialSyntaxError(f"variable x{var} outside x1..x{n}")
            exps[var - 1] += int(m.group(2) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + (-coef if sign == "-" else coef)
    return HomogeneousCandidate.from_terms(n, terms)


def format_polynomial(f: HomogeneousCandidate) -> str:
    out = []
    for exps, coef in f.terms:
        factors = []
        for i, e in enumerate(exps, start=1):
            if e:
                factors.append(f"x{i}" if e == 1 else f"x{i}^{e}")
        mono = "*".join(factors)
        mag = abs(coef)
        piece = mono if mag == 1 else f"{mag}*{mono}"
        if not out:
            out.append(("-" if coef < 0 else "") + piece)
        else:
            out.append(("-" if coef < 0 else "+") + piece)
    return "".join(out)


def evaluate(f: HomogeneousCandidate, values) -> int:
    vals = list(values)
    if len(vals) != f.n:
        raise BadParameters(f"need {f.n} values, got {len(vals)}")
    total = 0
    for exps, coef in f.terms:
        term = coef
        for v, e in zip(vals, exps):
            if e:
                term *= v**e
        total = br._wide(total + br._wide(term))
    return total


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    tuple: br.BiRainbow
    z_true: int
    gcd_value: int
    strategy: str
    f1_value: int = 0
    f2_value: int = 0

    def __str__(self):
        return f"tuple={self.tuple} Z={self.z_true} gcd={self.gcd_value} strategy={self.strategy}"


def parity_violation(f1: HomogeneousCandidate, f2: HomogeneousCandidate) -> tuple[int, ...] | None:
    """Position(s) where the coefficient parities rule out a gcd formula.

    Returns ``(l,)`` for a column ``(f1_l, f2_l)`` that is even in both, else
    the first ``(k, l)`` with equal parity columns, else None.
    """
    if f1.degree != 1 or f2.degree != 1:
        raise BadParameters("parity columns need two linear candidates")
    if f1.n != f2.n:
        raise BadParameters(f"arity mismatch: {f1.n} vs {f2.n}")
    cols = [(a % 2, b % 2) for a, b in zip(f1.coefficients(), f2.coefficients())]
    for l, col in enumerate(cols, start=1):
        if col == (0, 0):
            return (l,)
    first: dict[tuple[int, int], int] = {}
    for l, col in enumerate(cols, start=1):
        if col in first:
            return (first[col], l)
        first[col] = l
    return None


def _check(f1, f2, fams: tuple[int, ...], strategy: str) -> Counterexample | None:
    t = br.BiRainbow(fams)
    v1, v2 = evaluate(f1, fams), evaluate(f2, fams)
    g = math.gcd(v1, v2)
    z = br.z_inner(t)
    if z == g:
        return None
    z2 = br.z_outer(t)
    if z2 != z:
        raise InternalConsistencyError(f"inner and outer counts disagree on {t}: {z} vs {z2}")
    if 2 * t.total <= ORACLE_CHECK_POINTS:
        z3 = br.z_oracle(t)
        if z3 != z:
            raise InternalConsistencyError(f"oracle disagrees on {t}: {z3} vs {z}")
    return Counterexample(t, z, g, strategy, v1, v2)


def _parity_tuple(n: int, odd: Iterable[int]) -> tuple[int, ...]:
    odd = set(odd)
    return tuple(1 if i in odd else 2 for i in range(1, n + 1))


def _middle_probe(n: int, star: int) -> tuple[int, ...]:
    """Tuples whose only large family sits in the middle with ``L* == R*``."""
    if n % 2:
        side = (n - 1) // 2
        return (1,) * side + (star,) + (1,) * side
    return (1,) * (n // 2) + (star,) + (1,) * (n // 2 - 2) + (2,)


def _scaled(t: br.BiRainbow, lam: int) -> tuple[int, ...]:
    return br.scale(t, lam).families


def _search_candidates(n: int, max_entry: int) -> Iterator[tuple[int, ...]]:
    for top in range(1, max_entry + 1):
        for fams in itertools.product(range(1, top + 1), repeat=n):
            if max(fams) == top:
                yield fams


def falsify(
    f1: HomogeneousCandidate,
    f2: HomogeneousCandidate,
    star_budget: int = DEFAULT_STAR_BUDGET,
    lambda_budget: int = DEFAULT_LAMBDA_BUDGET,
    search_entry: int = 6,
    workers: int = 1,
) -> Counterexample:
    if f1.n != f2.n:
        raise BadParameters(f"arity mismatch: {f1.n} vs {f2.n}")
    n = f1.n

    if f1.degree == 1 and f2.degree == 1:
        site = parity_violation(f1, f2)
        if site is not None:
            strategy = "parity-single" if len(site) == 1 else "parity-pair"
            found = _check(f1, f2, _parity_tuple(n, site), strategy)
            if found is None:
                raise InternalConsistencyError(f"parity tuple for {site} did not separate Z from gcd")
            return found
    elif f1.degree >= 2 and f2.degree >= 2:
        base = br.connected_family_for(n)
        for lam in range(1, lambda_budget + 1):
            found = _check(f1, f2, _scaled(base, lam), "scaling")
            if found:
                return found
    else:
        lin, other = (f1, f2) if f1.degree == 1 else (f2, f1)
        pos = br.star_index(n)
        if lin.depends_on(pos):
            for star in range(1, star_budget + 1):
                base = br.connected_family_for(n, star=star)
                v = abs(evaluate(lin, base.families))
                if v > 1:
                    if v > lambda_budget:
                        break
                    found = _check(f1, f2, _scaled(base, v), "connected-scaling")
                    if found:
                        return found
        for star in range(1, min(star_budget, 4 * lambda_budget) + 1):
            found = _check(f1, f2, _middle_probe(n, star), "middle-probe")
            if found:
                return found

    # last resort: every small tuple, in a fixed order
    candidates = _search_candidates(n, search_entry)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for found in pool.map(lambda c: _check(f1, f2, c, "search"), candidates, chunksize=64):
                if found:
                    return found
    else:
        for c in candidates:
            found = _check(f1, f2, c, "search")
            if found:
                return found
    raise SearchBudgetExceeded(
        f"no counterexample for {f1} / {f2}",
        f"alpha* <= {star_budget}, lambda <= {lambda_budget}, entries <= {search_entry}",
    )


def falsify_text(f1: str, f2: str, arity: int, **kwargs) -> Counterexample:
    return falsify(parse_polynomial(f1, arity), parse_polynomial(f2, arity), **kwargs)


def linear_grid(n: int = 4, coefficients=range(-2, 3)) -> Iterator[tuple[int, ...]]:
    """All non-zero coefficient vectors of length ``n``."""
    for coefs in itertools.product(coefficients, repeat=n):
        if any(coefs):
            yield coefs
