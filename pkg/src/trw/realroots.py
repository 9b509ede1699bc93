"""Exact real-root counting with Sturm chains, and a numeric root oracle.

Everything except ``approx_roots`` and ``separation_bound`` is exact: signs at
rational points are taken after clearing denominators.  The numeric oracle is
for tests and cross-checks only; no predicate here consults it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

from .errors import DegreeTooSmall, EndpointIsRoot, NonConvergence, ZeroPolynomial
from .intpoly import (
    IntPoly,
    derivative,
    prem,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at(f: IntPoly, x0) -> int:
    """Sign of f at a rational point, in integer arithmetic."""
    x0 = Fraction(x0)
    p, q = x0.numerator, x0.denominator
    d = f.degree
    # q^d * f(p/q), q > 0
    acc = sum(c * p ** i * q ** (d - i) for i, c in enumerate(f.coeffs))
    return _sign(acc)


def _sign_at_infinity(f: IntPoly, direction: int) -> int:
    s = _sign(f.lc)
    if direction < 0 and f.degree % 2:
        s = -s
    return s


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


@dataclass(frozen=True)
class SturmChain:
    chain: tuple[IntPoly, ...]

    def variations_at(self, x0) -> int:
        return _variations(sign_at(p, x0) for p in self.chain)

    def variations_at_infinity(self, direction: int) -> int:
        return _variations(_sign_at_infinity(p, direction) for p in self.chain)

    def count(self, lo=None, hi=None) -> int:
        left = self.variations_at_infinity(-1) if lo is None else self.variations_at(lo)
        right = self.variations_at_infinity(+1) if hi is None else self.variations_at(hi)
        return left - right


def sturm_chain(f: IntPoly) -> SturmChain:
    if f.is_zero():
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    if f.degree < 1:
        raise DegreeTooSmall("Sturm chain needs degree >= 1")
    g = squarefree_part(f)
    chain = [g, derivative(g).primitive_part()]
    while True:
        a, b = chain[-2], chain[-1]
        r = prem(a, b)
        if r.is_zero():
            break
        # prem scales by lc(b)^(deg a - deg b + 1); undo a negative factor
        if b.lc < 0 and (a.degree - b.degree + 1) % 2:
            r = -r
        content = r.content()
        chain.append(IntPoly(-(c // content) for c in r.coeffs))
    return SturmChain(tuple(chain))


def count_real_roots(f: IntPoly, interval: Optional[tuple] = None) -> int:
    """Distinct real roots of f, in the open interval (lo, hi) when given."""
    if f.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    if f.degree < 1:
        return 0
    sc = sturm_chain(f)
    if interval is None:
        return sc.count()
    lo, hi = (Fraction(v) for v in interval)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    for end in (lo, hi):
        if sign_at(f, end) == 0:
            raise EndpointIsRoot(f"{end} is a root of {f}")
    return sc.count(lo, hi)


def is_totally_real(f: IntPoly) -> bool:
    if f.is_zero():
        raise ZeroPolynomial("total reality of the zero polynomial")
    if f.degree < 1:
        raise DegreeTooSmall("total reality needs degree >= 1")
    g = squarefree_part(f)
    return count_real_roots(g) == g.degree


def all_roots_in(f: IntPoly, lo, hi) -> bool:
    """True iff every root of f is real and lies in the open interval (lo, hi)."""
    if f.is_zero():
        raise ZeroPolynomial("all_roots_in of the zero polynomial")
    g = squarefree_part(f)
    inside = count_real_roots(f, (lo, hi))
    return inside == g.degree


def filter_box(polys: Sequence[IntPoly], t) -> list[IntPoly]:
    """Members all of whose roots lie in (0, t); input order is kept."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    return [f for f in polys if all_roots_in(f, 0, t)]


# numeric oracle


@dataclass(frozen=True)
class ApproxRoots:
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    bound: float
    multiplicities: tuple[int, ...]

    def power_sum(self, m: int) -> complex:
        """Sum of alpha^m over all roots of the original polynomial, with multiplicity."""
        return sum(k * z ** m for z, k in zip(self.roots, self.multiplicities))

    def count_real(self, threshold: float) -> int:
        return sum(1 for z in self.roots if abs(z.imag) < threshold)


def approx_roots(f: IntPoly, tol: float = 1e-12, *, dps: int = 50, maxsteps: int = 400) -> ApproxRoots:
    """Durand-Kerner approximations of the distinct roots of f.

    Each distinct root comes with its multiplicity in f, taken from the exact
    squarefree decomposition, so power sums over roots can be reproduced.
    """
    if f.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    if f.degree < 1:
        raise DegreeTooSmall("approx_roots needs degree >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    roots, residuals, mults = [], [], []
    worst_bound = 0.0
    with mpmath.workdps(dps):
        for g, mult in squarefree_decomposition(f):
            if g.degree == 1:
                found = [mpmath.mpf(-g.coeffs[0]) / g.coeffs[1]]
            else:
                try:
                    found = mpmath.polyroots(
                        list(reversed(g.coeffs)), maxsteps=maxsteps, extraprec=2 * dps
                    )
                except mpmath.libmp.NoConvergence as exc:
                    raise NonConvergence(f"no convergence for {g}: {exc}") from exc
            for z in found:
                mag = max(1, abs(z))
                scale = sum(abs(c) * mag ** i for i, c in enumerate(g.coeffs))
                bound = tol * (1 + float(scale))
                res = float(abs(mpmath.polyval(list(reversed(g.coeffs)), z)))
                if res > bound:
                    raise NonConvergence(f"residual {res:.3g} above {bound:.3g} for {g}")
                worst_bound = max(worst_bound, bound)
                roots.append(complex(z))
                residuals.append(res)
                mults.append(mult)
    return ApproxRoots(tuple(roots), tuple(residuals), worst_bound, tuple(mults))


def _discriminant_any(g: IntPoly) -> int:
    n = g.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    r = resultant(g, derivative(g))
    assert r % g.lc == 0
    return sign * r // g.lc


def separation_bound(f: IntPoly) -> float:
    """Lower bound on the distance between distinct roots of f (Mahler).

    sep >= sqrt(3 |disc|) * n^(-(n+2)/2) * ||g||_2^(1-n) for the squarefree part g.
    A non-real root z pairs with conj(z), so |Im z| >= sep / 2.
    """
    g = squarefree_part(f)
    n = g.degree
    if n < 2:
        return math.inf
    disc = abs(_discriminant_any(g))
    norm = math.sqrt(sum(c * c for c in g.coeffs))
    log_sep = (
        0.5 * (math.log(3) + math.log(disc))
        - (n + 2) / 2 * math.log(n)
        - (n - 1) * math.log(norm)
    )
    return math.exp(log_sep)
