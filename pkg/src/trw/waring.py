"""Four-square decompositions and Kamke-style representations.

A Kamke representation of m with respect to a polynomial f is
m = f(a_1) + ... + f(a_{s1}) + s2 with s1 + s2 <= r.  The search here is a
depth-first search over non-increasing arguments that tries polynomial values
before falling back on the unit remainder s2, so results are deterministic.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import NotEventuallySigned, PreconditionViolated
from .intpoly import IntPoly, derivative


@dataclass(frozen=True)
class FourSquares:
    parts: tuple[int, int, int, int]

    @property
    def value(self) -> int:
        return sum(p * p for p in self.parts)


def four_squares(m: int) -> FourSquares:
    """Lexicographically largest (a >= b >= c >= d >= 0) with a^2+b^2+c^2+d^2 = m."""
    if m < 0:
        raise ValueError("four_squares needs m >= 0")
    for a in range(math.isqrt(m), -1, -1):
        r1 = m - a * a
        if r1 > 3 * a * a:
            break
        for b in range(min(a, math.isqrt(r1)), -1, -1):
            r2 = r1 - b * b
            if r2 > 2 * b * b:
                break
            for c in range(min(b, math.isqrt(r2)), -1, -1):
                r3 = r2 - c * c
                if r3 > c * c:
                    break
                d = math.isqrt(r3)
                if d * d == r3:
                    return FourSquares((a, b, c, d))
    raise AssertionError(f"no four-square decomposition of {m}")  # Lagrange


def cauchy_bound(f: IntPoly) -> int:
    """Integer B with every real root of f in [-B, B]."""
    if f.degree < 1:
        return 0
    ratio = Fraction(max(abs(c) for c in f.coeffs[:-1]), abs(f.lc))
    return 1 + math.ceil(ratio)


class Normalized(NamedTuple):
    poly: IntPoly
    shift: int
    negated: bool


def normalize_poly(f: IntPoly, N0: int = 0) -> Normalized:
    """g(x) = +-f(x + k) with k >= N0 minimal such that g(n) >= 0 for all n >= 0."""
    if N0 < 0:
        raise ValueError("N0 must be nonnegative")
    if f.degree < 1:
        raise NotEventuallySigned(f"{f} is constant")
    negated = f.lc < 0
    h = -f if negated else f
    bound = cauchy_bound(h)
    # beyond the root bound h has the sign of its leading coefficient
    k = N0
    for n in range(max(N0, bound), N0 - 1, -1):
        if h(n) < 0:
            k = n + 1
            break
    return Normalized(h.shift(k), k, negated)


@dataclass(frozen=True)
class KamkeRepresentation:
    terms: tuple[int, ...]
    s2: int

    @property
    def size(self) -> int:
        return len(self.terms) + self.s2

    def value(self, f: IntPoly) -> int:
        return sum(f(a) for a in self.terms) + self.s2


def _candidates(f: IntPoly, m: int) -> list[tuple[int, int]]:
    """(argument, value) pairs with 1 <= f(a) <= m, arguments descending."""
    if f.degree < 1:
        raise PreconditionViolated(f"{f} is constant")
    if f.lc < 0:
        raise PreconditionViolated(f"{f} is eventually negative; run normalize_poly first")
    monotone_from = max(cauchy_bound(derivative(f)), 0)
    out = []
    a = 0
    while True:
        v = f(a)
        if v < 0:
            raise PreconditionViolated(f"f({a}) = {v} < 0; run normalize_poly first")
        if a > monotone_from and v > m:
            break
        if 1 <= v <= m:
            out.append((a, v))
        a += 1
    out.reverse()
    return out


def kamke_represent(f: IntPoly, m: int, r: int) -> Optional[KamkeRepresentation]:
    """A representation of m with s1 + s2 <= r, or None when none exists."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if r < 1:
        raise ValueError("r must be positive")
    cands = _candidates(f, m)
    return _search(cands, m, r)


def _search(cands, m, r) -> Optional[KamkeRepresentation]:
    suffix_max = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix_max[i] = max(cands[i][1], suffix_max[i + 1])
    dead: set[tuple[int, int, int]] = set()
    chosen: list[int] = []

    def dfs(idx: int, rem: int, budget: int) -> Optional[int]:
        if rem > budget * max(suffix_max[idx], 1):
            return None
        key = (idx, rem, budget)
        if key in dead:
            return None
        if budget > 0:
            for j in range(idx, len(cands)):
                a, v = cands[j]
                if v > rem:
                    continue
                chosen.append(a)
                s2 = dfs(j, rem - v, budget - 1)
                if s2 is not None:
                    return s2
                chosen.pop()
        if rem <= budget:
            return rem
        dead.add(key)
        return None

    s2 = dfs(0, m, r)
    if s2 is None:
        return None
    return KamkeRepresentation(tuple(chosen), s2)


@dataclass(frozen=True)
class KamkeScan:
    m_max: int
    r_max: int
    table: dict  # m -> (r, KamkeRepresentation) or None for a gap
    overall_max: int
    argmax: Optional[int]

    @property
    def gaps(self) -> list[int]:
        return [m for m, entry in self.table.items() if entry is None]


def minimal_representation(f: IntPoly, m: int, r_max: int):
    """(least r, representation) with r <= r_max, or None."""
    cands = _candidates(f, m)
    if m == 0:
        return 0, KamkeRepresentation((), 0)
    for r in range(1, r_max + 1):
        rep = _search(cands, m, r)
        if rep is not None:
            return r, rep
    return None


def _minimal_job(args):
    return minimal_representation(*args)


def kamke_scan(f: IntPoly, m_max: int, r_max: int, jobs: int = 1) -> KamkeScan:
    """Least r per m in 1..m_max; the maximum is an empirical lower bound on Kamke's r."""
    if m_max < 1 or r_max < 1:
        raise ValueError("m_max and r_max must be positive")
    ms = list(range(1, m_max + 1))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_minimal_job, [(f, m, r_max) for m in ms],
                                    chunksize=max(1, m_max // (4 * jobs))))
    else:
        results = [minimal_representation(f, m, r_max) for m in ms]
    table = dict(zip(ms, results))
    overall, argmax = 0, None
    for m, entry in table.items():
        if entry is not None and entry[0] > overall:
            overall, argmax = entry[0], m
    return KamkeScan(m_max, r_max, table, overall, argmax)


# definable-set demo with W = nonnegative integers


def is_four_square_sum(n: int) -> bool:
    """n is x1^2 + ... + x4^2 with every xi a nonnegative integer."""
    if n < 0:
        return False
    return four_squares(n).value == n


@dataclass(frozen=True)
class PhiWResult:
    a: int
    b: int
    x_max: int
    members: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    lower_contained: bool
    upper_contains: bool

    @property
    def chain(self) -> str:
        if not (self.lower_contained and self.upper_contains):
            return "BROKEN"
        if self.lower == self.members == self.upper:
            return "EQUAL"
        return "PROPER"


def phi_w_set(a: int, b: int, x_max: int = 100) -> PhiWResult:
    """Window [-x_max, x_max] of {x : ax != 0, ax != b, ax and b - ax are sums of four squares}.

    Also returns the two comparison sets {n in N : 0 < n < b/a} and
    {x : 0 < x < b/a} (all conjugates of an integer are itself) and whether
    the inclusions lower <= members <= upper hold.
    """
    if a < 1 or b < 1 or x_max < 1:
        raise ValueError("a, b and x_max must be positive")
    window = range(-x_max, x_max + 1)
    members = tuple(
        x for x in window
        if a * x != 0 and a * x != b and is_four_square_sum(a * x) and is_four_square_sum(b - a * x)
    )
    lower = tuple(n for n in window if n >= 0 and 0 < a * n < b)
    upper = tuple(x for x in window if 0 < a * x < b)
    ms = set(members)
    return PhiWResult(
        a, b, x_max, members, lower, upper,
        lower_contained=set(lower) <= ms,
        upper_contains=ms <= set(upper),
    )
