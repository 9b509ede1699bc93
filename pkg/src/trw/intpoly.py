"""Dense univariate polynomials over the integers.

Coefficients are stored ascending (index i holds the coefficient of x^i) as
Python ints, so every computation here is exact.  The zero polynomial is the
only value with an empty coefficient tuple; its degree is ``ZERO_DEGREE``.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    DegreeTooSmall,
    InexactDivision,
    NotMonic,
    ZeroPolynomial,
)

ZERO_DEGREE = -1


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [operator.index(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x0):
        return evaluate(self, x0)

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"IntPoly({str(self)!r})"

    # structure

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive_part(self) -> IntPoly:
        """Divide by the content, making the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def shift(self, k: int) -> IntPoly:
        """f(x + k) by Horner composition."""
        out = IntPoly()
        lin = IntPoly((k, 1))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def reflect(self) -> IntPoly:
        """f(-x)."""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))


def _coerce(other):
    if isinstance(other, IntPoly):
        return other
    if isinstance(other, int):
        return IntPoly((other,))
    return NotImplemented


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    """Render ascending integer coefficients in the family-file expression syntax."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms) if terms else "0"


def mul(f: IntPoly, g: IntPoly) -> IntPoly:
    if f.is_zero() or g.is_zero():
        return IntPoly()
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return IntPoly(out)


def evaluate(f: IntPoly, x0: int) -> int:
    """f(x0) by Horner's rule.  Accepts any exact number type for x0."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x0 + c
    return acc


def derivative(f: IntPoly) -> IntPoly:
    return IntPoly(i * c for i, c in enumerate(f.coeffs) if i)


def pseudo_divmod(f: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Return (q, r) with lc(g)^(deg f - deg g + 1) * f = q*g + r, deg r < deg g."""
    if g.is_zero():
        raise ZeroPolynomial("pseudo-division by the zero polynomial")
    if f.degree < g.degree:
        return IntPoly(), f
    dg, lg = g.degree, g.lc
    r = list(f.coeffs)
    q = [0] * (f.degree - dg + 1)
    e = f.degree - dg + 1
    for top in range(f.degree, dg - 1, -1):
        c = r[top]
        q = [lg * qi for qi in q]
        r = [lg * ri for ri in r]
        e -= 1
        if c:
            pos = top - dg
            q[pos] += c
            for j, gj in enumerate(g.coeffs):
                r[pos + j] -= c * gj
    # each of the deg f - deg g + 1 rounds scaled by lc(g) exactly once
    assert e == 0
    return IntPoly(q), IntPoly(r)


def prem(f: IntPoly, g: IntPoly) -> IntPoly:
    return pseudo_divmod(f, g)[1]


def exact_quotient(f: IntPoly, g: IntPoly) -> IntPoly:
    """f / g in Z[x]; raises InexactDivision if g does not divide f there."""
    if g.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    r = list(f.coeffs)
    if len(r) < len(g.coeffs):
        if f.is_zero():
            return IntPoly()
        raise InexactDivision(f"{g} does not divide {f}")
    dg, lg = g.degree, g.lc
    q = [0] * (len(r) - dg)
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if c == 0:
            continue
        t, rem = divmod(c, lg)
        if rem:
            raise InexactDivision(f"{g} does not divide {f}")
        pos = top - dg
        q[pos] = t
        for j, gj in enumerate(g.coeffs):
            r[pos + j] -= t * gj
    if any(r):
        raise InexactDivision(f"{g} does not divide {f}")
    return IntPoly(q)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (content ignored)."""
    a, b = f.primitive_part(), g.primitive_part()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, prem(a, b).primitive_part()
    return a.primitive_part()


def squarefree_part(f: IntPoly) -> IntPoly:
    """Primitive polynomial with the roots of f, each once; leading coefficient > 0."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if f.degree < 1:
        return IntPoly((1,))
    g = poly_gcd(f, derivative(f))
    return exact_quotient(f.primitive_part(), g).primitive_part()


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Pairs (g_i, i) with each g_i squarefree, primitive, and pp(f) = prod g_i^i."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    # chain[i] carries every root of f with multiplicity > i
    chain = [f.primitive_part()]
    while chain[-1].degree > 0:
        chain.append(poly_gcd(chain[-1], derivative(chain[-1])))
    at_least = [exact_quotient(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    out = []
    for i, s in enumerate(at_least):
        nxt = at_least[i + 1] if i + 1 < len(at_least) else IntPoly((1,))
        exact = exact_quotient(s, nxt)
        if exact.degree > 0:
            out.append((exact.primitive_part(), i + 1))
    return out


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.

    Computed with the subresultant pseudo-remainder sequence, so every
    intermediate division is exact over Z.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant with the zero polynomial")
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree

    a_cont, b_cont = f.content(), g.content()
    A = IntPoly(c // a_cont for c in f.coeffs)
    B = IntPoly(c // b_cont for c in g.coeffs)
    t = a_cont ** g.degree * b_cont ** f.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    gg, h = 1, 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = prem(A, B)
        A = B
        if R.is_zero():
            return 0
        div = gg * h ** delta
        B = IntPoly(c // div for c in R.coeffs)
        gg = A.lc
        if delta:
            h = gg ** delta // h ** (delta - 1)
        if B.degree == 0:
            # A.degree >= 1 here
            return s * t * (B.lc ** A.degree // h ** (A.degree - 1))


def discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) * Res(f, f') for monic f of degree n >= 1."""
    if f.is_zero():
        raise ZeroPolynomial("discriminant of the zero polynomial")
    if f.degree < 1:
        raise DegreeTooSmall("discriminant needs degree >= 1")
    if not f.is_monic():
        raise NotMonic(f"discriminant expects a monic polynomial, got {f}")
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, derivative(f))


def companion_matrix(f: IntPoly) -> list[list[int]]:
    if not f.is_monic():
        raise NotMonic(f"companion matrix needs a monic polynomial, got {f}")
    if f.degree < 1:
        raise DegreeTooSmall("companion matrix needs degree >= 1")
    n = f.degree
    m = [[0] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = 1
    for i in range(n):
        m[i][n - 1] = -f.coeffs[i]
    return m


def _matmul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def trace_power(f: IntPoly, m: int) -> int:
    """Trace of C^m for the companion matrix C of f: the m-th power sum of the roots."""
    if m < 1:
        raise ValueError("m must be positive")
    c = companion_matrix(f)
    n = len(c)
    result = None
    base = c
    e = m
    while e:
        if e & 1:
            result = base if result is None else _matmul(result, base)
        e >>= 1
        if e:
            base = _matmul(base, base)
    return sum(result[i][i] for i in range(n))
