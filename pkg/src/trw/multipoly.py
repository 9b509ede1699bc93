"""Sparse integer polynomials in a few named parameters, and polynomials in x over them.

``MultiParamPoly`` stores ``{exponent tuple: coefficient}`` with no zero
coefficients.  ``ParamXPoly`` is dense in x with ``MultiParamPoly``
coefficients sharing one parameter list; it is how a family f_a(x) is held
symbolically before a concrete parameter value is substituted.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InexactDivision, MissingParameter, ZeroPolynomial
from .intpoly import IntPoly

Exps = tuple[int, ...]


@dataclass(frozen=True)
class MultiParamPoly:
    params: tuple[str, ...]
    terms: tuple[tuple[Exps, int], ...] = ()

    def __post_init__(self):
        params = tuple(self.params)
        if len(set(params)) != len(params):
            raise ValueError(f"duplicate parameter names in {params}")
        merged: dict[Exps, int] = {}
        for exps, c in self.terms:
            exps = tuple(operator.index(e) for e in exps)
            if len(exps) != len(params):
                raise ValueError(f"exponent tuple {exps} does not match parameters {params}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            merged[exps] = merged.get(exps, 0) + operator.index(c)
        object.__setattr__(self, "params", params)
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in merged.items() if c))
        )

    @classmethod
    def from_dict(cls, params: Sequence[str], mapping: Mapping[Exps, int]) -> MultiParamPoly:
        return cls(tuple(params), tuple(mapping.items()))

    @classmethod
    def const(cls, params: Sequence[str], c: int) -> MultiParamPoly:
        return cls(tuple(params), (((0,) * len(params), c),))

    @classmethod
    def var(cls, params: Sequence[str], name: str) -> MultiParamPoly:
        params = tuple(params)
        if name not in params:
            raise ValueError(f"{name!r} is not one of {params}")
        exps = tuple(1 if p == name else 0 for p in params)
        return cls(params, ((exps, 1),))

    def as_dict(self) -> dict[Exps, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[0][1] if self.terms else 0

    def degree_in(self, name: str) -> int:
        i = self.params.index(name)
        return max((e[i] for e, _ in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def leading_term(self) -> tuple[Exps, int]:
        """Lexicographically largest exponent with its coefficient."""
        if not self.terms:
            raise ZeroPolynomial("leading term of the zero polynomial")
        return self.terms[-1]

    def _coerce(self, other):
        if isinstance(other, MultiParamPoly):
            if other.params != self.params:
                raise ValueError(f"parameter mismatch: {self.params} vs {other.params}")
            return other
        if isinstance(other, int):
            return MultiParamPoly.const(self.params, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiParamPoly(self.params, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiParamPoly(self.params, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Exps, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MultiParamPoly.from_dict(self.params, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = MultiParamPoly.const(self.params, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: MultiParamPoly | int) -> MultiParamPoly:
        """Quotient in Z[params]; raises InexactDivision on a nonzero remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        lead_e, lead_c = other.leading_term()
        rem = self
        quot: dict[Exps, int] = {}
        while not rem.is_zero():
            e, c = rem.leading_term()
            q, r = divmod(c, lead_c)
            if r or any(a < b for a, b in zip(e, lead_e)):
                raise InexactDivision(f"{other} does not divide {self}")
            te = tuple(a - b for a, b in zip(e, lead_e))
            quot[te] = q
            rem = rem - MultiParamPoly(self.params, ((te, q),)) * other
        return MultiParamPoly.from_dict(self.params, quot)

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        missing = [p for p in self.params if p not in assignment]
        if missing:
            raise MissingParameter(f"no value for parameter(s) {', '.join(missing)}")
        vals = [assignment[p] for p in self.params]
        total = 0
        for exps, c in self.terms:
            t = c
            for v, e in zip(vals, exps):
                if e:
                    t *= v ** e
            total += t
        return total

    def embed(self, params: Sequence[str], rename: Mapping[str, str] | None = None) -> MultiParamPoly:
        """Re-express over a new parameter list, optionally renaming variables first."""
        rename = dict(rename or {})
        params = tuple(params)
        index = []
        for p in self.params:
            target = rename.get(p, p)
            if target not in params:
                if any(e[self.params.index(p)] for e, _ in self.terms):
                    raise ValueError(f"parameter {p!r} has no slot in {params}")
                index.append(None)
            else:
                index.append(params.index(target))
        out = []
        for exps, c in self.terms:
            new = [0] * len(params)
            for i, e in zip(index, exps):
                if i is not None:
                    new[i] += e
            out.append((tuple(new), c))
        return MultiParamPoly(params, tuple(out))

    def coefficients_in(self, name: str) -> dict[int, MultiParamPoly]:
        """Split by powers of one parameter; coefficients live over the rest."""
        i = self.params.index(name)
        rest = self.params[:i] + self.params[i + 1:]
        buckets: dict[int, dict[Exps, int]] = {}
        for exps, c in self.terms:
            buckets.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = c
        return {k: MultiParamPoly.from_dict(rest, v) for k, v in buckets.items()}

    def to_intpoly(self) -> IntPoly:
        """View a one-parameter polynomial as an IntPoly in that parameter."""
        if len(self.params) != 1:
            if self.is_constant():
                return IntPoly((self.constant_value(),))
            raise ValueError(f"{self} is not univariate")
        coeffs = [0] * (self.total_degree() + 1)
        for (e,), c in self.terms:
            coeffs[e] = c
        return IntPoly(coeffs)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms, key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(
                (p if e == 1 else f"{p}^{e}") for p, e in zip(self.params, exps) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultiParamPoly({self.params}, {str(self)!r})"


@dataclass(frozen=True)
class ParamXPoly:
    params: tuple[str, ...]
    coeffs: tuple[MultiParamPoly, ...] = ()

    def __post_init__(self):
        params = tuple(self.params)
        coeffs = list(self.coeffs)
        for i, c in enumerate(coeffs):
            if isinstance(c, int):
                coeffs[i] = MultiParamPoly.const(params, c)
            elif c.params != params:
                raise ValueError(f"coefficient {i} uses {c.params}, family uses {params}")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def x(cls, params: Sequence[str]) -> ParamXPoly:
        return cls(tuple(params), (0, 1))

    @classmethod
    def from_intpoly(cls, f: IntPoly, params: Sequence[str] = ()) -> ParamXPoly:
        return cls(tuple(params), tuple(f.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> MultiParamPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return MultiParamPoly.const(self.params, 0)

    def is_monic(self) -> bool:
        if not self.coeffs:
            return False
        lead = self.coeffs[-1]
        return lead.is_constant() and lead.constant_value() == 1

    def _coerce(self, other):
        if isinstance(other, ParamXPoly):
            if other.params != self.params:
                raise ValueError(f"parameter mismatch: {self.params} vs {other.params}")
            return other
        if isinstance(other, (int, MultiParamPoly)):
            return ParamXPoly(self.params, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return ParamXPoly(self.params, tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return ParamXPoly(self.params, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return ParamXPoly(self.params)
        zero = MultiParamPoly.const(self.params, 0)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ParamXPoly(self.params, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = ParamXPoly(self.params, (1,))
        for _ in range(n):
            result = result * self
        return result

    def instantiate(self, assignment: Mapping[str, int]) -> IntPoly:
        return instantiate(self, assignment)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c.is_constant():
                v = c.constant_value()
                mag = abs(v)
                body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
                neg = v < 0
            elif len(c.terms) == 1:
                inner = str(c)
                neg = inner.startswith("-")
                inner = inner.lstrip("-")
                body = f"{inner}*{mono}" if mono else inner
            else:
                inner = str(c)
                body = f"({inner})" if not mono else f"({inner})*{mono}"
                neg = False
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"ParamXPoly({self.params}, {str(self)!r})"


def instantiate(pf: ParamXPoly, assignment: Mapping[str, int]) -> IntPoly:
    """Substitute integer values for every declared parameter of pf."""
    missing = [p for p in pf.params if p not in assignment]
    if missing:
        raise MissingParameter(f"no value for parameter(s) {', '.join(missing)}")
    return IntPoly(c.evaluate(assignment) for c in pf.coeffs)


# fraction-free elimination, generic over int and MultiParamPoly entries


def _is_zero(v) -> bool:
    return v == 0 if isinstance(v, int) else v.is_zero()


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise InexactDivision(f"{b} does not divide {a}")
        return q
    if isinstance(a, int):
        return MultiParamPoly.const(b.params, a).exact_div(b)
    return a.exact_div(b)


def bareiss_det(matrix: Sequence[Sequence], one=1):
    """Determinant by Bareiss fraction-free elimination with row pivoting.

    Entries may be ints or MultiParamPoly over a common parameter list; every
    intermediate division is exact by Sylvester's identity.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact_div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
            m[i][k] = one * 0
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(f: Sequence, g: Sequence, zero=0) -> list[list]:
    """Sylvester matrix of ascending coefficient lists f (deg n) and g (deg m).

    Rows are in the convention whose determinant equals Res(f, g).
    """
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant(f: Sequence, g: Sequence, one=1):
    """Res(f, g) as det of the Sylvester matrix; entries int or MultiParamPoly.

    f and g are ascending coefficient sequences with nonzero last entries.
    """
    if not f or not g:
        raise ZeroPolynomial("resultant with the zero polynomial")
    n, m = len(f) - 1, len(g) - 1
    if n == 0 and m == 0:
        return one
    if m == 0:
        return g[0] ** n
    if n == 0:
        return f[0] ** m
    return bareiss_det(sylvester_matrix(f, g, one * 0), one)


def resultant_in(
    f: MultiParamPoly, g: MultiParamPoly, var: str
) -> MultiParamPoly:
    """Res_var(f, g), eliminating one parameter; result lives over the others."""
    fc, gc = f.coefficients_in(var), g.coefficients_in(var)
    rest = tuple(p for p in f.params if p != var)
    zero = MultiParamPoly.const(rest, 0)
    fl = [fc.get(i, zero) for i in range(max(fc, default=-1) + 1)]
    gl = [gc.get(i, zero) for i in range(max(gc, default=-1) + 1)]
    return sylvester_resultant(fl, gl, MultiParamPoly.const(rest, 1))
