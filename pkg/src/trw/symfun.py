"""Newton-Girard conversions between power sums and elementary symmetric functions.

The same recurrence drives three things: integer power sums of a concrete
monic polynomial, the symbolic power sum Q_m(p_0, ..., p_{n-1}) of a
parametrized family, and the root-power transform (roots alpha -> alpha^N).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegreeTooSmall, InternalDivisibility, NonIntegralDivision, NotMonic
from .intpoly import IntPoly
from .multipoly import MultiParamPoly, ParamXPoly


@dataclass(frozen=True)
class PowerSums:
    """q_1, ..., q_M of n roots.  Indexing is 1-based: ``ps[k]`` is q_k."""

    values: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) < 1 or self.n < 1:
            raise ValueError("need at least one power sum and n >= 1")

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= len(self.values):
            raise IndexError(f"q_{k} not available (have q_1..q_{len(self.values)})")
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class ElemSym:
    """e_1, ..., e_n; ``es[k]`` is e_k, with e_0 = 1 and e_k = 0 for k > n."""

    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        if k == 0:
            return 1
        if k < 0:
            raise IndexError(k)
        return self.values[k - 1] if k <= len(self.values) else 0

    def __len__(self):
        return len(self.values)

    def to_monic(self) -> IntPoly:
        """The monic polynomial with these elementary symmetric values."""
        n = len(self.values)
        return IntPoly([(-1) ** (n - i) * self[n - i] for i in range(n)] + [1])


def _newton_power_sums(s: Sequence, m_max: int, zero):
    """q_1..q_{m_max} from s_1..s_n (s[0] holds s_1), any commutative ring."""
    n = len(s)
    q = []
    for k in range(1, m_max + 1):
        acc = zero
        if k <= n:
            acc = acc + ((-1) ** (k - 1) * k) * s[k - 1]
        for i in range(max(1, k - n), k):
            acc = acc + ((-1) ** (k + i - 1)) * (s[k - i - 1] * q[i - 1])
        q.append(acc)
    return q


def _monic_degree(f: IntPoly) -> int:
    if f.degree < 1:
        raise DegreeTooSmall(f"need degree >= 1, got {f}")
    if not f.is_monic():
        raise NotMonic(f"expected a monic polynomial, got {f}")
    return f.degree


def power_sums_from_coeffs(f: IntPoly, m_max: int) -> PowerSums:
    n = _monic_degree(f)
    if m_max < 1:
        raise ValueError("m_max must be positive")
    s = [(-1) ** k * f[n - k] for k in range(1, n + 1)]
    return PowerSums(tuple(_newton_power_sums(s, m_max, 0)), n)


def elem_from_power_sums(q: PowerSums) -> ElemSym:
    n = q.n
    if len(q) < n:
        raise ValueError(f"need q_1..q_{n}, have only {len(q)} power sums")
    e = [1]
    for k in range(1, n + 1):
        total = sum((-1) ** (i - 1) * e[k - i] * q[i] for i in range(1, k + 1))
        ek, r = divmod(total, k)
        if r:
            raise NonIntegralDivision(
                f"{k}*e_{k} = {total} is not divisible by {k}; "
                "not the power sums of a monic integer polynomial"
            )
        e.append(ek)
    return ElemSym(tuple(e[1:]))


def q_m_param(family: ParamXPoly, m: int) -> MultiParamPoly:
    """Q_m(p_0, ..., p_{n-1}) as a polynomial in the family's parameters."""
    if family.degree < 1:
        raise DegreeTooSmall(f"family must have degree >= 1 in x, got {family}")
    if not family.is_monic():
        raise NotMonic(f"family is not monic in x: {family}")
    if m < 1:
        raise ValueError("m must be positive")
    n = family.degree
    s = [(-1) ** k * family.coefficient(n - k) for k in range(1, n + 1)]
    zero = MultiParamPoly.const(family.params, 0)
    return _newton_power_sums(s, m, zero)[m - 1]


def root_power_transform(f: IntPoly, N: int) -> IntPoly:
    """Monic polynomial whose roots are the N-th powers of the roots of f."""
    n = _monic_degree(f)
    if N < 1:
        raise ValueError("N must be positive")
    q = power_sums_from_coeffs(f, n * N)
    qhat = PowerSums(tuple(q[k * N] for k in range(1, n + 1)), n)
    try:
        e = elem_from_power_sums(qhat)
    except NonIntegralDivision as exc:
        raise InternalDivisibility(f"root-power transform of {f} at N={N}: {exc}") from exc
    return e.to_monic()
