"""Parametrized families of polynomials with totally real unit roots.

A family is a monic f_a(x) = x^n + p_{n-1}(a) x^{n-1} + ... + p_0 whose
constant term p_0 is the constant +1 or -1 and which has at least one
nonconstant middle coefficient.  This module holds the built-in families,
per-instance verification, and the power-sum witness construction
Q_{2Nk}(p_0(a), ..., p_{n-1}(a)).
"""
from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from . import __version__
from .dsl import parse_document, parse_expr
from .errors import (
    AlphaNotTotallyReal,
    DegreeConstraintViolated,
    HypothesisViolation,
    InternalDivisibility,
    NotMonic,
    NotSquarefree,
    NoWitnessInRange,
    WitnessCheckFailed,
    WrongDegree,
)
from .intpoly import IntPoly, discriminant, trace_power
from .multipoly import MultiParamPoly, ParamXPoly, instantiate, resultant_in
from .realroots import is_totally_real
from .symfun import q_m_param

DEFAULT_USER_RANGE = (0, 20)


@dataclass(frozen=True)
class ParamFamily:
    name: str
    params: tuple[str, ...]
    degree: int
    poly: ParamXPoly
    default_range: Mapping[str, tuple[int, int]]
    provenance: str = "user"

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "default_range", dict(self.default_range))
        check_family_hypotheses(self.poly, self.degree)
        if self.poly.params != self.params:
            raise ValueError(f"poly parameters {self.poly.params} differ from {self.params}")
        for p in self.params:
            if p not in self.default_range:
                raise ValueError(f"no default range for parameter {p!r}")

    def instance(self, assignment: Mapping[str, int]) -> IntPoly:
        return instantiate(self.poly, assignment)


def check_family_hypotheses(poly: ParamXPoly, degree: Optional[int] = None) -> None:
    """Raise HypothesisViolation unless poly is a valid unit family."""
    n = poly.degree
    if n < 2:
        raise HypothesisViolation("degree must be at least 2", None, f"got degree {n} in x")
    if degree is not None and n != degree:
        raise HypothesisViolation("declared degree does not match", n, f"declared {degree}, found {n}")
    if not poly.is_monic():
        raise HypothesisViolation("not monic in x", n, f"leading coefficient is {poly.coefficient(n)}")
    p0 = poly.coefficient(0)
    if not (p0.is_constant() and p0.constant_value() in (1, -1)):
        raise HypothesisViolation("constant term must be the constant +1 or -1", 0, f"got {p0}")
    if all(poly.coefficient(j).is_constant() for j in range(1, n)):
        raise HypothesisViolation(
            "no nonconstant middle coefficient", None,
            "some p_j with 1 <= j <= n-1 must depend on the parameters",
        )


def _family(name, params, text, ranges, provenance) -> ParamFamily:
    poly = parse_expr(text, params)
    return ParamFamily(name, tuple(params), poly.degree, poly, ranges, provenance)


def registry() -> list[ParamFamily]:
    """The built-in families, lowest degree first."""
    return [
        _family(
            "mruv_quadratic", ("a",), "x^2 - 2*a*x - 1", {"a": (-100, 100)},
            "quadratic x^2 - 2ax - 1 (Martinez-Ranero, Utreras, Videla); range is a desk-scale choice",
        ),
        _family(
            "shanks_cubic", ("a",), "x^3 - a*x^2 - (a + 3)*x - 1", {"a": (-1, 50)},
            "Shanks' simplest cubics, totally real cyclic for a >= -1",
        ),
        _family(
            "kishi_cubic", ("n",),
            "x^3 - n*(n^2 + n + 3)*(n^2 + 2)*x^2 - (n^3 + 2*n^2 + 3*n + 3)*x - 1",
            {"n": (-20, 20)},
            "Kishi's cyclic cubics, n in Z; range is a desk-scale choice",
        ),
        _family(
            "gras_quartic", ("t",), "x^4 - t*x^3 - 6*x^2 + t*x + 1", {"t": (4, 60)},
            "Gras' cyclic quartics, totally real for t >= 4",
        ),
        _family(
            "lehmer_quintic", ("a",),
            "x^5 + a^2*x^4 - (2*a^3 + 6*a^2 + 10*a + 10)*x^3"
            " + (a^4 + 5*a^3 + 11*a^2 + 15*a + 5)*x^2 + (a^3 + 4*a^2 + 10*a + 10)*x + 1",
            {"a": (-20, 20)},
            "E. Lehmer's cyclic quintics (Schoof-Washington), a in Z; range is a desk-scale choice",
        ),
        _family(
            "gras_sextic", ("a",),
            "x^6 - 2*(a - 1)*x^5 - 5*(a + 2)*x^4 - 20*x^3 + 5*(a - 1)*x^2 + (2*a + 4)*x + 1",
            {"a": (7, 60)},
            "Gras' cyclic sextics, totally real for a >= 7",
        ),
    ]


_ALIASES = {
    "mruv": "mruv_quadratic",
    "shanks": "shanks_cubic",
    "kishi": "kishi_cubic",
    "gras4": "gras_quartic",
    "lehmer": "lehmer_quintic",
    "gras6": "gras_sextic",
}


def get_family(name: str) -> ParamFamily:
    """Look up a built-in family by full name or short alias (``shanks``)."""
    full = _ALIASES.get(name, name)
    for fam in registry():
        if fam.name == full:
            return fam
    known = sorted(set(_ALIASES) | {f.name for f in registry()})
    raise KeyError(f"unknown family {name!r}; known: {', '.join(known)}")


def parse_family(text: str) -> ParamFamily:
    doc = parse_document(text)
    params = doc.params
    ranges = {p: doc.ranges.get(p, DEFAULT_USER_RANGE) for p in params}
    return ParamFamily(
        doc.name or "user",
        params,
        doc.poly.degree,
        doc.poly,
        ranges,
        "user",
    )


# verification


@dataclass(frozen=True)
class InstanceResult:
    assignment: Mapping[str, int]
    totally_real: bool
    unit_constant: bool
    degree_ok: bool

    @property
    def ok(self) -> bool:
        return self.totally_real and self.unit_constant and self.degree_ok


def verify_instance(fam: ParamFamily, assignment: Mapping[str, int]) -> InstanceResult:
    f = fam.instance(assignment)
    degree_ok = f.degree == fam.degree
    return InstanceResult(
        dict(assignment),
        totally_real=f.degree >= 1 and is_totally_real(f),
        unit_constant=f[0] in (1, -1),
        degree_ok=degree_ok,
    )


@dataclass
class FamilyReport:
    family: str
    ranges: dict[str, tuple[int, int]]
    instances: int
    failures: list[InstanceResult] = field(default_factory=list)
    elapsed_ms: float = 0.0
    tool_version: str = __version__

    @property
    def ok(self) -> bool:
        return not self.failures


def _verify_one(args):
    fam, assignment = args
    return verify_instance(fam, assignment)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TRW_JOBS", "1")))
    except ValueError:
        return 1


def verify_range(
    fam: ParamFamily,
    ranges: Optional[Mapping[str, tuple[int, int]]] = None,
    jobs: Optional[int] = None,
) -> FamilyReport:
    """verify_instance over an integer box; failures are collected, never raised."""
    ranges = dict(fam.default_range if ranges is None else ranges)
    for p in fam.params:
        if p not in ranges:
            ranges[p] = fam.default_range[p]
    box = [range(ranges[p][0], ranges[p][1] + 1) for p in fam.params]
    assignments = [dict(zip(fam.params, vals)) for vals in itertools.product(*box)]
    jobs = default_jobs() if jobs is None else jobs
    start = time.perf_counter()
    if jobs > 1 and len(assignments) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(assignments) // (4 * jobs))
            results = list(pool.map(_verify_one, [(fam, a) for a in assignments], chunksize=chunk))
    else:
        results = [verify_instance(fam, a) for a in assignments]
    elapsed = (time.perf_counter() - start) * 1000
    return FamilyReport(
        fam.name,
        {p: tuple(ranges[p]) for p in fam.params},
        len(results),
        [r for r in results if not r.ok],
        elapsed,
    )


# witness construction


@dataclass(frozen=True)
class WitnessReport:
    family: str
    torsion_half_order: int
    k: int
    exponent: int
    witness: MultiParamPoly
    nonconstant: bool
    samples: tuple[tuple[int, int], ...] = ()


def _single_param(fam: ParamFamily) -> str:
    if len(fam.params) != 1:
        raise ValueError(f"family {fam.name!r} must have exactly one parameter, has {fam.params}")
    return fam.params[0]


def find_witness_k(fam: ParamFamily, N: int) -> int:
    """Smallest k in 1..n with Q_{kN}(p_0, ..., p_{n-1}) nonconstant in the parameter."""
    _single_param(fam)
    if N < 1:
        raise ValueError("N must be positive")
    for k in range(1, fam.degree + 1):
        if not q_m_param(fam.poly, k * N).is_constant():
            return k
    raise NoWitnessInRange(
        f"Q_(kN) is constant for every k <= {fam.degree} in family {fam.name!r} (N={N})"
    )


def sample_points(lo: int, hi: int) -> tuple[int, ...]:
    return tuple(sorted({lo, (lo + hi) // 2, hi}))


def build_witness(fam: ParamFamily, N: int) -> WitnessReport:
    """Witness polynomial Q_{2Nk}(p_0(a), ..., p_{n-1}(a)) with the least valid k.

    Its value at each sampled a is re-derived as the trace of the 2Nk-th power
    of the companion matrix of f_a.
    """
    param = _single_param(fam)
    if N < 1:
        raise ValueError("torsion half-order N must be positive")
    k = find_witness_k(fam, 2 * N)
    exponent = 2 * N * k
    witness = q_m_param(fam.poly, exponent)
    nonconstant = not witness.is_constant()
    if not nonconstant:
        raise WitnessCheckFailed(f"witness for {fam.name} is constant")
    samples = []
    for a in sample_points(*fam.default_range[param]):
        value = witness.evaluate({param: a})
        direct = trace_power(fam.instance({param: a}), exponent)
        if value != direct:
            raise WitnessCheckFailed(
                f"{fam.name}: witness({a}) = {value} but trace of C^{exponent} is {direct}"
            )
        samples.append((a, value))
    return WitnessReport(fam.name, N, k, exponent, witness, nonconstant, tuple(samples))


# generators


def is_squarefree_int(d: int) -> bool:
    if d < 1:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


def _qmul(u, v, d):
    # (u0 + u1 sqrt d)(v0 + v1 sqrt d)
    return (u[0] * v[0] + d * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def gen_quartic_2param(a: int, b: int, d: int) -> IntPoly:
    """Product of x^2 - 2*theta*x - 1 over theta = a + b*sqrt(d) and its conjugate.

    Expanded exactly in Z[sqrt d]; the result is
    x^4 - 4a x^3 + (4(a^2 - b^2 d) - 2) x^2 + 4a x + 1.
    """
    if not is_squarefree_int(d):
        raise NotSquarefree(f"d = {d} is not a positive squarefree integer")
    factors = []
    for sign in (1, -1):
        theta = (a, sign * b)
        factors.append([(-1, 0), (-2 * theta[0], -2 * theta[1]), (1, 0)])
    f, g = factors
    out = [(0, 0)] * 5
    for i, u in enumerate(f):
        for j, v in enumerate(g):
            p = _qmul(u, v, d)
            out[i + j] = (out[i + j][0] + p[0], out[i + j][1] + p[1])
    if any(c[1] for c in out):
        raise InternalDivisibility(f"irrational part survived in product: {out}")
    return IntPoly(c[0] for c in out)


def gen_unit_family(
    h: MultiParamPoly,
    alpha_minpoly: IntPoly,
    name: str = "unit_family",
    param: str = "a",
    default_range: tuple[int, int] = DEFAULT_USER_RANGE,
) -> ParamFamily:
    """The family prod_i (x^2 - 2 h(a, alpha_i) x - 1) over the conjugates alpha_i.

    h is a polynomial in two parameters; the first plays the family parameter,
    the second is evaluated at the conjugates of alpha.  The product is taken
    as Res_y(alpha_minpoly(y), x^2 - 2 h(a, y) x - 1).
    """
    if len(h.params) != 2:
        raise ValueError(f"h must have exactly two parameters, has {h.params}")
    if alpha_minpoly.degree < 1:
        raise WrongDegree("alpha_minpoly must have degree >= 1")
    if not alpha_minpoly.is_monic():
        raise NotMonic(f"alpha_minpoly must be monic, got {alpha_minpoly}")
    if not is_totally_real(alpha_minpoly):
        raise AlphaNotTotallyReal(f"{alpha_minpoly} has non-real roots")
    t1, t2 = h.params
    n = alpha_minpoly.degree
    if h.degree_in(t1) <= 0:
        raise DegreeConstraintViolated(f"h must have positive degree in {t1}: {h}")
    if h.degree_in(t2) != n - 1:
        raise DegreeConstraintViolated(
            f"degree of h in {t2} is {h.degree_in(t2)}, must be deg(alpha) - 1 = {n - 1}"
        )
    ring = ("a", "y", "x")
    hh = h.embed(ring, {t1: "a", t2: "y"})
    x = MultiParamPoly.var(ring, "x")
    y = MultiParamPoly.var(ring, "y")
    quad = x ** 2 - 2 * hh * x - 1
    alpha = MultiParamPoly.const(ring, 0)
    for i, c in enumerate(alpha_minpoly.coeffs):
        alpha = alpha + c * y ** i
    res = resultant_in(alpha, quad, "y")  # over ("a", "x")
    by_x = res.coefficients_in("x")
    zero = MultiParamPoly.const(("a",), 0)
    coeffs = [by_x.get(i, zero) for i in range(max(by_x) + 1)]
    poly = ParamXPoly(("a",), tuple(coeffs))
    lead = poly.coefficient(poly.degree)
    if lead.is_constant() and lead.constant_value() == -1:
        poly = -poly
    if poly.degree != 2 * n:
        raise InternalDivisibility(f"resultant has degree {poly.degree} in x, expected {2 * n}")
    if param != "a":
        poly = ParamXPoly((param,), tuple(c.embed((param,), {"a": param}) for c in poly.coeffs))
    provenance = f"generated: h = {h}, alpha root of {alpha_minpoly.__str__().replace('x', 'y')}"
    return ParamFamily(name, (param,), 2 * n, poly, {param: default_range}, provenance)


def cyclic_cubic_check(f: IntPoly) -> bool:
    """Square-discriminant test: positive perfect-square discriminant of a monic cubic."""
    if f.degree != 3:
        raise WrongDegree(f"expected a cubic, got degree {f.degree}")
    if not f.is_monic():
        raise NotMonic(f"expected a monic cubic, got {f}")
    disc = discriminant(f)
    return disc > 0 and math.isqrt(disc) ** 2 == disc
