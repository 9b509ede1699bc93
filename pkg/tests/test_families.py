import math
import random

import pytest

from trw.errors import (
    AlphaNotTotallyReal,
    DegreeConstraintViolated,
    NoWitnessInRange,
    NotSquarefree,
)
from trw.families import (
    build_witness,
    cyclic_cubic_check,
    find_witness_k,
    gen_quartic_2param,
    gen_unit_family,
    get_family,
    parse_family,
    registry,
    verify_instance,
    verify_range,
)
from trw.intpoly import IntPoly, discriminant, trace_power
from trw.multipoly import MultiParamPoly
from trw.realroots import approx_roots, is_totally_real
from trw.symfun import q_m_param

X = IntPoly.x()
T = ("t1", "t2")
t1 = MultiParamPoly.var(T, "t1")
t2 = MultiParamPoly.var(T, "t2")


def test_registry_shape():
    fams = registry()
    assert [f.degree for f in fams] == [2, 3, 3, 4, 5, 6]
    assert len({f.name for f in fams}) == 6
    for f in fams:
        assert f.provenance
    with pytest.raises(KeyError):
        get_family("nope")


def test_verify_instance_examples():
    r = verify_instance(get_family("shanks"), {"a": -1})
    assert r.totally_real and r.unit_constant and r.degree_ok
    lehmer = get_family("lehmer")
    assert lehmer.instance({"a": 0}) == IntPoly((1, 10, 5, -10, 0, 1))
    assert verify_instance(lehmer, {"a": 0}).ok
    gras = get_family("gras4")
    assert gras.instance({"t": 0}) == X ** 4 - 6 * X ** 2 + 1
    assert verify_instance(gras, {"t": 0}).ok


def test_verify_range_examples():
    rep = verify_range(get_family("shanks"), {"a": (-1, 50)})
    assert (rep.instances, len(rep.failures)) == (52, 0)
    rep = verify_range(get_family("gras6"), {"a": (7, 30)})
    assert (rep.instances, len(rep.failures)) == (24, 0)
    user = parse_family("poly: x^2 - 2*a*x + 1")
    rep = verify_range(user, {"a": (0, 0)})
    assert rep.instances == 1
    (fail,) = rep.failures
    assert not fail.totally_real and fail.unit_constant and fail.degree_ok


def test_verify_range_reports_without_aborting():
    # Gras quartic below its threshold: the scan continues past failures
    rep = verify_range(get_family("gras4"), {"t": (-3, 5)})
    assert rep.instances == 9
    bad = [r.assignment["t"] for r in rep.failures]
    for t in bad:
        assert not is_totally_real(get_family("gras4").instance({"t": t}))


def test_verify_range_parallel_matches_serial():
    fam = get_family("lehmer")
    a = verify_range(fam, jobs=1)
    b = verify_range(fam, jobs=3)
    assert (a.instances, a.failures) == (b.instances, b.failures)


def test_registry_default_ranges_all_pass():
    for fam in registry():
        rep = verify_range(fam)
        assert rep.ok, (fam.name, rep.failures[:3])


def test_shanks_discriminant_identity():
    fam = get_family("shanks")
    for a in range(-1, 51):
        f = fam.instance({"a": a})
        assert discriminant(f) == (a * a + 3 * a + 9) ** 2
        assert cyclic_cubic_check(f)


def test_kishi_cyclic():
    fam = get_family("kishi")
    for n in range(-20, 21):
        assert cyclic_cubic_check(fam.instance({"n": n}))


def test_cyclic_cubic_examples():
    assert cyclic_cubic_check(X ** 3 + X ** 2 - 2 * X - 1)
    assert not cyclic_cubic_check(X ** 3 - 2)
    assert discriminant(X ** 3 - 2) == -108
    assert cyclic_cubic_check(X ** 3 - X ** 2 - 4 * X - 1)


def test_find_witness_k_examples():
    mruv = get_family("mruv")
    assert find_witness_k(mruv, 1) == 1
    assert find_witness_k(mruv, 3) == 1
    assert find_witness_k(get_family("shanks"), 1) == 1
    assert q_m_param(get_family("shanks").poly, 1) == MultiParamPoly.var(("a",), "a")


def test_find_witness_k_exhausted(monkeypatch):
    # cannot happen for a valid family, so force constant power sums
    import trw.families as F

    monkeypatch.setattr(F, "q_m_param", lambda poly, m: MultiParamPoly.const(poly.params, 3))
    with pytest.raises(NoWitnessInRange):
        F.find_witness_k(get_family("mruv"), 1)


def test_build_witness_examples():
    r = build_witness(get_family("mruv"), 1)
    a = MultiParamPoly.var(("a",), "a")
    assert (r.exponent, r.witness) == (2, 4 * a ** 2 + 2)
    r = build_witness(get_family("shanks"), 1)
    assert (r.exponent, r.witness) == (2, a ** 2 + 2 * a + 6)
    r = build_witness(get_family("lehmer"), 1)
    assert (r.exponent, r.witness) == (2, a ** 4 + 4 * a ** 3 + 12 * a ** 2 + 20 * a + 20)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_witness_matches_trace_at_random_points(N):
    rng = random.Random(100 + N)
    for fam in registry():
        (p,) = fam.params
        rep = build_witness(fam, N)
        assert rep.nonconstant
        lo, hi = fam.default_range[p]
        for a in rng.sample(range(lo, hi + 1), 3):
            assert rep.witness.evaluate({p: a}) == trace_power(fam.instance({p: a}), rep.exponent)


def _quartic_by_sympy(a, b, d):
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    theta = a + b * sympy.sqrt(d)
    thetab = a - b * sympy.sqrt(d)
    expr = sympy.expand((x ** 2 - 2 * theta * x - 1) * (x ** 2 - 2 * thetab * x - 1))
    poly = sympy.Poly(expr, x)
    return IntPoly(int(c) for c in reversed(poly.all_coeffs()))


def test_gen_quartic_examples():
    assert gen_quartic_2param(1, 1, 2) == IntPoly((1, 4, -6, -4, 1))
    assert gen_quartic_2param(1, 1, 2) == get_family("gras4").instance({"t": 4})
    assert gen_quartic_2param(0, 0, 2) == X ** 4 - 2 * X ** 2 + 1
    assert gen_quartic_2param(3, 0, 5) == (X ** 2 - 6 * X - 1) ** 2
    with pytest.raises(NotSquarefree):
        gen_quartic_2param(1, 1, 4)


def test_gen_quartic_linear_term():
    # x-coefficient is 4a, x^2-coefficient is 4(a^2 - b^2 d) - 2
    f = gen_quartic_2param(2, 1, 3)
    assert f.coeffs == (1, 8, 4 * (4 - 3) - 2, -8, 1)


def test_gen_quartic_matches_symbolic_and_is_totally_real():
    for d in (2, 3, 5):
        for a in range(11):
            for b in range(11):
                f = gen_quartic_2param(a, b, d)
                assert f == _quartic_by_sympy(a, b, d)
                assert f[0] == 1
                assert is_totally_real(f)


def test_gen_unit_family_examples():
    fam = gen_unit_family(MultiParamPoly.var(T, "t1"), X - 1)
    assert fam.poly == get_family("mruv").poly
    fam = gen_unit_family(t1 * t2, X ** 2 - 2)
    a = MultiParamPoly.var(("a",), "a")
    assert fam.degree == 4
    assert fam.poly.coefficient(4) == 1 + 0 * a
    assert fam.poly.coefficient(3).is_zero() and fam.poly.coefficient(1).is_zero()
    assert fam.poly.coefficient(2) == -(8 * a ** 2 + 2)
    assert fam.poly.coefficient(0) == 1 + 0 * a
    with pytest.raises(DegreeConstraintViolated):
        gen_unit_family(t2, X ** 2 - 2)
    with pytest.raises(DegreeConstraintViolated):
        gen_unit_family(t1, X ** 2 - 2)
    with pytest.raises(AlphaNotTotallyReal):
        gen_unit_family(t1 * t2, X ** 2 + 1)


def test_gen_unit_family_numeric_factorization():
    cases = [
        (t1 * t2, X ** 2 - 2),
        (t1 + t2, X ** 2 - X - 1),
        (t1 ** 2 * t2 ** 2 + t2 + t1, X ** 3 - 3 * X + 1),
    ]
    for h, alpha in cases:
        fam = gen_unit_family(h, alpha)
        conj = [z.real for z in approx_roots(alpha).roots]
        for av in (1, 2, 5):
            f = fam.instance({"a": av})
            expected = []
            for al in conj:
                theta = _eval_float(h, av, al)
                s = math.sqrt(theta * theta + 1)
                expected += [theta + s, theta - s]
            got = sorted(z.real for z in approx_roots(f).roots)
            assert len(got) == 2 * alpha.degree
            for g, e in zip(got, sorted(expected)):
                assert abs(g - e) <= 1e-6 * max(1.0, abs(e))


def _eval_float(h, a, al):
    total = 0.0
    for (e1, e2), c in h.terms:
        total += c * a ** e1 * al ** e2
    return total
