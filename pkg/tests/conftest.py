import random

import pytest
from hypothesis import strategies as st

from trw.intpoly import IntPoly

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion test."""
    label = request.node.get_closest_marker("criterion").args[0]
    yield
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def random_monic(rng: random.Random, max_degree: int, bound: int = 10, min_degree: int = 1) -> IntPoly:
    n = rng.randint(min_degree, max_degree)
    return IntPoly([rng.randint(-bound, bound) for _ in range(n)] + [1])


def monic_polys(min_degree=1, max_degree=6, bound=10):
    return st.lists(
        st.integers(-bound, bound), min_size=min_degree, max_size=max_degree
    ).map(lambda cs: IntPoly(cs + [1]))


def int_polys(max_degree=5, bound=10):
    return st.lists(st.integers(-bound, bound), max_size=max_degree + 1).map(IntPoly)
