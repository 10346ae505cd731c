from itertools import product

import pytest

from cycinv.core import WeightSystem
from cycinv.invariants import minimal_generators

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def brute_minimal_invariants(n, weights, bound=None):
    """Enumerate invariant monomials up to degree ``bound`` (default n) and keep the
    ones with no proper invariant divisor other than 1."""
    bound = n if bound is None else bound
    inv = [e for e in product(range(bound + 1), repeat=len(weights))
           if 0 < sum(e) <= bound and sum(a * w for a, w in zip(e, weights)) % n == 0]
    return {e for e in inv
            if not any(q != e and all(x <= y for x, y in zip(q, e)) for q in inv)}


@pytest.fixture(scope="session")
def z10():
    return minimal_generators(WeightSystem(10, (1, 2)))


@pytest.fixture(scope="session")
def z6():
    return minimal_generators(WeightSystem(6, (1, 2, 3)))
