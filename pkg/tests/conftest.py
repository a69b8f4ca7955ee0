from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rankmetric import code_from_generators, field_create  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def F2():
    return field_create(2)


@pytest.fixture(scope="session")
def F3():
    return field_create(3)


EX2_GENS = [
    [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 1, 1], [0, 0, 1]],
    [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
]
EXNOT_GENS = [[[1, 1], [0, 0]], [[0, 0], [1, 1]]]
NONMATROID_GENS = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]]
MRD_C1_GENS = [
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]],
    [[0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1], [1, 1, 0, 0]],
    [[0, 0, 1, 0], [0, 1, 1, 1], [1, 0, 1, 0], [1, 0, 0, 1]],
    [[0, 0, 0, 1], [1, 1, 1, 0], [0, 1, 0, 1], [0, 1, 1, 1]],
]
PAIR_C1_GENS = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
PAIR_C2_GENS = [[[0, 1], [1, 0]], [[0, 1], [0, 0]]]


@pytest.fixture(scope="session")
def ex2(F2):
    return code_from_generators(F2, 3, 3, EX2_GENS)


@pytest.fixture(scope="session")
def exnot(F2):
    return code_from_generators(F2, 2, 2, EXNOT_GENS)


@pytest.fixture(scope="session")
def nonmatroid(F3):
    return code_from_generators(F3, 2, 2, NONMATROID_GENS)


def random_code(rng, field, n, m, k):
    """A uniformly random generator set of exact dimension k."""
    from rankmetric import MatrixCode

    while True:
        C = MatrixCode(field, n, m, rng.integers(0, field.order, size=(k, n * m)))
        if C.dim == k:
            return C


def random_invertible(rng, field, n):
    from rankmetric.linalg import rank

    while True:
        A = rng.integers(0, field.order, size=(n, n))
        if rank(A, field) == n:
            return A
