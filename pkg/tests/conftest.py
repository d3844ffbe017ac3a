import random

import pytest

from thurstonvol.exactmath import Matrix

# lines appended by test_acceptance, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_skew(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> Matrix:
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = rng.randint(lo, hi)
            A[j][i] = -A[i][j]
    return Matrix(A, cols=n)


def random_unimodular(rng: random.Random, n: int, steps: int = 12) -> Matrix:
    """Product of random elementary integer operations."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        kind = rng.random()
        if kind < 0.7:
            k = rng.choice([-2, -1, 1, 2])
            for r in U:
                r[i] += k * r[j]
        elif kind < 0.85:
            for r in U:
                r[i], r[j] = r[j], r[i]
        else:
            for r in U:
                r[i] = -r[i]
    return Matrix(U, cols=n)


@pytest.fixture
def rng():
    return random.Random(20261015)
