import random

import pytest

from hadscheme.hadamard import MonomialPair, apply_pair

ACCEPTANCE_LINES: list = []


def random_pair(n: int, rng: random.Random) -> MonomialPair:
    sigma = list(range(n))
    tau = list(range(n))
    rng.shuffle(sigma)
    rng.shuffle(tau)
    return MonomialPair(
        tuple(sigma),
        tuple(rng.choice((1, -1)) for _ in range(n)),
        tuple(tau),
        tuple(rng.choice((1, -1)) for _ in range(n)),
    )


def random_equivalent(h, rng: random.Random):
    return apply_pair(random_pair(h.n, rng), h)


@pytest.fixture
def rng():
    return random.Random(0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
