import os
import random
from functools import lru_cache

import pytest

from okutsu.poly import Poly
from okutsu.registry import REGISTRY

# Property-suite sizes scale with OKUTSU_SAMPLE_SCALE (default 1 = the sizes
# named in the acceptance criteria).
SCALE = float(os.environ.get("OKUTSU_SAMPLE_SCALE", "1"))


def samples(n: int) -> int:
    return max(1, int(round(n * SCALE)))


@lru_cache(maxsize=None)
def instance(example_id: str, p: int = 3, prec: int = 6):
    rec = REGISTRY[example_id]
    return rec.build(rec.fixed_p or p, prec)


def random_poly(K, rng: random.Random, degree: int, monic: bool = False) -> Poly:
    cs = [K.random(rng) for _ in range(degree)]
    if monic:
        lead = K.one
    else:
        lead = K.random(rng)
        if not lead:
            lead = K.one
    return Poly(K, cs + [lead])


@pytest.fixture
def rng():
    return random.Random(20261014)


# Lines recorded by test_acceptance, repeated at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
