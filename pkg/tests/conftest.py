import os
import random
from fractions import Fraction

import pytest

from bielliptic.constants import load_example
from bielliptic.numberfield import nf_create
from bielliptic.surface import QQ, BiellipticSurface

# property suites replay with BIELLIPTIC_SEED=<n> pytest ...
SEED = int(os.environ.get("BIELLIPTIC_SEED", "20261015"))


def pytest_report_header(config):
    return f"property seed: {SEED} (set BIELLIPTIC_SEED to replay)"


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def ex():
    return load_example()


@pytest.fixture(scope="session")
def L(ex):
    return ex.L


@pytest.fixture(scope="session")
def L1(ex):
    return ex.L1


@pytest.fixture(scope="session")
def Q():
    return QQ


@pytest.fixture(scope="session")
def S():
    return BiellipticSurface()


@pytest.fixture(scope="session")
def SL(ex):
    return ex.surface_L


@pytest.fixture(scope="session")
def theta(L):
    return L.gen


def random_element(rng, field, bound=20, den_bound=5, allow_zero=True):
    while True:
        d = rng.randint(1, den_bound)
        e = field.element([Fraction(rng.randint(-bound, bound), d) for _ in range(field.degree)])
        if allow_zero or not e.is_zero():
            return e


@pytest.fixture(scope="session")
def quadratic_field():
    return nf_create([2, 0, 1], name="Q(i sqrt 2)")
