import random
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import strategies as st

from patternspace import catalog

DATA = Path(__file__).resolve().parents[1] / "data"

ROT90 = ((0, -1), (1, 0))
MINUS_I2 = ((-1, 0), (0, -1))

# rationals on a coarse grid keep exact arithmetic cheap
rationals = st.builds(lambda n, d: F(n, d), st.integers(-24, 24), st.sampled_from([1, 2, 3, 4, 5]))
radii = st.builds(lambda n, d: F(n, d), st.integers(0, 16), st.sampled_from([1, 2, 4]))


def points(d):
    return st.tuples(*([rationals] * d))


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def zsq():
    return catalog.lattice_points(2)


@pytest.fixture(scope="session")
def z():
    return catalog.lattice_points(1)


@pytest.fixture(scope="session")
def fifth():
    return catalog.fifth_shifted()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
