import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qgrade import grgroup
from qgrade.pmc import PointedMatchedCircle, torus

TORUS = torus()
GENUS2 = PointedMatchedCircle(8, ((1, 3), (2, 4), (5, 7), (6, 8)))

small_q = st.builds(Fraction, st.integers(-12, 12), st.sampled_from([1, 2, 3, 4]))


def chains(pmc):
    return st.lists(small_q, min_size=pmc.h1_dim, max_size=pmc.h1_dim).map(tuple)


def elements(pmc=TORUS):
    return st.builds(lambda m, a: grgroup.element(pmc, m, a), small_q, chains(pmc))


circles = st.sampled_from([TORUS, GENUS2])


def el(m, *h, pmc=TORUS):
    return grgroup.element(pmc, Fraction(m), [Fraction(c) for c in h])


@pytest.fixture
def T():
    return TORUS


def load_fixture(name):
    import json

    from qgrade import diagram
    from qgrade.modules import data_path

    with open(data_path(name)) as fh:
        return diagram.from_dict(json.load(fh), name=name)


@pytest.fixture(scope="session")
def two_bigon():
    return load_fixture("two_bigon.diagram.json")


@pytest.fixture(scope="session")
def lens():
    return load_fixture("lens_2_1.diagram.json")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
