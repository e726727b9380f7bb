from fractions import Fraction as F

import pytest

from srlat.constructions import Recipe, Step, grid, replay, s_k
from srlat.diagram import LatticeDiagram


@pytest.fixture(scope="session")
def s1():
    return s_k(1)


@pytest.fixture(scope="session")
def s2():
    return s_k(2)


@pytest.fixture(scope="session")
def square():
    return grid(1, 1)


@pytest.fixture(scope="session")
def s1_state():
    return replay(Recipe((1, 1), (Step("multifork", "g_1_1", 1),)))


@pytest.fixture(scope="session")
def stacked_state():
    """A fork in the cell right under the foot of an earlier fork."""
    return replay(Recipe((1, 1), (Step("multifork", "g_1_1", 1), Step("multifork", "s1_f1", 1))))


def square_with_tail():
    """Slim, not rectangular: a square topped by a two-element chain.

    The atoms sit on one vertical line, so collapsing the lower tail cover
    produces an edge running through the other atom.
    """
    return LatticeDiagram(
        {"0": (0, 1), "a": (1, 1), "b": (F(3, 2), F(3, 2)), "c": (F(5, 2), F(3, 2)),
         "d": (3, 3), "1": (F(9, 2), F(9, 2))},
        [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("c", "d"), ("d", "1")])


def crossing_quotient():
    """Slim, not rectangular, drawn so that one quotient has crossing edges."""
    return LatticeDiagram(
        {"0": (F(1, 2), F(-1, 2)), "a": (1, 1), "b": (F(1, 2), F(3, 2)), "c": (F(5, 2), F(3, 2)),
         "d": (2, 3), "e": (3, 4), "1": (4, 4)},
        [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "e"), ("d", "e"),
         ("e", "1")])


# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {number:2d}. {title}: {detail}")
