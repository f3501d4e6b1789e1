import os
import sys

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from corevote.model import Instance  # noqa: E402

RULES = ["av", "sav", "cc", "pav"]


def ex1():
    return Instance.from_sets(5, [{0, 1, 2}] * 4 + [{3, 4}] * 2, 3)


def ex2():
    return Instance.from_sets(3, [{0}, {0}, {0, 1}, {1, 2}], 2)


def ex3():
    return Instance.from_sets(4, [{0}, {0, 3}, {0, 3}, {1}, {1, 2, 3}, {1, 2, 3}], 2)


def empty_core_instance():
    # six voters, one per pair of four alternatives
    return Instance.from_sets(4, [{0, 1}, {0, 3}, {0, 2}, {1, 2}, {1, 3}, {2, 3}], 2)


@pytest.fixture
def example1():
    return ex1()


@pytest.fixture
def example2():
    return ex2()


@pytest.fixture
def example3():
    return ex3()


@st.composite
def instances(draw, max_n=6, max_m=5, max_k=3, min_n=1):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, min(max_k, m)))
    ballots = draw(st.lists(st.frozensets(st.integers(0, m - 1), max_size=m), min_size=n, max_size=n))
    return Instance.from_sets(m, ballots, k)
