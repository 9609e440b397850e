import random

import pytest

import latcoh
from latcoh import paper_example_3, paper_example_6
from latcoh.core import Core


def pytest_addoption(parser):
    parser.addoption(
        "--word-cap",
        action="store",
        default="",
        dest="word-cap",
        help="Free word length cap used by the client fixtures",
    )


@pytest.fixture(scope="package")
def word_cap(pytestconfig):
    cap = pytestconfig.getoption("word-cap")
    return int(cap) if cap else 10**6


@pytest.fixture(scope="package")
def client(pytestconfig, word_cap):
    return latcoh.init(word_cap)


@pytest.fixture(scope="package")
def core(pytestconfig, word_cap):
    return Core(word_cap)


@pytest.fixture(scope="package")
def paper3():
    return paper_example_3()


@pytest.fixture(scope="package")
def paper6():
    return paper_example_6()


@pytest.fixture
def rng():
    return random.Random(7)
