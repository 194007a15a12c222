import random

import pytest
from gmpy2 import mpq

from ctpairing.etale import EtaleAlgebra
from ctpairing.problem import load_problem

from helpers import fixture_path


@pytest.fixture(scope="session")
def ex1_problem():
    return load_problem(fixture_path("ex1.json"))


@pytest.fixture(scope="session")
def exbs_problem():
    return load_problem(fixture_path("exbs.json"))


@pytest.fixture(scope="session")
def ex1_algebra(ex1_problem):
    return EtaleAlgebra(ex1_problem.curve)


@pytest.fixture
def rng():
    return random.Random(20260826)


@pytest.fixture(scope="session")
def ex1_models(ex1_problem):
    return dict(ex1_problem.models)


def selmer_map(problem):
    return dict(problem.gens + list(problem.aux))


@pytest.fixture(scope="session")
def ex1_selmer(ex1_problem):
    return selmer_map(ex1_problem)
