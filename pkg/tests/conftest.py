"""Shared fixtures: the worked systems, random small systems, app and CLI runner."""

import random
from pathlib import Path

import pytest
from click.testing import CliRunner

from ldaapp import create_app
from ldaapp.field import SymbolTable
from ldaapp.janet import janet_basis
from ldaapp.ring import DiffPoly, DiffTerm, Ranking
from ldaapp.system import load_pde, load_system

SYSTEMS = Path(__file__).resolve().parent.parent / 'systems'


@pytest.fixture(scope='session')
def systems_dir():
    return SYSTEMS


@pytest.fixture(scope='session')
def one_loop():
    return load_system(SYSTEMS / 'one_loop.json')


@pytest.fixture(scope='session')
def one_loop_massless():
    return load_system(SYSTEMS / 'one_loop_massless.json')


@pytest.fixture(scope='session')
def one_loop_basis(one_loop):
    return janet_basis(one_loop.equations, one_loop.ranking)


@pytest.fixture(scope='session')
def massless_basis(one_loop_massless):
    return janet_basis(one_loop_massless.equations, one_loop_massless.ranking)


@pytest.fixture(scope='session')
def heat():
    return load_system(SYSTEMS / 'heat.json')


@pytest.fixture(scope='session')
def heat_pde():
    return load_pde(SYSTEMS / 'heat_pde.json')


@pytest.fixture
def app():
    app = create_app('testing')
    yield app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner():
    return CliRunner(env={'LDA_ENV': 'testing'})


@pytest.fixture
def plane():
    """Two variables x, y and one parameter c."""
    return SymbolTable(('x', 'y'), ('c',))


def random_ratfun(rng, table, parametric=True):
    """A small nonzero coefficient: an integer, or linear in a parameter or variable."""
    value = table.number(rng.choice([-3, -2, -1, 1, 2, 3]))
    if parametric and table.names and rng.random() < 0.3:
        value = value + table.symbol(rng.choice(table.names)) + rng.randint(1, 3)
    return value if value else table.one


def random_system(rng, max_vars=3, max_funcs=2, max_eqs=4, max_degree=3, parametric=True):
    """
    A random homogeneous linear system and an ordering for it.

    Coefficients are small integers, or with `parametric` sometimes linear
    in the parameter c or one of the variables.
    """
    nvars = rng.randint(1, max_vars)
    nfuncs = rng.randint(1, max_funcs)
    variables = ['x1', 'x2', 'x3'][:nvars]
    table = SymbolTable(variables, ('c',))
    equations = []
    for _ in range(rng.randint(1, max_eqs)):
        items = []
        for _ in range(rng.randint(2, 3)):
            exps = tuple(rng.randint(0, max_degree) for _ in range(nvars))
            while sum(exps) > max_degree:
                exps = tuple(max(e - 1, 0) for e in exps)
            term = DiffTerm(rng.randrange(nfuncs), exps)
            coeff = random_ratfun(rng, table, parametric=parametric and rng.random() < 0.5)
            items.append((term, coeff))
        p = DiffPoly.build(table, items)
        if p:
            equations.append(p)
    if not equations:
        equations.append(DiffPoly.single(table, DiffTerm(0, (1,) * nvars)))
    kind = rng.choice([Ranking.orderly, Ranking.elimination])
    ranking = kind(nfuncs, nvars)
    return table, equations, ranking


@pytest.fixture
def make_system():
    return random_system


@pytest.fixture
def make_ratfun():
    return random_ratfun
