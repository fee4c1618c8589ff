import random

import pytest

from ldaapp.errors import DegreeBoundTooSmall
from ldaapp.janet import groebner_normal_form, janet_basis, mark_basis
from ldaapp.field import SymbolTable
from ldaapp.oracle import (
    Oracle,
    build_prolongation_matrix,
    multiindices,
    oracle_member,
    oracle_normal_form,
    terms_up_to,
    verify_basis,
)
from ldaapp.parser import parse_coefficient, parse_expression, parse_term
from ldaapp.reduction import VanishingPattern, apply_patterns, reduce_to_masters
from ldaapp.ring import DiffPoly, DiffTerm, Ranking
from ldaapp.system import load_system

COEFFICIENT = ('-(d-2-2*k-2*n)*(d-4-2*k-2*n)*(d-2-k-n)*(d-3-k-n)*(d-n-2*k)'
               '/(q2^3*(k+1)*(d-2*k-4)*k*(d-2*k-2)*n)')


@pytest.fixture
def fibonacci(systems_dir):
    return load_system(systems_dir / 'fibonacci.json')


def y(*exps):
    return DiffTerm(0, tuple(exps))


def test_multiindices():
    assert multiindices(2, 1) == [(0, 0), (0, 1), (1, 0)]
    assert len(multiindices(3, 2)) == 10


def test_prolongation_matrix_shape(fibonacci):
    matrix = build_prolongation_matrix(fibonacci.equations, fibonacci.ranking, 4)
    # y(n) .. y(n+6) plus the constant column
    assert matrix.shape == (5, 8)
    assert matrix.columns[0] == y(6)


def test_fibonacci_normal_form(fibonacci):
    nf = oracle_normal_form(DiffPoly.single(fibonacci.table, y(4)),
                            list(fibonacci.equations), fibonacci.ranking, degree=4)
    assert nf == parse_expression('3*y(n+1) + 2*y(n)', fibonacci.table, ['y'])


def test_default_degree_bound(fibonacci):
    query = DiffPoly.single(fibonacci.table, y(5))
    nf = oracle_normal_form(query, list(fibonacci.equations), fibonacci.ranking)
    assert nf == parse_expression('5*y(n+1) + 3*y(n)', fibonacci.table, ['y'])


def test_membership(fibonacci):
    F, r = list(fibonacci.equations), fibonacci.ranking
    shifted = parse_expression('y(n+5) - y(n+4) - y(n+3)', fibonacci.table, ['y'])
    assert oracle_member(shifted, F, r, degree=3)
    assert not oracle_member(DiffPoly.single(fibonacci.table, y(1)), F, r, degree=3)


def test_query_beyond_reach(fibonacci):
    oracle = Oracle(list(fibonacci.equations), fibonacci.ranking, 1)
    with pytest.raises(DegreeBoundTooSmall):
        oracle.normal_form(DiffPoly.single(fibonacci.table, y(10)))


def test_verify_fibonacci(fibonacci):
    basis = janet_basis(fibonacci.equations, fibonacci.ranking)
    report = verify_basis(list(fibonacci.equations), basis, 4)
    assert report.ok
    assert [name for name, _ in report.checks] == [
        'janet characterization',
        'inputs reduce to zero',
        'basis elements in the span at degree 4',
        'normal forms agree up to degree 2',
    ]


def test_verify_reports_wrong_basis(fibonacci):
    wrong = mark_basis([parse_expression('y(n+2) - y(n+1) - 2*y(n)', fibonacci.table, ['y'])],
                       fibonacci.ranking)
    report = verify_basis(list(fibonacci.equations), wrong, 4)
    assert not report.ok
    failures = dict(report.checks)
    assert failures['inputs reduce to zero'] == [0]
    assert failures['basis elements in the span at degree 4'] == [y(2)]


def test_small_example_agrees(plane):
    F = [parse_expression(text, plane, ['g'])
         for text in ('g(x+1,y) - g(x,y+1)', 'g(x+1,y) - g(x,y)')]
    r = Ranking.orderly(1, 2)
    basis = janet_basis(F, r)
    assert verify_basis(F, basis, 2).ok


def _check_oracle_consistency(rng, make_system):
    table, equations, ranking = make_system(rng, max_vars=2, max_funcs=1, max_eqs=2,
                                            max_degree=2, parametric=False)
    basis = janet_basis(equations, ranking)
    degree = max(f.degree for f in equations) + 1
    oracle = Oracle(equations, ranking, degree)
    for _ in range(3):
        term = DiffTerm(0, rng.choice(multiindices(ranking.nvars, degree)))
        query = DiffPoly.single(table, term)
        reduced = oracle.normal_form(query)
        # the oracle only subtracts consequences of the system
        assert groebner_normal_form(reduced, basis) == groebner_normal_form(query, basis)
    for f in equations:
        assert oracle.member(f)


@pytest.mark.parametrize('seed', range(8))
def test_oracle_subtracts_only_consequences(seed, make_system):
    _check_oracle_consistency(random.Random(seed), make_system)


def _compare_with_groebner(rng, make_system, **kwargs):
    """(agreeing, flagged) query counts; flagged queries must agree at the wider bound."""
    table, equations, ranking = make_system(rng, **kwargs)
    basis = janet_basis(equations, ranking)
    basis_degree = max(e.poly.degree for e in basis)
    oracle = Oracle(equations, ranking, basis_degree + 2)
    wide = None
    pool = terms_up_to(ranking.nfuncs, ranking.nvars, basis_degree)
    agreeing = flagged = 0
    for _ in range(5):
        query = DiffPoly.single(table, rng.choice(pool))
        expected = groebner_normal_form(query, basis)
        try:
            assert oracle.checked_normal_form(query, basis) == expected
            agreeing += 1
        except DegreeBoundTooSmall:
            flagged += 1
            wide = wide or Oracle(equations, ranking, basis_degree + 4)
            assert wide.checked_normal_form(query, basis) == expected
    return agreeing, flagged


def test_checked_normal_form_flags_small_bound():
    table = SymbolTable(('n',))
    F = [parse_expression(text, table, ['y']) for text in ('y(n+2) - y(n)', 'y(n+3) - y(n)')]
    r = Ranking.orderly(1, 1)
    basis = janet_basis(F, r)
    assert basis.leads == [y(1)]
    query = DiffPoly.single(table, y(1))
    # y(n+1) - y(n) needs a shifted copy of the first equation
    with pytest.raises(DegreeBoundTooSmall):
        Oracle(F, r, 0).checked_normal_form(query, basis)
    nf = Oracle(F, r, 1).checked_normal_form(query, basis)
    assert nf == groebner_normal_form(query, basis) == DiffPoly.single(table, y(0))


@pytest.mark.parametrize('seed', range(12))
def test_oracle_agrees_with_groebner(seed, make_system):
    _compare_with_groebner(random.Random(seed), make_system, max_vars=2, max_funcs=2,
                           max_eqs=3, max_degree=2, parametric=False)


@pytest.mark.slow
def test_oracle_agrees_with_groebner_full(make_system):
    agreeing = flagged = 0
    for seed in range(200):
        a, f = _compare_with_groebner(random.Random(2000 + seed), make_system)
        agreeing += a
        flagged += f
    assert flagged * 20 < agreeing + flagged


def test_reduction_is_a_consequence(plane):
    F = [parse_expression('g(x+1,y) - g(x,y+1)', plane, ['g'])]
    r = Ranking.orderly(1, 2)
    basis = janet_basis(F, r)
    patterns = [VanishingPattern(0, {0: 1})]
    target = DiffTerm(0, (2, 1))
    report = reduce_to_masters(target, basis, patterns, enumerate_masters=False)
    assert report.combination == {DiffTerm(0, (0, 3)): plane.one}
    difference = DiffPoly.single(plane, target) - DiffPoly.single(plane, DiffTerm(0, (0, 3)))
    assert oracle_member(difference, F, r, degree=2, patterns=patterns)


@pytest.mark.slow
def test_massless_coefficient_by_linear_algebra(one_loop_massless, massless_basis):
    spec = one_loop_massless
    F, r = list(spec.equations), spec.ranking
    target = DiffPoly.single(spec.table, parse_term('f(k+3,n+2)', spec.table, spec.functions))
    oracle = Oracle(F, r, 5)
    nf = oracle.checked_normal_form(target, massless_basis)
    assert nf == groebner_normal_form(target, massless_basis)

    master = parse_term('f(k+1,n+1)', spec.table, spec.functions)
    coefficient = parse_coefficient(COEFFICIENT, spec.table)
    assert apply_patterns(nf, spec.boundary).terms == {master: coefficient}
    combination = DiffPoly.single(spec.table, master, coefficient)
    assert oracle_member(target - combination, F, r, degree=5, patterns=spec.boundary)
