import pytest

from ldaapp.errors import ParseError, ValidationError
from ldaapp.parser import parse_expression
from ldaapp.reduction import VanishingPattern
from ldaapp.system import load_pde, load_system, pde_from_dict, system_from_dict


def minimal(**overrides):
    doc = {
        'variables': ['k', 'n'],
        'parameters': ['d'],
        'functions': ['f'],
        'equations': ['f(k+1,n) - d*f(k,n)'],
    }
    doc.update(overrides)
    return doc


def test_load_one_loop(one_loop):
    assert one_loop.functions == ('f',)
    assert one_loop.table.variables == ('k', 'n')
    assert one_loop.table.parameters == ('d', 'q2', 'm2')
    assert len(one_loop.equations) == 2
    assert one_loop.boundary == (VanishingPattern(0, {1: 0}),)
    assert one_loop.ranking.kind == 'orderly'


def test_specialization_is_applied(one_loop_massless):
    spec = one_loop_massless
    assert set(spec.specializations) == {'m2'}
    expected = parse_expression(
        '(d-k-2*n)*f(k+1,n+1) - k*f(k+2,n) + k*q2*f(k+2,n+1)', spec.table, spec.functions)
    assert spec.equations[0] == expected
    assert len(spec.boundary) == 2


def test_ranking_defaults_and_orders():
    spec = system_from_dict(minimal())
    assert spec.ranking.kind == 'orderly'
    assert spec.ranking.variable_priority == (0, 1)
    spec = system_from_dict(minimal(ranking={'type': 'elimination', 'variable_order': ['n', 'k']}))
    assert spec.ranking.kind == 'elimination'
    assert spec.ranking.variable_priority == (1, 0)


@pytest.mark.parametrize('overrides, path', [
    ({'variables': []}, 'variables'),
    ({'variables': None}, 'variables'),
    ({'functions': ['d']}, 'functions'),
    ({'functions': ['f', 'f']}, 'functions'),
    ({'equations': []}, 'equations'),
    ({'equations': 'f(k,n)'}, 'equations'),
    ({'specialize': {'x': '0'}}, 'specialize.x'),
    ({'specialize': ['d']}, 'specialize'),
    ({'ranking': {'function_order': ['g']}}, 'ranking.function_order'),
    ({'ranking': {'type': 'lex'}}, 'ranking.type'),
    ({'ranking': 'orderly'}, 'ranking'),
    ({'boundary': 'f(k,n)=0'}, 'boundary'),
])
def test_system_validation(overrides, path):
    with pytest.raises(ValidationError) as info:
        system_from_dict(minimal(**overrides))
    assert info.value.path == path


def test_system_must_be_an_object():
    with pytest.raises(ValidationError):
        system_from_dict(['f(k,n)'])


def test_bad_equation_is_a_parse_error():
    with pytest.raises(ParseError):
        system_from_dict(minimal(equations=['f(k+1,n) * f(k,n)']))


def test_invalid_json_file(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"variables": [', encoding='utf-8')
    with pytest.raises(ValidationError):
        load_system(path)


def test_load_heat_pde(heat_pde):
    table = heat_pde.pde.table
    assert table.variables == ('j', 'k')
    assert table.parameters == ('h', 'tau', 'a')
    assert heat_pde.grid.steps == ('h', 'tau')
    assert heat_pde.grid.coordinates == ('x', 't')
    assert heat_pde.contour.extents == (2, 1)
    assert heat_pde.plan.relation == 'trapezoid'
    assert heat_pde.pde.V == {(1, 0): table.symbol('a')}
    assert heat_pde.pde.W == {(0, 0): table.one}


def test_pde_defaults():
    spec = pde_from_dict({'steps': ['h', 'tau'], 'V': {'ux': '1'}})
    assert spec.contour.extents == (2, 2)
    assert spec.plan.contour_x == 'midpoint'
    assert spec.grid.indices == ('j', 'k')
    assert spec.pde.W == {}


@pytest.mark.parametrize('doc, path', [
    ({}, 'steps'),
    ({'steps': ['h']}, 'steps'),
    ({'steps': ['h', 'tau'], 'coordinates': ['x', 'x']}, 'coordinates'),
    ({'steps': ['h', 'tau'], 'contour': [2, 1.5]}, 'contour'),
    ({'steps': ['h', 'tau'], 'contour': [0, 2]}, 'contour'),
    ({'steps': ['h', 'tau'], 'V': {'vx': '1'}}, 'V/W'),
    ({'steps': ['h', 'tau'], 'W': ['u']}, 'W'),
    ({'steps': ['h', 'tau'], 'quadrature': {'x': 'simpson'}}, 'quadrature.contour_x'),
])
def test_pde_validation(doc, path):
    with pytest.raises(ValidationError) as info:
        pde_from_dict(doc)
    assert info.value.path == path


def test_load_pde_file(systems_dir):
    spec = load_pde(systems_dir / 'heat_pde_midpoint.json')
    assert spec.plan.relation == 'midpoint'
