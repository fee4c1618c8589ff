"""
ldaapp/system.py - Loading difference systems and PDEs from JSON documents

System document:
    {
      "variables": ["k", "n"],
      "parameters": ["d", "q2", "m2"],
      "functions": ["f"],
      "equations": ["(d-k-2*n)*f(k+1,n+1) - k*f(k+2,n) + ...", ...],
      "ranking": {"type": "orderly", "function_order": ["f"], "variable_order": ["k", "n"]},
      "boundary": ["f(k+j,n)=0"],
      "specialize": {"m2": "0"}
    }

PDE document:
    {
      "indices": ["j", "k"], "coordinates": ["x", "t"], "steps": ["h", "tau"],
      "parameters": ["a"], "V": {"ux": "a"}, "W": {"u": "1"},
      "contour": [2, 1],
      "quadrature": {"x": "midpoint", "y": "trapezoid", "relation": "trapezoid"}
    }

Every schema violation raises ValidationError naming the offending field.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError
from .field import SymbolTable, ratfun_specialize
from .parser import parse_boundary, parse_coefficient, parse_equation
from .reduction import VanishingPattern
from .ring import DiffPoly, Ranking
from .scheme import ConservationPDE, ContourSpec, GridSpec, QuadraturePlan

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemSpec:
    table: SymbolTable
    functions: tuple
    equations: tuple
    ranking: Ranking
    boundary: tuple = ()
    specializations: dict = field(default_factory=dict)
    source: str = ''


@dataclass(frozen=True)
class PdeSpec:
    pde: ConservationPDE
    grid: GridSpec
    contour: ContourSpec
    plan: QuadraturePlan
    source: str = ''


def read_document(path):
    path = Path(path)
    try:
        with path.open(encoding='utf-8') as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ValidationError('', f"{path.name} is not valid JSON: {e}") from None


def load_system(path):
    """Read and validate a system file."""
    spec = system_from_dict(read_document(path), source=str(path))
    logger.debug('loaded %s: %d equations in %d functions',
                 path, len(spec.equations), len(spec.functions))
    return spec


def load_pde(path):
    """Read and validate a PDE file."""
    return pde_from_dict(read_document(path), source=str(path))


def _names(doc, key, required=True):
    value = doc.get(key, [] if not required else None)
    if value is None:
        raise ValidationError(key, 'missing')
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValidationError(key, 'must be a list of names')
    if required and not value:
        raise ValidationError(key, 'must not be empty')
    if len(set(value)) != len(value):
        raise ValidationError(key, 'names must be distinct')
    return value


def _order(doc, key, names, default):
    value = doc.get(key)
    if value is None:
        return default
    if not isinstance(value, list) or sorted(value) != sorted(names):
        raise ValidationError(f'ranking.{key}', f"must list each of {names} exactly once")
    return [names.index(v) for v in value]


def _ranking(doc, functions, variables):
    doc = doc if doc is not None else {}
    if not isinstance(doc, dict):
        raise ValidationError('ranking', 'must be an object')
    kind = doc.get('type', 'orderly')
    function_order = _order(doc, 'function_order', functions, range(len(functions)))
    variable_order = _order(doc, 'variable_order', variables, range(len(variables)))
    return Ranking(kind, function_order, variable_order)


def system_from_dict(doc, source=''):
    if not isinstance(doc, dict):
        raise ValidationError('', 'a system document must be a JSON object')
    variables = _names(doc, 'variables')
    parameters = _names(doc, 'parameters', required=False)
    functions = _names(doc, 'functions')
    table = SymbolTable(variables, parameters)
    clash = set(functions) & set(table.names)
    if clash:
        raise ValidationError('functions', f"{sorted(clash)} are also declared as symbols")

    specializations = {}
    raw = doc.get('specialize', {})
    if not isinstance(raw, dict):
        raise ValidationError('specialize', 'must map parameter names to values')
    for name, value in raw.items():
        if not table.is_parameter(name):
            raise ValidationError(f'specialize.{name}', 'not a declared parameter')
        specializations[name] = parse_coefficient(value, table)

    equations = doc.get('equations')
    if not isinstance(equations, list) or not all(isinstance(e, str) for e in equations):
        raise ValidationError('equations', 'must be a list of strings')
    if not equations:
        raise ValidationError('equations', 'the system has no equations')
    parsed = []
    for text in equations:
        p = parse_equation(text, table, functions)
        if specializations:
            p = DiffPoly.build(table,
                               ((t, ratfun_specialize(c, specializations, table))
                                for t, c in p.terms.items()),
                               ratfun_specialize(p.constant, specializations, table))
        parsed.append(p)

    boundary = doc.get('boundary', [])
    if not isinstance(boundary, list):
        raise ValidationError('boundary', 'must be a list of patterns')
    patterns = tuple(VanishingPattern(*parse_boundary(text, table, functions)) for text in boundary)

    return SystemSpec(
        table=table,
        functions=tuple(functions),
        equations=tuple(parsed),
        ranking=_ranking(doc.get('ranking'), functions, variables),
        boundary=patterns,
        specializations=specializations,
        source=source,
    )


def _pair(doc, key, default):
    value = doc.get(key, default)
    if not isinstance(value, list) or len(value) != 2:
        raise ValidationError(key, 'must list exactly two entries')
    return value


def pde_from_dict(doc, source=''):
    if not isinstance(doc, dict):
        raise ValidationError('', 'a PDE document must be a JSON object')
    indices = _pair(doc, 'indices', ['j', 'k'])
    coordinates = _pair(doc, 'coordinates', ['x', 'y'])
    steps = _pair(doc, 'steps', None)
    if any(len(c) != 1 for c in coordinates) or len(set(coordinates)) != 2:
        raise ValidationError('coordinates', 'coordinates are two distinct letters')
    parameters = _names(doc, 'parameters', required=False)
    table = SymbolTable(indices, list(steps) + parameters)
    grid = GridSpec(tuple(steps), tuple(indices), tuple(coordinates), doc.get('dependent', 'u'))

    fluxes = {}
    for key in ('V', 'W'):
        raw = doc.get(key, {})
        if not isinstance(raw, dict):
            raise ValidationError(key, 'must map derivatives of u to coefficients')
        flux = {}
        for name, text in raw.items():
            derivative = grid.parse_name(name)
            flux[derivative] = flux.get(derivative, table.zero) + parse_coefficient(text, table)
        fluxes[key] = flux

    quadrature = doc.get('quadrature', {})
    if not isinstance(quadrature, dict):
        raise ValidationError('quadrature', 'must be an object')
    plan = QuadraturePlan(quadrature.get('x', 'midpoint'), quadrature.get('y', 'midpoint'),
                          quadrature.get('relation', 'midpoint'))
    contour = _pair(doc, 'contour', [2, 2])
    if not all(isinstance(s, int) and not isinstance(s, bool) for s in contour):
        raise ValidationError('contour', 'cell counts must be integers')
    return PdeSpec(
        pde=ConservationPDE(fluxes['V'], fluxes['W'], table),
        grid=grid,
        contour=ContourSpec(tuple(contour)),
        plan=plan,
        source=source,
    )
