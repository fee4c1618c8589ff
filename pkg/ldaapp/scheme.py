"""
ldaapp/scheme.py - Finite difference schemes from conservation-law PDEs

A PDE in conservation form dV/dx + dW/dy = 0 is integrated over the boundary
of a grid-aligned rectangle (s1 cells by s2 cells); Green's theorem makes the
contour integral vanish. Each derivative of u appearing in V or W becomes its
own grid function, tied back to u by an exact integral relation along one
grid line. Replacing every integral by a quadrature rule gives a linear
difference system; eliminating the derivative functions with an elimination
ranking leaves the scheme for u alone.

Contains:
- ConservationPDE, GridSpec, ContourSpec, QuadraturePlan
- build_integral_relations, discretize
- generate_scheme, derive_scheme
"""

import logging
from dataclasses import dataclass
from itertools import chain

from sympy import QQ

from .errors import ParityError, ValidationError
from .field import ratfun_shift
from .janet import janet_basis, reduced_groebner_basis
from .ring import ELIMINATION, DiffPoly, DiffTerm, Ranking, leading_term

logger = logging.getLogger(__name__)

MIDPOINT = 'midpoint'
TRAPEZOID = 'trapezoid'
RULES = (MIDPOINT, TRAPEZOID)

X, Y = 0, 1


@dataclass(frozen=True)
class ConservationPDE:
    """
    V and W map derivative orders (a, b), meaning d^a/dx^a d^b/dy^b u, to
    rational function coefficients over the grid table.
    """

    V: dict
    W: dict
    table: object

    @property
    def derivatives(self):
        return {key for key, c in chain(self.V.items(), self.W.items()) if c}


@dataclass(frozen=True)
class GridSpec:
    steps: tuple
    indices: tuple = ('j', 'k')
    coordinates: tuple = ('x', 'y')
    dependent: str = 'u'

    def function_name(self, key):
        a, b = key
        return self.dependent + self.coordinates[X] * a + self.coordinates[Y] * b

    def parse_name(self, name):
        """Inverse of function_name: 'uxx' -> (2, 0)."""
        if not name.startswith(self.dependent):
            raise ValidationError('V/W', f"'{name}' is not a derivative of {self.dependent}")
        suffix = name[len(self.dependent):]
        a = suffix.count(self.coordinates[X])
        b = suffix.count(self.coordinates[Y])
        if a + b != len(suffix):
            raise ValidationError('V/W', f"'{name}' differentiates along an unknown coordinate")
        return a, b


@dataclass(frozen=True)
class ContourSpec:
    extents: tuple = (2, 2)

    def __post_init__(self):
        if len(self.extents) != 2 or any(int(s) < 1 for s in self.extents):
            raise ValidationError('contour', 'two positive cell counts are required')
        object.__setattr__(self, 'extents', tuple(int(s) for s in self.extents))


@dataclass(frozen=True)
class QuadraturePlan:
    """Rules for the x-edges and y-edges of the contour and for the relations."""

    contour_x: str = MIDPOINT
    contour_y: str = MIDPOINT
    relation: str = MIDPOINT

    def __post_init__(self):
        for name in ('contour_x', 'contour_y', 'relation'):
            if getattr(self, name) not in RULES:
                raise ValidationError(f'quadrature.{name}',
                                      f"unknown rule '{getattr(self, name)}'")


@dataclass(frozen=True)
class IntegralRelation:
    """The integral of `integrand` along `direction` over `span` cells equals
    the increment of `antiderivative`."""

    integrand: tuple
    direction: int
    antiderivative: tuple
    span: int


def derivative_keys(pde):
    """Every grid function needed: the derivatives in V and W, the lower ones
    the relations pass through and u itself, highest order first."""
    needed = set()
    pending = list(pde.derivatives)
    while pending:
        key = pending.pop()
        if key in needed:
            continue
        needed.add(key)
        if key != (0, 0):
            pending.append(_antiderivative(key)[1])
    needed.add((0, 0))
    return sorted(needed, key=lambda k: (sum(k), k), reverse=True)


def _antiderivative(key):
    a, b = key
    if b > 0:
        return Y, (a, b - 1)
    return X, (a - 1, 0)


def build_integral_relations(pde, contour, plan=None):
    """
    One relation per derivative function, lowering the y-order first.

    A trapezoid relation spans one cell; a midpoint relation spans the
    contour along its direction, which must then be even.
    """
    plan = plan or QuadraturePlan()
    relations = []
    for key in derivative_keys(pde):
        if key == (0, 0):
            continue
        direction, lower = _antiderivative(key)
        span = 1 if plan.relation == TRAPEZOID else contour.extents[direction]
        if plan.relation == MIDPOINT and span % 2:
            raise ParityError(f"midpoint relation along a contour side of {span} cells")
        relations.append(IntegralRelation(key, direction, lower, span))
    return relations


def _weights(rule, span, table):
    if rule == MIDPOINT:
        if span % 2:
            raise ParityError(f"midpoint rule needs an even number of cells, got {span}")
        return [(span // 2, table.number(span))]
    half = table.number(QQ(1, 2))
    return [(0, half)] + [(i, table.one) for i in range(1, span)] + [(span, half)]


def discretize(pde, grid, contour, plan):
    """
    The contour equation followed by the integral relations.

    Functions are numbered as derivative_keys(pde) orders them.

    Raises:
        ParityError: a midpoint rule was asked to cover an odd number of cells
    """
    table = pde.table
    for step in grid.steps:
        if not table.is_parameter(step):
            raise ValidationError('steps', f"step '{step}' is not a declared parameter")
    if not pde.derivatives:
        return []
    keys = derivative_keys(pde)
    index = {key: i for i, key in enumerate(keys)}
    steps = [table.symbol(s) for s in grid.steps]
    s1, s2 = contour.extents

    def edge(integrand, direction, fixed, span, rule, sign):
        step = steps[direction]
        for offset, weight in _weights(rule, span, table):
            point = (offset, fixed) if direction == X else (fixed, offset)
            for key, coeff in integrand.items():
                if coeff:
                    yield (DiffTerm(index[key], point),
                           sign * weight * step * ratfun_shift(coeff, point, table))

    contour_items = chain(
        edge(pde.W, X, s2, s1, plan.contour_x, 1),
        edge(pde.W, X, 0, s1, plan.contour_x, -1),
        edge(pde.V, Y, s1, s2, plan.contour_y, 1),
        edge(pde.V, Y, 0, s2, plan.contour_y, -1),
    )
    equations = [DiffPoly.build(table, contour_items)]

    one = table.one
    for relation in build_integral_relations(pde, contour, plan):
        end = (relation.span, 0) if relation.direction == X else (0, relation.span)
        lower = index[relation.antiderivative]
        items = chain(
            edge({relation.integrand: one}, relation.direction, 0, relation.span, plan.relation, 1),
            [(DiffTerm(lower, end), -one), (DiffTerm(lower, (0, 0)), one)],
        )
        equations.append(DiffPoly.build(table, items))
    logger.debug('discretized into %d equations over %d grid functions', len(equations), len(keys))
    return equations


def generate_scheme(system, keep, eliminate, ranking, max_iterations=None):
    """
    Elements of the reduced Groebner basis that involve only function `keep`.

    Args:
        system (list[DiffPoly]): discretized equations
        keep (int): the function the scheme is for
        eliminate (list[int]): functions to remove; must outrank `keep`
        ranking (Ranking): an elimination ranking
    """
    if ranking.kind != ELIMINATION:
        raise ValidationError('ranking.type', 'scheme generation needs an elimination ranking')
    heavier = ranking.function_priority[:ranking.function_priority.index(keep)]
    stray = [j for j in eliminate if j not in heavier]
    if stray:
        raise ValidationError('ranking.function_order',
                              f"functions {stray} do not outrank function {keep}")
    basis = janet_basis(system, ranking, max_iterations)
    scheme = [p for p in reduced_groebner_basis(basis) if p.terms and p.functions == {keep}]
    scheme.sort(key=lambda p: ranking.key(leading_term(p, ranking)[0]))
    logger.info('scheme: %d equations for function %d', len(scheme), keep)
    return scheme


@dataclass(frozen=True)
class SchemeResult:
    functions: tuple
    system: tuple
    scheme: tuple
    ranking: object


def derive_scheme(pde, grid, contour, plan, max_iterations=None):
    """Discretize and eliminate in one step, producing the scheme for u."""
    keys = derivative_keys(pde)
    system = discretize(pde, grid, contour, plan)
    functions = tuple(grid.function_name(key) for key in keys)
    ranking = Ranking.elimination(len(keys), pde.table.nvars)
    keep = keys.index((0, 0))
    if not system:
        return SchemeResult(functions, (), (), ranking)
    eliminate = [i for i in range(len(keys)) if i != keep]
    scheme = generate_scheme(system, keep, eliminate, ranking, max_iterations)
    return SchemeResult(functions, tuple(system), tuple(scheme), ranking)
