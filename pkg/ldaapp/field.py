"""
ldaapp/field.py - Exact arithmetic in the coefficient field Q(X u C)

Coefficients of difference equations are rational functions of the shiftable
variables X and the inert parameters C with integer coefficients. Both are
generators of one sympy rational function field over ZZ with graded
lexicographic order, so every value has a single canonical (numer, denom)
pair: coprime, zero stored as 0/1, denominator leading coefficient positive.

Contains:
- SymbolTable: the ordered variables and parameters of a computation
- poly_normalize / poly_gcd: canonical integer polynomials
- ratfun_binop / ratfun_shift / ratfun_specialize: field operations
- factor_output / Factorization: factored display of a coefficient
"""

import operator
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce

from sympy import QQ, ZZ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from .errors import DivisionByZero, ValidationError

# Field elements are sympy's own types; the aliases name their role here.
RatFun = FracElement
MultiPoly = PolyElement


@dataclass(frozen=True)
class SymbolTable:
    """Shiftable variables X followed by parameters C, fixed for a computation."""

    variables: tuple
    parameters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        object.__setattr__(self, 'parameters', tuple(self.parameters))
        if not self.variables:
            raise ValidationError('variables', 'at least one variable is required')
        seen = set()
        for name in self.names:
            if not isinstance(name, str) or not name.isidentifier():
                raise ValidationError('symbols', f"'{name}' is not a valid symbol name")
            if name in seen:
                raise ValidationError('symbols', f"symbol '{name}' declared twice")
            seen.add(name)

    @property
    def names(self):
        return self.variables + self.parameters

    @property
    def nvars(self):
        return len(self.variables)

    @cached_property
    def field(self):
        return FracField(self.names, ZZ, grlex)

    @property
    def ring(self):
        return self.field.ring

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    def symbol(self, name):
        """The field generator for a declared variable or parameter."""
        return self.field.gens[self.names.index(name)]

    def number(self, value):
        """Embed an int or a QQ element into the field."""
        value = QQ(value)
        return self.field.ground_new(int(value.numerator)) / int(value.denominator)

    def is_variable(self, name):
        return name in self.variables

    def is_parameter(self, name):
        return name in self.parameters


def poly_normalize(terms, table):
    """
    Merge a raw list of (exponent vector, integer coefficient) pairs.

    Returns:
        (unit, poly): unit is +1 or -1 and poly has a positive leading
        coefficient under grlex, so that unit * poly is the merged input.
        The zero polynomial comes back as (1, 0).
    """
    ring = table.ring
    merged = {}
    for exps, coeff in terms:
        exps = tuple(exps)
        if len(exps) != ring.ngens:
            raise ValueError(f"exponent vector {exps} has arity {len(exps)}, "
                             f"expected {ring.ngens}")
        merged[exps] = merged.get(exps, 0) + coeff
    poly = ring.from_dict(merged)
    if poly and poly.LC < 0:
        return -1, -poly
    return 1, poly


def poly_gcd(p, q):
    """Greatest common divisor with positive leading coefficient; gcd(p, 0) = |p|."""
    g = p.gcd(q)
    if g and g.LC < 0:
        g = -g
    return g


_BINOPS = {
    'add': operator.add,
    'sub': operator.sub,
    'mul': operator.mul,
    'div': operator.truediv,
}


def ratfun_binop(a, b, op):
    """Exact field arithmetic; sympy cancels and sign-normalizes the result."""
    try:
        func = _BINOPS[op]
    except KeyError:
        raise ValueError(f"unknown field operation '{op}'") from None
    if op == 'div' and not b:
        raise DivisionByZero(f"division of {a} by zero")
    return func(a, b)


def ratfun_shift(a, mu, table):
    """
    Substitute x_i -> x_i + mu_i for every variable at once.

    Parameters are never shifted; mu has one entry per variable and may be
    negative (Janet reduction only uses nonnegative offsets).
    """
    mu = tuple(mu)
    if len(mu) != table.nvars:
        raise ValueError(f"shift {mu} has arity {len(mu)}, expected {table.nvars}")
    if not any(mu) or not a:
        return a
    return _shift(a, mu)


@lru_cache(maxsize=1 << 16)
def _shift(a, mu):
    ring = a.field.ring
    subs = [(ring.gens[i], ring.gens[i] + m) for i, m in enumerate(mu) if m]
    # x -> x + c is an automorphism that keeps the grlex leading monomial,
    # so the shifted pair is already coprime and sign-normalized.
    return a.raw_new(a.numer.compose(subs), a.denom.compose(subs))


def ratfun_specialize(a, bindings, table):
    """
    Substitute parameters by field values and re-canonicalize.

    Args:
        a (RatFun): value to specialize
        bindings (dict): parameter name -> RatFun of the same table
        table (SymbolTable): the table a lives in

    Raises:
        DivisionByZero: the denominator vanishes identically under the binding
    """
    if not bindings:
        return a
    field = table.field
    images = list(field.gens)
    for name, value in bindings.items():
        if not table.is_parameter(name):
            raise ValidationError('specialize', f"'{name}' is not a declared parameter")
        images[table.names.index(name)] = value
    numer = _evaluate(a.numer, images, field)
    denom = _evaluate(a.denom, images, field)
    if not denom:
        raise DivisionByZero(f"denominator of {a} vanishes under {_describe(bindings)}")
    return numer / denom


def _evaluate(poly, images, field):
    result = field.zero
    for monom, coeff in poly.iterterms():
        term = field.ground_new(coeff)
        for image, exp in zip(images, monom):
            if exp:
                term *= image ** exp
        result += term
    return result


def _describe(bindings):
    return ', '.join(f"{name}={value}" for name, value in bindings.items())


def ratfun_size(a):
    """Number of stored terms in numerator and denominator."""
    return len(a.numer) + len(a.denom)


@dataclass(frozen=True)
class Factorization:
    """unit * prod(numerator factors) / prod(denominator factors)."""

    unit: object
    numerator: tuple
    denominator: tuple
    table: SymbolTable

    def expand(self):
        field = self.table.field

        def product(factors):
            return reduce(operator.mul,
                          (field.new(poly) ** exp for poly, exp in factors),
                          field.one)

        return self.table.number(self.unit) * product(self.numerator) / product(self.denominator)

    def __str__(self):
        num = _factor_text(self.numerator)
        den = _factor_text(self.denominator)
        unit = self.unit
        sign = '-' if unit < 0 else ''
        unit = abs(unit)
        top, bottom = int(unit.numerator), int(unit.denominator)
        if top != 1:
            num = f"{top}*{num}" if num else str(top)
        if bottom != 1:
            den = f"{bottom}*{den}" if den else str(bottom)
        num = num or '1'
        if not den:
            return f"{sign}{num}"
        if den.isdigit():
            return f"{sign}{num}/{den}"
        return f"{sign}{num}/({den})"


def _factor_text(factors):
    parts = []
    for poly, exp in factors:
        text = str(poly)
        if len(poly) > 1:
            text = f"({text})"
        parts.append(text if exp == 1 else f"{text}**{exp}")
    return '*'.join(parts)


def _sorted_factors(factors):
    return tuple(sorted(((poly, int(exp)) for poly, exp in factors),
                        key=lambda item: (max(map(sum, item[0].itermonoms())), str(item[0]))))


def factor_output(a, table):
    """
    Factor numerator and denominator of a coefficient over the integers.

    The product of the returned factors reproduces `a` exactly.
    """
    if not a:
        return Factorization(QQ(0), (), (), table)
    num_content, num_factors = a.numer.factor_list()
    den_content, den_factors = a.denom.factor_list()
    return Factorization(
        unit=QQ(int(num_content), int(den_content)),
        numerator=_sorted_factors(num_factors),
        denominator=_sorted_factors(den_factors),
        table=table,
    )
