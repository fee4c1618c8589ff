"""
ldaapp/ring.py - Linear difference polynomials over Q(X u C)

A difference term theta^mu o y^j is a function index plus a nonnegative shift
multiindex. A difference polynomial is a finite linear combination of terms
with rational function coefficients plus an inhomogeneous constant a0.

The shift operators act on coefficients too (Ore relation
theta_i * a(x) = a(x + e_i) * theta_i), so shifting a polynomial shifts the
variables inside every coefficient as well.

Contains:
- DiffTerm, DiffPoly, Ranking
- compare_terms, leading_term, apply_shift, linear_combine, make_monic
"""

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import NoLeadingTerm, ValidationError
from .field import ratfun_shift

ORDERLY = 'orderly'
ELIMINATION = 'elimination'


class DiffTerm(NamedTuple):
    func: int
    exps: tuple

    @property
    def degree(self):
        return sum(self.exps)

    def shifted(self, beta):
        return DiffTerm(self.func, tuple(a + b for a, b in zip(self.exps, beta)))

    def divides(self, other):
        """True if other = theta^beta o self for some beta >= 0."""
        return self.func == other.func and all(a <= b for a, b in zip(self.exps, other.exps))

    def offset_to(self, other):
        return tuple(b - a for a, b in zip(self.exps, other.exps))


@dataclass(frozen=True, eq=False)
class DiffPoly:
    """
    sum(coefficient * term) + constant, with no zero coefficients stored.

    Instances are treated as immutable; `terms` must not be modified after
    construction. Use DiffPoly.build to filter zeros from raw input.
    """

    table: object
    terms: dict
    constant: object = None
    _shifts: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.constant is None:
            object.__setattr__(self, 'constant', self.table.zero)

    @classmethod
    def build(cls, table, items, constant=None):
        terms = {}
        for term, coeff in items:
            coeff = terms.get(term, table.zero) + coeff
            if coeff:
                terms[term] = coeff
            else:
                terms.pop(term, None)
        return cls(table, terms, constant if constant is not None else table.zero)

    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def single(cls, table, term, coeff=None):
        return cls(table, {term: table.one if coeff is None else coeff})

    def __eq__(self, other):
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return (self.table == other.table and self.terms == other.terms
                and self.constant == other.constant)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms) or bool(self.constant)

    def __len__(self):
        return len(self.terms)

    def __neg__(self):
        return DiffPoly(self.table, {t: -c for t, c in self.terms.items()}, -self.constant)

    def __add__(self, other):
        return linear_combine(self.table.one, self, self.table.one, other)

    def __sub__(self, other):
        return linear_combine(self.table.one, self, -self.table.one, other)

    def scale(self, c):
        if not c:
            return DiffPoly.zero(self.table)
        if c == 1:
            return self
        return DiffPoly(self.table, {t: c * v for t, v in self.terms.items()}, c * self.constant)

    def coefficient(self, term):
        return self.terms.get(term, self.table.zero)

    @property
    def is_constant(self):
        return not self.terms

    @property
    def functions(self):
        return {t.func for t in self.terms}

    @property
    def degree(self):
        return max((t.degree for t in self.terms), default=0)


class Comparison(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Ranking:
    """
    Total order on difference terms compatible with the shift action.

    function_priority and variable_priority list indices heaviest first.
    Orderly: total degree, then function priority, then exponents
    lexicographically by variable priority. Elimination: function priority
    first, then the orderly comparison.
    """

    kind: str
    function_priority: tuple
    variable_priority: tuple
    _keys: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'function_priority', tuple(self.function_priority))
        object.__setattr__(self, 'variable_priority', tuple(self.variable_priority))
        if self.kind not in (ORDERLY, ELIMINATION):
            raise ValidationError('ranking.type', f"unknown ranking '{self.kind}'")
        for name, order in (('function_order', self.function_priority),
                            ('variable_order', self.variable_priority)):
            if sorted(order) != list(range(len(order))):
                raise ValidationError(f'ranking.{name}', f"{order} is not a permutation")
        weights = {j: len(self.function_priority) - pos
                   for pos, j in enumerate(self.function_priority)}
        object.__setattr__(self, '_weights', weights)

    @classmethod
    def orderly(cls, nfuncs, nvars, function_priority=None, variable_priority=None):
        return cls(ORDERLY,
                   function_priority if function_priority is not None else range(nfuncs),
                   variable_priority if variable_priority is not None else range(nvars))

    @classmethod
    def elimination(cls, nfuncs, nvars, function_priority=None, variable_priority=None):
        return cls(ELIMINATION,
                   function_priority if function_priority is not None else range(nfuncs),
                   variable_priority if variable_priority is not None else range(nvars))

    @property
    def nfuncs(self):
        return len(self.function_priority)

    @property
    def nvars(self):
        return len(self.variable_priority)

    def key(self, term):
        """Sort key: a flat tuple of ints, larger for higher-ranked terms."""
        key = self._keys.get(term)
        if key is None:
            lex = tuple(term.exps[v] for v in self.variable_priority)
            weight = self._weights[term.func]
            if self.kind == ORDERLY:
                key = (term.degree, weight) + lex
            else:
                key = (weight, term.degree) + lex
            self._keys[term] = key
        return key

    def sorted(self, terms, descending=False):
        return sorted(terms, key=self.key, reverse=descending)


def compare_terms(u, v, r):
    """Compare two terms under ranking r."""
    ku, kv = r.key(u), r.key(v)
    if ku == kv:
        return Comparison.EQUAL
    return Comparison.GREATER if ku > kv else Comparison.LESS


def leading_term(p, r):
    """
    The ranking-maximal term of p and its coefficient.

    Raises:
        NoLeadingTerm: p has no terms (zero or constant only)
    """
    if not p.terms:
        raise NoLeadingTerm(f"{p.constant} has no leading term")
    term = max(p.terms, key=r.key)
    return term, p.terms[term]


def apply_shift(beta, p):
    """theta^beta o p: shift every term and every coefficient by beta."""
    beta = tuple(beta)
    if not any(beta):
        return p
    cached = p._shifts.get(beta)
    if cached is not None:
        return cached
    table = p.table
    terms = {t.shifted(beta): ratfun_shift(c, beta, table) for t, c in p.terms.items()}
    shifted = DiffPoly(table, terms, ratfun_shift(p.constant, beta, table))
    p._shifts[beta] = shifted
    return shifted


def linear_combine(c1, p1, c2, p2):
    """c1*p1 + c2*p2 with cancelled terms dropped."""
    table = p1.table
    terms = {}
    if c1:
        terms = {t: c1 * c for t, c in p1.terms.items()}
    if c2:
        for t, c in p2.terms.items():
            coeff = terms.get(t, table.zero) + c2 * c
            if coeff:
                terms[t] = coeff
            else:
                terms.pop(t, None)
    # products of nonzero field elements are nonzero
    constant = c1 * p1.constant + c2 * p2.constant
    return DiffPoly(table, terms, constant)


def make_monic(p, r):
    """Divide p by its leading coefficient."""
    _, lc = leading_term(p, r)
    if lc == 1:
        return p
    return p.scale(1 / lc)
