"""
ldaapp/reduction.py - Reduction of integral families to master integrals

Boundary conditions such as "the integral vanishes when its second index is
not positive" are vanishing patterns: every term of a function whose
constrained shift components equal fixed values is zero. Master integrals
are the standard terms of a Janet basis (not a shift of any leading term)
that survive the patterns; every other term reduces to a combination of them.

Contains:
- VanishingPattern, apply_patterns
- residue_class_basis: enumerate master integrals
- ReductionReport, reduce_to_masters
"""

import logging
from dataclasses import dataclass, field
from itertools import product

from .errors import InfiniteResidueBasis, ValidationError
from .field import factor_output
from .janet import j_normal_form
from .ring import DiffPoly, DiffTerm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VanishingPattern:
    """Terms of `func` vanish when exps[position] == value for every constraint."""

    func: int
    constraints: tuple

    def __post_init__(self):
        constraints = self.constraints
        if isinstance(constraints, dict):
            constraints = constraints.items()
        constraints = tuple(sorted((int(i), int(v)) for i, v in constraints))
        if not constraints:
            raise ValidationError('boundary', 'a vanishing pattern needs at least one fixed shift')
        if any(v < 0 for _, v in constraints):
            raise ValidationError('boundary', 'fixed shift values must be nonnegative')
        object.__setattr__(self, 'constraints', constraints)

    def matches(self, term):
        return term.func == self.func and all(term.exps[i] == v for i, v in self.constraints)


def vanishes(term, patterns):
    return any(p.matches(term) for p in patterns)


def apply_patterns(p, patterns):
    """Erase every term matched by some pattern."""
    if not patterns:
        return p
    terms = {t: c for t, c in p.terms.items() if not vanishes(t, patterns)}
    return DiffPoly(p.table, terms, p.constant)


def residue_class_basis(basis, patterns=()):
    """
    Standard terms of a Janet basis that no pattern erases, ascending by rank.

    The search box for each function reaches one past the largest leading
    exponent or pattern value in every coordinate. A surviving term on the
    outer face has a whole ray of survivors behind it, so the set is infinite.

    Raises:
        InfiniteResidueBasis: infinitely many terms survive
    """
    ranking = basis.ranking
    nvars = ranking.nvars
    result = []
    for func in range(ranking.nfuncs):
        leads = [e.lead for e in basis.by_function.get(func, ())]
        bounds = [0] * nvars
        for lead in leads:
            bounds = [max(b, e) for b, e in zip(bounds, lead.exps)]
        for pattern in patterns:
            if pattern.func == func:
                for i, v in pattern.constraints:
                    bounds[i] = max(bounds[i], v)
        bounds = [b + 1 for b in bounds]
        for exps in product(*(range(b + 1) for b in bounds)):
            term = DiffTerm(func, exps)
            if any(lead.divides(term) for lead in leads) or vanishes(term, patterns):
                continue
            edge = [i for i, (e, b) in enumerate(zip(exps, bounds)) if e == b]
            if edge:
                raise InfiniteResidueBasis(
                    f"standard terms of function {func} are unbounded along theta_{edge[0] + 1}")
            result.append(term)
    return ranking.sorted(result)


@dataclass(frozen=True)
class ReductionReport:
    target: DiffTerm
    combination: dict
    masters: tuple
    constant: object = None
    factored: dict = field(default=None)

    def coefficient(self, master):
        return self.combination.get(master)


def reduce_to_masters(u, basis, patterns=(), factor=False, enumerate_masters=True):
    """
    Express the term u through master integrals.

    Args:
        u (DiffTerm): the integral to reduce
        basis (MarkedBasis): Janet basis of the recurrence system
        patterns (list[VanishingPattern]): boundary conditions; they erase
            terms of the normal form, never a term that still reduces
        factor (bool): also return factored coefficients
        enumerate_masters (bool): list all master integrals in the report;
            otherwise only those that occur

    Raises:
        InfiniteResidueBasis: only when enumerate_masters is set
    """
    table = basis.table
    if u.func >= basis.ranking.nfuncs or len(u.exps) != basis.ranking.nvars:
        raise ValidationError('target', f"{u} does not fit the system")
    if vanishes(u, patterns):
        normal_form = DiffPoly.zero(table)
    else:
        normal_form = j_normal_form(DiffPoly.single(table, u), basis,
                                    discard=lambda t: vanishes(t, patterns))
    combination = dict(sorted(normal_form.terms.items(), key=lambda item: basis.ranking.key(item[0])))
    if enumerate_masters:
        masters = tuple(residue_class_basis(basis, patterns))
    else:
        masters = tuple(combination)
    factored = None
    if factor:
        factored = {t: factor_output(c, table) for t, c in combination.items()}
    logger.debug('reduced %s to %d master terms', u, len(combination))
    return ReductionReport(u, combination, masters, normal_form.constant, factored)
