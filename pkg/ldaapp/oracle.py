"""
ldaapp/oracle.py - Brute-force membership and normal forms by linear algebra

Independent of the completion algorithm: all shifts theta^alpha o f with
|alpha| <= D of the input equations become rows of a matrix over Q(X u C),
columns are the terms that occur, ordered by descending rank (the
inhomogeneous constant is a last pseudo-column). Gaussian elimination in that
column order turns the row space into echelon form; reducing a query against
it gives the normal form modulo all consequences of degree bound D.

Meant for cross-checking the Janet engine on small systems.
"""

import logging
from dataclasses import dataclass, field
from itertools import product

from .config import Config
from .errors import DegreeBoundTooSmall
from .field import ratfun_size
from .janet import check_janet_basis, groebner_normal_form, j_normal_form
from .reduction import apply_patterns
from .ring import DiffPoly, DiffTerm, apply_shift

logger = logging.getLogger(__name__)

CONSTANT = None


def multiindices(nvars, degree):
    """All alpha in N^nvars with |alpha| <= degree, lowest degree first."""
    result = [a for a in product(range(degree + 1), repeat=nvars) if sum(a) <= degree]
    result.sort(key=lambda a: (sum(a), a))
    return result


@dataclass
class ProlongationMatrix:
    columns: list
    rows: list
    degree: int

    @property
    def shape(self):
        return len(self.rows), len(self.columns)


def build_prolongation_matrix(F, r, degree):
    """Rows theta^alpha o f for |alpha| <= degree; columns sorted descending by rank."""
    F = [f for f in F if f]
    shifted = [apply_shift(alpha, f) for f in F for alpha in multiindices(r.nvars, degree)]
    terms = set()
    for p in shifted:
        terms.update(p.terms)
    columns = sorted(terms, key=r.key, reverse=True) + [CONSTANT]
    index = {t: i for i, t in enumerate(columns)}
    rows = []
    for p in shifted:
        row = {index[t]: c for t, c in p.terms.items()}
        if p.constant:
            row[index[CONSTANT]] = p.constant
        rows.append(row)
    return ProlongationMatrix(columns, rows, degree)


def _row_size(row, col):
    return ratfun_size(row[col]), len(row)


def echelon_form(matrix):
    """
    Pivot rows keyed by pivot column, each normalized to 1 at its pivot.

    Columns are processed highest rank first; per column the candidate row
    with the smallest pivot entry is chosen to limit coefficient growth.
    """
    remaining = [dict(row) for row in matrix.rows]
    pivots = {}
    for col in range(len(matrix.columns)):
        candidates = [row for row in remaining if col in row]
        if not candidates:
            continue
        chosen = min(candidates, key=lambda row: _row_size(row, col))
        remaining = [row for row in remaining if row is not chosen]
        inverse = 1 / chosen[col]
        pivot = {k: v * inverse for k, v in chosen.items()}
        for row in candidates:
            if row is chosen:
                continue
            factor = row.pop(col)
            for k, v in pivot.items():
                if k == col:
                    continue
                value = row.get(k, 0) - factor * v
                if value:
                    row[k] = value
                else:
                    row.pop(k, None)
        pivots[col] = pivot
    logger.debug('prolongation matrix %dx%d: rank %d', *matrix.shape, len(pivots))
    return pivots


class Oracle:
    """Echelon form of the degree-bounded prolongations of F, reusable across queries."""

    def __init__(self, F, r, degree):
        self.max_degree = max((f.degree for f in F), default=0)
        self.degree = degree
        self.matrix = build_prolongation_matrix(F, r, degree)
        self.pivots = echelon_form(self.matrix)
        self.index = {t: i for i, t in enumerate(self.matrix.columns)}

    def normal_form(self, h):
        if h.degree > self.degree + self.max_degree:
            raise DegreeBoundTooSmall(
                f"query of degree {h.degree} is beyond the reach of degree bound {self.degree}")
        table = h.table
        index = self.index
        outside = {t: c for t, c in h.terms.items() if t not in index}
        vector = {index[t]: c for t, c in h.terms.items() if t in index}
        if h.constant:
            vector[index[CONSTANT]] = h.constant
        for col in sorted(self.pivots):
            factor = vector.pop(col, None)
            if factor is None:
                continue
            for k, v in self.pivots[col].items():
                if k == col:
                    continue
                value = vector.get(k, table.zero) - factor * v
                if value:
                    vector[k] = value
                else:
                    vector.pop(k, None)
        constant = vector.pop(index[CONSTANT], table.zero)
        terms = {self.matrix.columns[k]: v for k, v in vector.items()}
        terms.update(outside)
        return DiffPoly(table, terms, constant)

    def member(self, p):
        return not self.normal_form(p)

    def checked_normal_form(self, h, basis):
        """
        normal_form(h), certified against a Groebner basis of the same system.

        The reduced vector is unique in h + row space, so it equals the
        Groebner normal form exactly when no term of it is divisible by a
        leading term of the basis.

        Raises:
            DegreeBoundTooSmall: a term of the result still reduces
        """
        nf = self.normal_form(h)
        for term in nf.terms:
            if any(element.lead.divides(term) for element in basis):
                raise DegreeBoundTooSmall(
                    f"{term} still reduces at degree bound {self.degree}")
        return nf


def oracle_normal_form(h, F, r, degree=None, patterns=()):
    """
    Normal form of h modulo the degree-bounded consequences of F.

    Args:
        h (DiffPoly): query
        F (list[DiffPoly]): the difference system
        r (Ranking): term order
        degree (int, optional): bound D on |alpha|; defaults to the largest
            degree in F and h plus Config.ORACLE_DEGREE_MARGIN
        patterns (list[VanishingPattern]): boundary conditions erased from
            the finished normal form

    Raises:
        DegreeBoundTooSmall: h has terms no shift within the bound can reach
    """
    if degree is None:
        max_degree = max((f.degree for f in F), default=0)
        degree = max(max_degree, h.degree) + Config.ORACLE_DEGREE_MARGIN
    return apply_patterns(Oracle(F, r, degree).normal_form(h), patterns)


def oracle_member(p, F, r, degree=None, patterns=()):
    """True if p lies in the span of the shifts of F within the bound, up to boundary terms."""
    return not oracle_normal_form(p, F, r, degree, patterns)


@dataclass
class Verification:
    checks: list = field(default_factory=list)

    def record(self, name, failures):
        self.checks.append((name, list(failures)))

    @property
    def ok(self):
        return all(not failures for _, failures in self.checks)


def terms_up_to(nfuncs, nvars, degree):
    return [DiffTerm(j, alpha) for j in range(nfuncs) for alpha in multiindices(nvars, degree)]


def verify_basis(F, basis, degree):
    """
    Cross-check a Janet basis of F against the oracle at degree bound D.

    Checks, each with the list of offending items:
    - every nonmultiplicative prolongation J-reduces to zero
    - every equation of F J-reduces to zero
    - every basis element is a consequence of F within the bound
    - Groebner and oracle normal forms agree on every term of degree
      at most D minus the largest degree in F
    A failure of the last two can also mean D is too small.
    """
    r = basis.ranking
    table = basis.table
    oracle = Oracle(F, r, degree)

    def outside_span(element):
        try:
            return not oracle.member(element.poly)
        except DegreeBoundTooSmall:
            return True

    result = Verification()
    result.record('janet characterization', [] if check_janet_basis(basis) else ['basis'])
    result.record('inputs reduce to zero',
                  [i for i, f in enumerate(F) if j_normal_form(f, basis)])
    result.record(f'basis elements in the span at degree {degree}',
                  [e.lead for e in basis if outside_span(e)])
    reach = max(degree - oracle.max_degree, 0)
    mismatches = []
    for term in terms_up_to(r.nfuncs, r.nvars, reach):
        query = DiffPoly.single(table, term)
        if groebner_normal_form(query, basis) != oracle.normal_form(query):
            mismatches.append(term)
    result.record(f'normal forms agree up to degree {reach}', mismatches)
    logger.info('verification at degree %d: %s', degree, 'ok' if result.ok else 'FAILED')
    return result
