"""
ldaapp/janet.py - Janet division, involutive completion and normal forms

Contains:
- janet_partition: multiplicative / nonmultiplicative shift operators
- MarkedElement, MarkedBasis, mark_basis
- find_j_divisor, j_normal_form, groebner_normal_form
- janet_basis: the completion algorithm (lowest leading term first)
- check_janet_basis: every nonmultiplicative prolongation reduces to zero
- reduced_groebner_basis
"""

import heapq
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from .config import Config
from .errors import CompletionLimitExceeded, InconsistentSystem, ValidationError
from .ring import DiffPoly, apply_shift, leading_term, make_monic

logger = logging.getLogger(__name__)


def janet_partition(leads, nvars):
    """
    Janet multiplicative variables of each leading term.

    Leading terms of one function are grouped by their degrees in the first
    i-1 variables; theta_i is multiplicative for the terms of maximal degree
    in variable i within their group.

    Args:
        leads (list[DiffTerm]): pairwise distinct leading terms
        nvars (int): number of shift variables

    Returns:
        list[frozenset]: multiplicative variable indices, parallel to leads
    """
    mult = [set() for _ in leads]

    def split(group, i):
        if i == nvars:
            return
        buckets = defaultdict(list)
        for g in group:
            buckets[leads[g].exps[i]].append(g)
        for g in buckets[max(buckets)]:
            mult[g].add(i)
        for bucket in buckets.values():
            split(bucket, i + 1)

    by_func = defaultdict(list)
    for idx, lead in enumerate(leads):
        by_func[lead.func].append(idx)
    for group in by_func.values():
        split(group, 0)
    return [frozenset(m) for m in mult]


@dataclass(frozen=True)
class MarkedElement:
    poly: DiffPoly
    lead: object
    mult: frozenset
    nonmult: frozenset
    serial: int = 0


@dataclass(frozen=True)
class MarkedBasis:
    elements: tuple
    ranking: object
    table: object

    @property
    def polys(self):
        return [e.poly for e in self.elements]

    @property
    def leads(self):
        return [e.lead for e in self.elements]

    @cached_property
    def by_function(self):
        groups = defaultdict(list)
        for element in self.elements:
            groups[element.lead.func].append(element)
        return groups

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def mark_basis(polys, ranking, serials=None):
    """
    Attach Janet markings to a list of monic polynomials.

    Raises:
        ValidationError: a polynomial is not monic or two leading terms coincide
    """
    polys = list(polys)
    if not polys:
        raise ValidationError('basis', 'cannot mark an empty basis')
    leads = []
    for p in polys:
        lead, lc = leading_term(p, ranking)
        if lc != 1:
            raise ValidationError('basis', f"element with leading term {lead} is not monic")
        leads.append(lead)
    if len(set(leads)) != len(leads):
        raise ValidationError('basis', 'leading terms are not pairwise distinct')
    nvars = ranking.nvars
    marks = janet_partition(leads, nvars)
    serials = serials or range(len(polys))
    elements = tuple(
        MarkedElement(p, lead, mult, frozenset(range(nvars)) - mult, serial)
        for p, lead, mult, serial in zip(polys, leads, marks, serials)
    )
    return MarkedBasis(elements, ranking, polys[0].table)


def find_j_divisor(u, basis):
    """
    The Janet divisor of term u: (element, beta) with u = theta^beta o lt(element)
    and beta supported on the element's multiplicative variables, or None.
    """
    for element in basis.by_function.get(u.func, ()):
        beta = element.lead.offset_to(u)
        if all(b >= 0 and (b == 0 or i in element.mult) for i, b in enumerate(beta)):
            return element, beta
    return None


def find_divisor(u, elements):
    """Any element whose leading term divides u (unrestricted Groebner division)."""
    for element in elements:
        if element.lead.divides(u):
            return element, element.lead.offset_to(u)
    return None


def reduce_full(h, ranking, divisor, discard=None):
    """
    Reduce every reducible term of h, always the highest reducible one first.

    Args:
        h (DiffPoly): polynomial to reduce
        ranking (Ranking): term order
        divisor (callable): term -> (element, beta) or None; element.poly monic
        discard (callable, optional): term -> bool; irreducible terms for
            which it is true are erased

    Returns:
        DiffPoly: h with no reducible term left
    """
    table = h.table
    zero = table.zero
    terms = dict(h.terms)
    constant = h.constant

    def entry(t):
        return tuple(-k for k in ranking.key(t)), t

    heap = [entry(t) for t in terms]
    heapq.heapify(heap)
    pending = set(terms)
    while heap:
        _, u = heapq.heappop(heap)
        pending.discard(u)
        c = terms.get(u)
        if c is None:
            continue
        found = divisor(u)
        if found is None:
            if discard and discard(u):
                del terms[u]
            continue
        element, beta = found
        shifted = apply_shift(beta, element.poly)
        del terms[u]
        # every other term of shifted ranks below u
        for t, a in shifted.terms.items():
            if t == u:
                continue
            coeff = terms.get(t, zero) - c * a
            if coeff:
                terms[t] = coeff
                if t not in pending:
                    pending.add(t)
                    heapq.heappush(heap, entry(t))
            else:
                terms.pop(t, None)
        if shifted.constant:
            constant = constant - c * shifted.constant
    return DiffPoly(table, terms, constant)


def j_normal_form(h, basis, discard=None):
    """Janet normal form of h modulo a marked basis of monic elements."""
    return reduce_full(h, basis.ranking, lambda u: find_j_divisor(u, basis), discard)


def groebner_normal_form(h, basis):
    """Normal form of h using unrestricted reductions theta o g, theta in Theta."""
    elements = basis.elements
    return reduce_full(h, basis.ranking, lambda u: find_divisor(u, elements))


def _unit_shift(i, nvars):
    return tuple(1 if k == i else 0 for k in range(nvars))


def janet_basis(F, r, max_iterations=None):
    """
    Minimal normalized Janet basis of the system F under ranking r.

    Args:
        F (list[DiffPoly]): the difference system; zero entries are ignored
        r (Ranking): term order
        max_iterations (int, optional): cap on the number of normal forms taken,
            defaults to Config.MAX_ITERATIONS

    Raises:
        InconsistentSystem: a consequence of F reduces to a nonzero constant
        CompletionLimitExceeded: the iteration cap was hit
    """
    max_iterations = max_iterations or Config.MAX_ITERATIONS
    polys = []
    for f in F:
        if not f.terms:
            if f.constant:
                raise InconsistentSystem(f"equation reduces to the nonzero constant {f.constant}")
            continue
        polys.append(f)
    if not polys:
        raise ValidationError('equations', 'the system has no nonzero equation')
    table = polys[0].table
    nvars = r.nvars
    serials = itertools.count()
    ticket = itertools.count()

    queue = []

    def enqueue(p):
        lead, _ = leading_term(p, r)
        heapq.heappush(queue, (r.key(lead), next(ticket), p))

    for p in polys:
        enqueue(p)
    _, _, first = heapq.heappop(queue)
    basis = [(next(serials), make_monic(first, r))]
    marked = mark_basis([p for _, p in basis], r, [s for s, _ in basis])
    done = set()
    iterations = 0

    while queue:
        h = None
        while queue and not h:
            iterations += 1
            if iterations > max_iterations:
                raise CompletionLimitExceeded(
                    f"no Janet basis after {max_iterations} reductions "
                    f"({len(basis)} elements, {len(queue)} queued)")
            _, _, p = heapq.heappop(queue)
            h = j_normal_form(p, marked)
            if h and h.is_constant:
                raise InconsistentSystem(f"the system implies 0 = {h.constant}")
        if not h:
            break

        h = make_monic(h, r)
        lead, _ = leading_term(h, r)
        kept = []
        for serial, g in basis:
            g_lead, _ = leading_term(g, r)
            if lead.divides(g_lead) and g_lead != lead:
                enqueue(g)
            else:
                kept.append((serial, g))
        basis = kept + [(next(serials), h)]
        marked = mark_basis([p for _, p in basis], r, [s for s, _ in basis])
        logger.debug('inserted element with leading term %s: %d in basis, %d queued',
                     lead, len(basis), len(queue))

        for element in marked:
            for i in sorted(element.nonmult):
                if (element.serial, i) not in done:
                    done.add((element.serial, i))
                    enqueue(apply_shift(_unit_shift(i, nvars), element.poly))

    # reduce tails so the output does not depend on the processing order
    polys = []
    for element in marked:
        tail = DiffPoly(table, {t: c for t, c in element.poly.terms.items() if t != element.lead},
                        element.poly.constant)
        tail = j_normal_form(tail, marked)
        polys.append(DiffPoly(table, {element.lead: table.one, **tail.terms}, tail.constant))
    polys.sort(key=lambda p: r.key(leading_term(p, r)[0]))
    result = mark_basis(polys, r)
    logger.info('Janet basis: %d elements after %d reductions', len(result), iterations)
    return result


def check_janet_basis(basis):
    """True iff every nonmultiplicative prolongation J-reduces to zero."""
    nvars = basis.ranking.nvars
    for element in basis:
        for i in sorted(element.nonmult):
            prolongation = apply_shift(_unit_shift(i, nvars), element.poly)
            if j_normal_form(prolongation, basis):
                logger.debug('prolongation of %s by theta_%d does not reduce to zero',
                             element.lead, i + 1)
                return False
    return True


def reduced_groebner_basis(basis):
    """
    Reduced Groebner basis extracted from a Janet basis.

    Elements whose leading term is a shift of another leading term are
    dropped; the rest are tail-reduced modulo the others.
    """
    kept = [e for e in basis
            if not any(o.lead.divides(e.lead) and o.lead != e.lead for o in basis)]
    table = basis.table
    result = []
    for element in kept:
        others = [o for o in kept if o is not element]
        tail = DiffPoly(table, {t: c for t, c in element.poly.terms.items() if t != element.lead},
                        element.poly.constant)
        tail = reduce_full(tail, basis.ranking, lambda u: find_divisor(u, others))
        result.append(DiffPoly(table, {element.lead: table.one, **tail.terms}, tail.constant))
    return result
