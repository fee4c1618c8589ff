"""
ldaapp/render.py - Text, JSON and LaTeX output

Terms print in input syntax, f(k,n+1); polynomials list their terms from the
highest ranked down with the inhomogeneous constant last. JSON output can be
read back with poly_from_json.
"""

import json
from dataclasses import dataclass

from sympy import latex

from .janet import MarkedBasis
from .parser import parse_coefficient, parse_term
from .reduction import ReductionReport
from .ring import DiffPoly, DiffTerm

FORMATS = ('text', 'json', 'latex')


@dataclass(frozen=True)
class RenderContext:
    table: object
    functions: tuple
    ranking: object

    @classmethod
    def of(cls, spec):
        return cls(spec.table, tuple(spec.functions), spec.ranking)


def term_text(term, ctx):
    args = []
    for var, e in zip(ctx.table.variables, term.exps):
        args.append(var if e == 0 else f"{var}+{e}")
    return f"{ctx.functions[term.func]}({','.join(args)})"


def term_latex(term, ctx):
    args = []
    for var, e in zip(ctx.table.variables, term.exps):
        args.append(var if e == 0 else f"{var} + {e}")
    name = ctx.functions[term.func]
    if len(name) > 1:
        name = rf"\mathrm{{{name}}}"
    return f"{name}({', '.join(args)})"


def _is_monomial(c):
    return c.denom == 1 and len(c.numer) == 1


def _join(parts):
    if not parts:
        return '0'
    text = parts[0]
    for part in parts[1:]:
        text += f" - {part[1:]}" if part.startswith('-') else f" + {part}"
    return text


def _signed(c, name=None):
    sign = ''
    if c.numer.LC < 0:
        sign, c = '-', -c
    if name is None:
        text = str(c) if _is_monomial(c) else f"({c})"
    elif c == 1:
        text = name
    elif _is_monomial(c):
        text = f"{c}*{name}"
    else:
        text = f"({c})*{name}"
    return sign + text


def poly_text(p, ctx, coefficients=None):
    """`coefficients` optionally maps terms to replacement coefficient text."""
    parts = []
    for term in ctx.ranking.sorted(p.terms, descending=True):
        name = term_text(term, ctx)
        if coefficients is not None and term in coefficients:
            parts.append(f"({coefficients[term]})*{name}")
        else:
            parts.append(_signed(p.terms[term], name))
    if p.constant:
        parts.append(_signed(p.constant))
    return _join(parts)


def poly_latex(p, ctx):
    parts = []
    for term in ctx.ranking.sorted(p.terms, descending=True):
        c = p.terms[term]
        name = term_latex(term, ctx)
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(rf"\left({latex(c.as_expr())}\right) {name}")
    if p.constant:
        parts.append(latex(p.constant.as_expr()))
    return _join(parts)


def poly_json(p, ctx):
    return {
        'terms': [{'term': term_text(t, ctx), 'coefficient': str(p.terms[t])}
                  for t in ctx.ranking.sorted(p.terms, descending=True)],
        'constant': str(p.constant),
    }


def poly_from_json(obj, ctx):
    """Rebuild a DiffPoly from poly_json output."""
    items = ((parse_term(entry['term'], ctx.table, ctx.functions),
              parse_coefficient(entry['coefficient'], ctx.table))
             for entry in obj.get('terms', []))
    return DiffPoly.build(ctx.table, items, parse_coefficient(obj.get('constant', '0'), ctx.table))


def _operators(indices, ctx):
    return [ctx.table.variables[i] for i in sorted(indices)]


def to_json_obj(value, ctx):
    if isinstance(value, DiffTerm):
        return term_text(value, ctx)
    if isinstance(value, DiffPoly):
        return poly_json(value, ctx)
    if isinstance(value, MarkedBasis):
        return {
            'ranking': ranking_json(ctx),
            'elements': [dict(poly_json(e.poly, ctx),
                              leading=term_text(e.lead, ctx),
                              multiplicative=_operators(e.mult, ctx),
                              nonmultiplicative=_operators(e.nonmult, ctx))
                         for e in value],
        }
    if isinstance(value, ReductionReport):
        combination = []
        for term, c in value.combination.items():
            entry = {'master': term_text(term, ctx), 'coefficient': str(c)}
            if value.factored is not None:
                entry['factored'] = str(value.factored[term])
            combination.append(entry)
        return {
            'target': term_text(value.target, ctx),
            'combination': combination,
            'constant': str(value.constant),
            'masters': [term_text(t, ctx) for t in value.masters],
        }
    if isinstance(value, (list, tuple)):
        return [to_json_obj(v, ctx) for v in value]
    raise TypeError(f"cannot render {type(value).__name__}")


def ranking_json(ctx):
    r = ctx.ranking
    return {
        'type': r.kind,
        'function_order': [ctx.functions[j] for j in r.function_priority],
        'variable_order': [ctx.table.variables[i] for i in r.variable_priority],
    }


def _report_text(report, ctx, as_latex=False):
    target = term_latex(report.target, ctx) if as_latex else term_text(report.target, ctx)
    normal_form = DiffPoly(ctx.table, report.combination, report.constant)
    if as_latex:
        rhs = poly_latex(normal_form, ctx)
    elif report.factored is not None:
        rhs = poly_text(normal_form, ctx, {t: str(f) for t, f in report.factored.items()})
    else:
        rhs = poly_text(normal_form, ctx)
    masters = ', '.join(term_text(t, ctx) for t in report.masters)
    return f"{target} = {rhs}\nmasters: [{masters}]"


def _basis_text(basis, ctx):
    lines = []
    for element in basis:
        mult = ' '.join(_operators(element.mult, ctx)) or '-'
        lines.append(f"{poly_text(element.poly, ctx)}\n    multiplicative: {mult}")
    return '\n'.join(lines)


def render(value, ctx, fmt='text'):
    """
    Render a polynomial, term, basis, reduction report or a list of these.

    Args:
        value: object to render
        ctx (RenderContext): symbols, function names and ranking
        fmt (str): 'text', 'json' or 'latex'
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format '{fmt}'")
    if fmt == 'json':
        return json.dumps(to_json_obj(value, ctx), indent=2)
    as_latex = fmt == 'latex'
    if isinstance(value, DiffTerm):
        return term_latex(value, ctx) if as_latex else term_text(value, ctx)
    if isinstance(value, DiffPoly):
        return poly_latex(value, ctx) if as_latex else poly_text(value, ctx)
    if isinstance(value, ReductionReport):
        return _report_text(value, ctx, as_latex)
    if isinstance(value, MarkedBasis):
        if as_latex:
            return '\n'.join(poly_latex(e.poly, ctx) + r' = 0 \\' for e in value)
        return _basis_text(value, ctx)
    if isinstance(value, (list, tuple)):
        if all(isinstance(v, DiffTerm) for v in value):
            return '[' + ', '.join(render(v, ctx, fmt) for v in value) + ']'
        return '\n'.join(render(v, ctx, fmt) for v in value)
    raise TypeError(f"cannot render {type(value).__name__}")
