"""
ldaapp/parser.py - Text syntax for coefficients, equations and boundary patterns

Grammar (precedence climbing, lowest to highest binding):
    sum      := product (('+' | '-') product)*
    product  := unary (('*' | '/') unary)*
    unary    := '-' unary | '+' unary | power
    power    := atom (('^' | '**') unary)?      right associative
    atom     := integer | symbol | function '(' arg (',' arg)* ')' | '(' sum ')'

Every value is a DiffPoly; a scalar is one with no terms. Products need a
scalar on one side, divisors and powers must be scalar, so the result stays
linear in the unknown functions. Function arguments are `x_i + c` with c a
nonnegative integer, the i-th variable in the i-th slot.
"""

import re
from typing import NamedTuple

from .errors import ArityError, NegativeShiftError, ParseError, UnknownSymbolError
from .ring import DiffPoly, DiffTerm

TOKEN_RE = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                      r"|(?P<op>\*\*|[-+*/^(),=]))")

BINDING = {'+': 10, '-': 10, '*': 20, '/': 20, '^': 30, '**': 30}
UNARY = 25


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None or match.lastgroup is None:
            if not text[pos:].strip():
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class ExpressionParser:
    """Pratt parser over a token list for one symbol table and function list."""

    def __init__(self, text, table, functions=(), tokens=None):
        self.text = text
        self.table = table
        self.functions = list(functions)
        self.tokens = tokens if tokens is not None else tokenize(text)
        self.pos = 0

    def error(self, message, token=None, cls=ParseError):
        token = token or self.peek()
        return cls(message, token.pos, self.text)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        if token.kind != 'end':
            self.pos += 1
        return token

    def expect(self, text):
        token = self.advance()
        if token.text != text:
            found = repr(token.text) if token.kind != 'end' else 'end of input'
            raise self.error(f"expected '{text}', found {found}", token)
        return token

    def parse(self):
        value = self.expression()
        if self.peek().kind != 'end':
            raise self.error(f"unexpected {self.peek().text!r}")
        return value

    def expression(self, rbp=0):
        left = self.nud(self.advance())
        while rbp < self.lbp(self.peek()):
            left = self.led(self.advance(), left)
        return left

    @staticmethod
    def lbp(token):
        if token.kind != 'op':
            return 0
        return BINDING.get(token.text, 0)

    def scalar(self, value):
        return DiffPoly(self.table, {}, value)

    def nud(self, token):
        if token.kind == 'number':
            return self.scalar(self.table.number(int(token.text)))
        if token.kind == 'name':
            return self.name(token)
        if token.text == '(':
            value = self.expression()
            self.expect(')')
            return value
        if token.text == '-':
            return -self.expression(UNARY)
        if token.text == '+':
            return self.expression(UNARY)
        if token.kind == 'end':
            raise self.error('unexpected end of input', token)
        raise self.error(f"unexpected {token.text!r}", token)

    def led(self, token, left):
        op = token.text
        if op == '+':
            return left + self.expression(BINDING[op])
        if op == '-':
            return left - self.expression(BINDING[op])
        if op == '*':
            right = self.expression(BINDING[op])
            if left.is_constant:
                return right.scale(left.constant)
            if right.is_constant:
                return left.scale(right.constant)
            raise self.error('product of two unknown functions is not linear', token)
        if op == '/':
            right = self.expression(BINDING[op])
            if not right.is_constant:
                raise self.error('cannot divide by an unknown function', token)
            if not right.constant:
                raise self.error('division by zero', token)
            return left.scale(1 / right.constant)
        # '^' and '**' bind to the right
        right = self.expression(BINDING[op] - 1)
        return self.power(left, right, token)

    def power(self, base, exponent, token):
        if not base.is_constant or not exponent.is_constant:
            raise self.error('only scalars can be raised to a power', token)
        exp = exponent.constant
        if exp.denom != 1 or not exp.numer.is_ground:
            raise self.error('exponent must be an integer', token)
        n = int(exp.numer.const())
        value = base.constant
        if n < 0:
            if not value:
                raise self.error('division by zero', token)
            return self.scalar(1 / value ** -n)
        return self.scalar(value ** n)

    def name(self, token):
        name = token.text
        if name in self.functions:
            if self.peek().text != '(':
                raise self.error(f"function '{name}' needs arguments", self.peek())
            return DiffPoly.single(self.table, self.application(name, token))
        if name in self.table.names:
            return self.scalar(self.table.symbol(name))
        raise self.error(f"unknown symbol '{name}'", token, UnknownSymbolError)

    def application(self, name, token):
        self.expect('(')
        args = []
        while True:
            start = self.peek()
            args.append((start, self.expression()))
            if self.peek().text == ',':
                self.advance()
                continue
            self.expect(')')
            break
        nvars = self.table.nvars
        if len(args) != nvars:
            raise self.error(f"function '{name}' takes {nvars} arguments, got {len(args)}",
                             token, ArityError)
        exps = tuple(self.shift(i, start, arg) for i, (start, arg) in enumerate(args))
        return DiffTerm(self.functions.index(name), exps)

    def shift(self, i, token, arg):
        """The integer c of an argument x_i + c."""
        var = self.table.variables[i]
        if not arg.is_constant:
            raise self.error(f"argument {i + 1} must be {var} plus an integer", token)
        offset = arg.constant - self.table.symbol(var)
        if offset.denom != 1 or not offset.numer.is_ground:
            raise self.error(f"argument {i + 1} must be {var} plus an integer", token)
        c = int(offset.numer.const())
        if c < 0:
            raise self.error(
                f"negative shift {var}{c} in argument {i + 1}; substitute {var} -> {var}+{-c} "
                f"to re-offset the equation", token, NegativeShiftError)
        return c


def parse_expression(text, table, functions=()):
    """Parse one linear expression into a DiffPoly (a scalar has no terms)."""
    return ExpressionParser(text, table, functions).parse()


def parse_coefficient(text, table):
    """Parse a rational function of the declared symbols."""
    return parse_expression(str(text), table).constant


def parse_equation(text, table, functions):
    """
    An equation `lhs = rhs` or an expression meaning `expression = 0`.

    Returns:
        DiffPoly: lhs - rhs
    """
    tokens = tokenize(text)
    splits = [i for i, t in enumerate(tokens) if t.text == '=']
    if len(splits) > 1:
        raise ParseError("more than one '='", tokens[splits[1]].pos, text)
    if not splits:
        return ExpressionParser(text, table, functions, tokens).parse()
    cut = splits[0]
    end = Token('end', '', tokens[cut].pos)
    lhs = ExpressionParser(text, table, functions, tokens[:cut] + [end]).parse()
    rhs = ExpressionParser(text, table, functions, tokens[cut + 1:]).parse()
    return lhs - rhs


def parse_term(text, table, functions):
    """A single unknown such as f(k+3,n+2)."""
    value = parse_expression(text, table, functions)
    if len(value.terms) != 1 or value.constant:
        raise ParseError(f"'{text}' is not a single function term", 0, text)
    (term, coeff), = value.terms.items()
    if coeff != 1:
        raise ParseError(f"'{text}' is not a single function term", 0, text)
    return term


def parse_boundary(text, table, functions):
    """
    A vanishing pattern such as f(k+j,n)=0.

    Arguments that mention an undeclared name are wildcards; the others fix
    the shift in their slot. Returns (function index, {slot: shift}).
    """
    tokens = tokenize(text)
    parser = ExpressionParser(text, table, functions, tokens)
    head = parser.advance()
    if head.kind != 'name' or head.text not in functions:
        raise parser.error('boundary condition must start with a declared function', head)
    parser.expect('(')
    groups, current, depth = [], [], 0
    while True:
        token = parser.advance()
        if token.kind == 'end':
            raise parser.error("expected ')'", token)
        if token.text == '(':
            depth += 1
        elif token.text == ')':
            if depth == 0:
                groups.append(current)
                break
            depth -= 1
        elif token.text == ',' and depth == 0:
            groups.append(current)
            current = []
            continue
        current.append(token)
    parser.expect('=')
    zero = parser.advance()
    if zero.text != '0':
        raise parser.error('boundary conditions have the form f(...)=0', zero)
    if parser.peek().kind != 'end':
        raise parser.error(f"unexpected {parser.peek().text!r}")
    if len(groups) != table.nvars:
        raise ArityError(f"function '{head.text}' takes {table.nvars} arguments, "
                         f"got {len(groups)}", head.pos, text)

    constraints = {}
    for i, group in enumerate(groups):
        if not group:
            raise ParseError(f"argument {i + 1} is empty", head.pos, text)
        if any(t.kind == 'name' and t.text not in table.names for t in group):
            continue
        sub = ExpressionParser(text, table, (), group + [Token('end', '', group[-1].pos)])
        constraints[i] = sub.shift(i, group[0], sub.parse())
    if not constraints:
        raise ParseError('boundary condition fixes no argument', head.pos, text)
    return functions.index(head.text), constraints
