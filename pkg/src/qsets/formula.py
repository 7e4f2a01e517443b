"""Formulas of the language of set theory with quantum-set constants.

Concrete syntax (ASCII)::

    t in t     t = t      !f     f & f     f | f     f -> f     f <-> f
    A x in t . f     E x in t . f     A x . f     E x . f     ( f )

Precedence, tightest first: ``!``, ``&``, ``|``, ``->`` (right
associative), ``<->``. A quantifier body extends as far right as possible.
Terms are identifiers: bound variables or constant names, including the
built-in ``check:N`` (the N-th von Neumann ordinal).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class FormulaError(ValueError):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


@dataclass(frozen=True)
class Member:
    left: str
    right: str


@dataclass(frozen=True)
class Equal:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAllIn:
    var: str
    bound: str
    body: Formula


@dataclass(frozen=True)
class ExistsIn:
    var: str
    bound: str
    body: Formula


@dataclass(frozen=True)
class ForAll:
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists:
    var: str
    body: Formula


Formula = Union[Member, Equal, Not, And, Or, Implies, Iff, ForAllIn, ExistsIn, ForAll, Exists]
Atom = (Member, Equal)
Binary = (And, Or, Implies, Iff)
DERIVED = (Or, Iff, ExistsIn, Exists)


# -- lexer -----------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|->|[!&|=().])
  | (?P<name>check:\d+|[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

KEYWORDS = {"A", "E", "in"}


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            yield kind, m.group(), pos
        pos = m.end()
    yield "end", "", len(text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = list(_tokens(text))
        self.i = 0

    @property
    def tok(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def error(self, message: str) -> FormulaSyntaxError:
        return FormulaSyntaxError(message, self.tok[2], self.text)

    def accept(self, value: str) -> bool:
        if self.tok[1] == value and self.tok[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            found = self.tok[1] or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")

    def name(self) -> str:
        kind, value, _ = self.tok
        if kind != "name" or value in KEYWORDS:
            raise self.error(f"expected an identifier, found {value or 'end of input'!r}")
        self.i += 1
        return value

    def parse(self) -> Formula:
        f = self.iff()
        if self.tok[0] != "end":
            raise self.error(f"unexpected {self.tok[1]!r}")
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.accept("<->"):
            f = Iff(f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.accept("->"):
            return Implies(f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.unary())
        if self.accept("("):
            f = self.iff()
            self.expect(")")
            return f
        kind, value, _ = self.tok
        if kind == "name" and value in ("A", "E"):
            self.i += 1
            var = self.name()
            bound = None
            if self.accept("in"):
                bound = self.name()
            self.expect(".")
            body = self.iff()
            if value == "A":
                return ForAll(var, body) if bound is None else ForAllIn(var, bound, body)
            return Exists(var, body) if bound is None else ExistsIn(var, bound, body)
        left = self.name()
        if self.accept("in"):
            return Member(left, self.name())
        if self.accept("="):
            return Equal(left, self.name())
        raise self.error("expected 'in' or '='")


def parse(text: str) -> Formula:
    return _Parser(text).parse()


# -- printing ----------------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYM = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def to_text(f: Formula) -> str:
    """Canonical concrete syntax; ``parse(to_text(f)) == f``."""
    return _fmt(f, 0)


def _fmt(f: Formula, ctx: int) -> str:
    if isinstance(f, Member):
        return f"{f.left} in {f.right}"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, Not):
        inner = _fmt(f.body, 0)
        return "!" + inner if isinstance(f.body, Not) else f"!({inner})"
    if isinstance(f, Binary):
        p = _PREC[type(f)]
        if isinstance(f, Implies):
            lp, rp = p + 1, p
        else:
            lp, rp = p, p + 1
        s = f"{_fmt(f.left, lp)} {_SYM[type(f)]} {_fmt(f.right, rp)}"
        return f"({s})" if ctx > p else s
    if isinstance(f, (ForAllIn, ExistsIn)):
        q = "A" if isinstance(f, ForAllIn) else "E"
        s = f"{q} {f.var} in {f.bound} . {_fmt(f.body, 0)}"
        return f"({s})" if ctx > 0 else s
    if isinstance(f, (ForAll, Exists)):
        q = "A" if isinstance(f, ForAll) else "E"
        s = f"{q} {f.var} . {_fmt(f.body, 0)}"
        return f"({s})" if ctx > 0 else s
    raise TypeError(f"not a formula: {f!r}")


# -- structure -------------------------------------------------------------------

def desugar(f: Formula) -> Formula:
    """Rewrite derived connectives into the primitive core ¬, ∧, →, ∀∈, ∀."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.body))
    if isinstance(f, And):
        return And(desugar(f.left), desugar(f.right))
    if isinstance(f, Implies):
        return Implies(desugar(f.left), desugar(f.right))
    if isinstance(f, Or):
        return Not(And(Not(desugar(f.left)), Not(desugar(f.right))))
    if isinstance(f, Iff):
        a, b = desugar(f.left), desugar(f.right)
        return And(Implies(a, b), Implies(b, a))
    if isinstance(f, ForAllIn):
        return ForAllIn(f.var, f.bound, desugar(f.body))
    if isinstance(f, ExistsIn):
        return Not(ForAllIn(f.var, f.bound, Not(desugar(f.body))))
    if isinstance(f, ForAll):
        return ForAll(f.var, desugar(f.body))
    if isinstance(f, Exists):
        return Not(ForAll(f.var, Not(desugar(f.body))))
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (ForAllIn, ExistsIn, ForAll, Exists)):
        yield from subformulas(f.body)


def is_primitive(f: Formula) -> bool:
    return not any(isinstance(g, DERIVED) for g in subformulas(f))


def is_delta0(f: Formula) -> bool:
    return not any(isinstance(g, (ForAll, Exists)) for g in subformulas(f))


def free_names(f: Formula, bound: frozenset[str] = frozenset()) -> set[str]:
    """Names occurring free: the constants the formula needs from its environment."""
    if isinstance(f, Atom):
        return {n for n in (f.left, f.right) if n not in bound}
    if isinstance(f, Not):
        return free_names(f.body, bound)
    if isinstance(f, Binary):
        return free_names(f.left, bound) | free_names(f.right, bound)
    if isinstance(f, (ForAllIn, ExistsIn)):
        outer = set() if f.bound in bound else {f.bound}
        return outer | free_names(f.body, bound | {f.var})
    if isinstance(f, (ForAll, Exists)):
        return free_names(f.body, bound | {f.var})
    raise TypeError(f"not a formula: {f!r}")
