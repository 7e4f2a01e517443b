"""Projection-valued truth values of bounded formulas over quantum sets.

Two semantics are supported. ``REFORMED`` evaluates membership and the
bounded existential with the Sasaki star, so the bounded quantifiers are
De Morgan duals. ``TAKEUTI`` uses plain meets in those two clauses.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import logic
from .formula import (
    And, Equal, Exists, ExistsIn, ForAll, ForAllIn, Formula, FormulaError, Iff,
    Implies, Member, Not, Or, desugar, free_names, is_delta0,
)
from .logic import LogicContext, Projection, join, meet, ortho, sasaki_arrow, sasaki_star
from .universe import HFSet, QSet, check_ordinal


class SemanticsMode(enum.Enum):
    REFORMED = "reformed"
    TAKEUTI = "takeuti"


REFORMED = SemanticsMode.REFORMED
TAKEUTI = SemanticsMode.TAKEUTI


class NotDelta0Error(FormulaError):
    pass


class UnboundNameError(FormulaError):
    pass


_CHECK = re.compile(r"check:(\d+)")
MAX_BUILTIN_CHECK = 8


@dataclass
class Environment:
    """Constants of the object language: named projections and quantum sets."""

    dim: int
    projections: dict[str, Projection] = field(default_factory=dict)
    qsets: dict[str, QSet] = field(default_factory=dict)
    formulas: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.logic = LogicContext.of(self.dim)
        for name, p in self.projections.items():
            if p.dim != self.dim:
                raise logic.DimensionMismatch(f"projection {name!r} has dimension {p.dim}")
        for name, u in self.qsets.items():
            if u.dim != self.dim:
                raise logic.DimensionMismatch(f"quantum set {name!r} has dimension {u.dim}")

    def lookup(self, name: str) -> QSet:
        if name in self.qsets:
            return self.qsets[name]
        m = _CHECK.fullmatch(name)
        if m and int(m.group(1)) <= MAX_BUILTIN_CHECK:
            return check_ordinal(int(m.group(1)), self.dim)
        raise UnboundNameError(f"unknown constant {name!r}")

    def has(self, name: str) -> bool:
        try:
            self.lookup(name)
        except UnboundNameError:
            return False
        return True

    def with_qsets(self, qsets: Mapping[str, QSet]) -> Environment:
        return Environment(self.dim, dict(self.projections), {**self.qsets, **qsets},
                           dict(self.formulas))

    def projection_name(self, p: Projection) -> str | None:
        for name, q in self.projections.items():
            if q is p:
                return name
        return None


class Evaluator:
    """Truth values under one semantics, memoizing the atomic clauses.

    The equality/membership recursion revisits the same node pairs many
    times; caching on interned node identity makes it polynomial.
    """

    def __init__(self, mode: SemanticsMode = REFORMED, *, memo: bool = True,
                 derived: str = "direct", conditional: str = "sasaki"):
        if derived not in ("direct", "desugar"):
            raise ValueError("derived must be 'direct' or 'desugar'")
        if conditional not in logic.CONDITIONALS:
            raise ValueError(f"unknown conditional {conditional!r}")
        self.mode = SemanticsMode(mode)
        self.memo = memo
        self.derived = derived
        self.conditional = conditional
        self._eq: dict[tuple[int, int], Projection] = {}
        self._in: dict[tuple[int, int], Projection] = {}

    def arrow(self, p: Projection, q: Projection) -> Projection:
        if self.conditional == "sasaki":
            return sasaki_arrow(p, q)
        return logic.CONDITIONALS[self.conditional](p, q)

    def _combine(self, p: Projection, q: Projection) -> Projection:
        if self.mode is TAKEUTI:
            return meet(p, q)
        if self.conditional == "sasaki":
            return sasaki_star(p, q)
        return ortho(self.arrow(p, ortho(q)))

    def equal(self, u: QSet, v: QSet) -> Projection:
        """⋀ u(u')→[u'∈v]  ∧  ⋀ v(v')→[v'∈u]."""
        key = (u.id, v.id) if u.id <= v.id else (v.id, u.id)
        if self.memo and key in self._eq:
            return self._eq[key]
        if u.dim != v.dim:
            raise logic.DimensionMismatch("quantum sets from different dimensions")
        acc = logic.one(u.dim)
        for a, b in ((u, v), (v, u)):
            for x, val in a.entries:
                if val.is_zero:
                    continue
                acc = meet(acc, self.arrow(val, self.member(x, b)))
                if acc.is_zero:
                    break
            if acc.is_zero:
                break
        if self.memo:
            self._eq[key] = acc
        return acc

    def member(self, u: QSet, v: QSet) -> Projection:
        """⋁ v(v') * [u = v'] (reformed) or ⋁ v(v') ∧ [u = v'] (Takeuti)."""
        key = (u.id, v.id)
        if self.memo and key in self._in:
            return self._in[key]
        if u.dim != v.dim:
            raise logic.DimensionMismatch("quantum sets from different dimensions")
        acc = logic.zero(u.dim)
        for x, val in v.entries:
            if val.is_zero:
                continue
            acc = join(acc, self._combine(val, self.equal(u, x)))
            if acc.is_one:
                break
        if self.memo:
            self._in[key] = acc
        return acc

    def evaluate(self, f: Formula, env: Environment,
                 bindings: Mapping[str, QSet] | None = None) -> Projection:
        """Truth value of the closed Δ0 formula ``f``.

        Raises :class:`NotDelta0Error` on unbounded quantifiers and
        :class:`UnboundNameError` on names that are neither bound nor constants.
        """
        if not is_delta0(f):
            raise NotDelta0Error("unbounded quantifiers have no finite truth value")
        scope = dict(bindings or {})
        for name in free_names(f):
            if name not in scope and not env.has(name):
                raise UnboundNameError(f"unknown constant {name!r}")
        if self.derived == "desugar":
            f = desugar(f)
        return self._eval(f, env, scope)

    def _term(self, name: str, env: Environment, scope: Mapping[str, QSet]) -> QSet:
        if name in scope:
            return scope[name]
        return env.lookup(name)

    def _eval(self, f: Formula, env: Environment, scope: dict[str, QSet]) -> Projection:
        if isinstance(f, Member):
            return self.member(self._term(f.left, env, scope), self._term(f.right, env, scope))
        if isinstance(f, Equal):
            return self.equal(self._term(f.left, env, scope), self._term(f.right, env, scope))
        if isinstance(f, Not):
            return ortho(self._eval(f.body, env, scope))
        if isinstance(f, And):
            return meet(self._eval(f.left, env, scope), self._eval(f.right, env, scope))
        if isinstance(f, Or):
            return join(self._eval(f.left, env, scope), self._eval(f.right, env, scope))
        if isinstance(f, Implies):
            return self.arrow(self._eval(f.left, env, scope), self._eval(f.right, env, scope))
        if isinstance(f, Iff):
            a, b = self._eval(f.left, env, scope), self._eval(f.right, env, scope)
            return meet(self.arrow(a, b), self.arrow(b, a))
        if isinstance(f, (ForAllIn, ExistsIn)):
            u = self._term(f.bound, env, scope)
            universal = isinstance(f, ForAllIn)
            acc = logic.one(env.dim) if universal else logic.zero(env.dim)
            for x, val in u.entries:
                if val.is_zero:
                    continue
                body = self._eval(f.body, env, {**scope, f.var: x})
                if universal:
                    acc = meet(acc, self.arrow(val, body))
                else:
                    acc = join(acc, self._combine(val, body))
            return acc
        if isinstance(f, (ForAll, Exists)):
            raise NotDelta0Error("unbounded quantifiers have no finite truth value")
        raise TypeError(f"not a formula: {f!r}")


def eval_equal(u: QSet, v: QSet, mode: SemanticsMode = REFORMED) -> Projection:
    return Evaluator(mode).equal(u, v)


def eval_member(u: QSet, v: QSet, mode: SemanticsMode = REFORMED) -> Projection:
    return Evaluator(mode).member(u, v)


def evaluate(f: Formula, env: Environment, mode: SemanticsMode = REFORMED, **kw) -> Projection:
    return Evaluator(mode, **kw).evaluate(f, env)


def classify(p: Projection) -> str:
    if p.is_one:
        return "one"
    if p.is_zero:
        return "zero"
    return "proper"


def describe(p: Projection, env: Environment | None = None, show_span: bool = False) -> str:
    """Human-readable truth value: the classification, optionally the span."""
    parts = [classify(p)]
    if show_span:
        rows = ["(" + ", ".join(str(x) for x in row) + ")" for row in p.basis]
        parts.append("span{" + ", ".join(rows) + "}")
    if env is not None:
        name = env.projection_name(p)
        if name is not None:
            parts.append(f"= {name}")
    return " ".join(parts)


# -- classical two-valued semantics ------------------------------------------------

def eval_classical(f: Formula, bindings: Mapping[str, HFSet],
                   universe: Iterable[HFSet] = ()) -> bool:
    """Tarskian truth over hereditarily finite sets.

    Unbounded quantifiers range over the finite ``universe`` supplied.
    """
    dom = list(universe)

    def term(name: str, scope: Mapping[str, HFSet]) -> HFSet:
        try:
            return scope[name]
        except KeyError:
            raise UnboundNameError(f"unknown constant {name!r}") from None

    def ev(g: Formula, scope: Mapping[str, HFSet]) -> bool:
        if isinstance(g, Member):
            return term(g.left, scope) in term(g.right, scope)
        if isinstance(g, Equal):
            return term(g.left, scope) == term(g.right, scope)
        if isinstance(g, Not):
            return not ev(g.body, scope)
        if isinstance(g, And):
            return ev(g.left, scope) and ev(g.right, scope)
        if isinstance(g, Or):
            return ev(g.left, scope) or ev(g.right, scope)
        if isinstance(g, Implies):
            return (not ev(g.left, scope)) or ev(g.right, scope)
        if isinstance(g, Iff):
            return ev(g.left, scope) == ev(g.right, scope)
        if isinstance(g, ForAllIn):
            return all(ev(g.body, {**scope, g.var: x}) for x in term(g.bound, scope))
        if isinstance(g, ExistsIn):
            return any(ev(g.body, {**scope, g.var: x}) for x in term(g.bound, scope))
        if isinstance(g, ForAll):
            return all(ev(g.body, {**scope, g.var: x}) for x in dom)
        if isinstance(g, Exists):
            return any(ev(g.body, {**scope, g.var: x}) for x in dom)
        raise TypeError(f"not a formula: {g!r}")

    return ev(f, dict(bindings))
