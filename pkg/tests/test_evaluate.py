import random

import pytest
from hypothesis import given, strategies as st

from qsets import logic
from qsets.evaluate import (
    REFORMED, TAKEUTI, Environment, Evaluator, NotDelta0Error, UnboundNameError, classify,
    describe, eval_classical, eval_equal, eval_member, evaluate,
)
from qsets.formula import (
    And, Equal, ForAllIn, Iff, Implies, Member, Not, Or, parse,
)
from qsets.harness import random_formula
from qsets.logic import join, meet, ortho, span
from qsets.universe import check_ordinal, make_qset, ordinal, universe_generate

P = span([[1, 0]], 2)
Q = span([[1, 1]], 2)
Z = check_ordinal(0, 2)
U = make_qset([(Z, P)])
V = make_qset([(Z, Q)])
ENV = Environment(2, {"P": P, "Q": Q}, {"u": U, "v": V})


# reference semantics straight from the clauses, no memo, no shortcuts

def ref_arrow(a, b):
    return join(ortho(a), meet(a, b))


def ref_star(a, b):
    return meet(a, join(ortho(a), b))


def ref_eq(u, v, mode):
    acc = logic.one(u.dim)
    for x, a in u.entries:
        acc = meet(acc, ref_arrow(a, ref_in(x, v, mode)))
    for y, b in v.entries:
        acc = meet(acc, ref_arrow(b, ref_in(y, u, mode)))
    return acc


def ref_in(u, v, mode):
    acc = logic.zero(u.dim)
    for y, b in v.entries:
        e = ref_eq(u, y, mode)
        acc = join(acc, meet(b, e) if mode is TAKEUTI else ref_star(b, e))
    return acc


def ref_eval(f, env, scope, mode):
    t = lambda n: scope[n] if n in scope else env.lookup(n)  # noqa: E731
    if isinstance(f, Member):
        return ref_in(t(f.left), t(f.right), mode)
    if isinstance(f, Equal):
        return ref_eq(t(f.left), t(f.right), mode)
    if isinstance(f, Not):
        return ortho(ref_eval(f.body, env, scope, mode))
    if isinstance(f, (And, Or, Implies, Iff)):
        a, b = ref_eval(f.left, env, scope, mode), ref_eval(f.right, env, scope, mode)
        if isinstance(f, And):
            return meet(a, b)
        if isinstance(f, Or):
            return join(a, b)
        if isinstance(f, Implies):
            return ref_arrow(a, b)
        return meet(ref_arrow(a, b), ref_arrow(b, a))
    u = t(f.bound)
    vals = [(a, ref_eval(f.body, env, {**scope, f.var: x}, mode)) for x, a in u.entries]
    if isinstance(f, ForAllIn):
        return logic.meet_all([ref_arrow(a, b) for a, b in vals], env.dim)
    if mode is TAKEUTI:
        return logic.join_all([meet(a, b) for a, b in vals], env.dim)
    return logic.join_all([ref_star(a, b) for a, b in vals], env.dim)


def test_counterexample_values():
    for mode, exists in ((TAKEUTI, logic.zero(2)), (REFORMED, P)):
        assert evaluate(parse("E x in u . !!(x in v)"), ENV, mode) is exists
        assert evaluate(parse("!(A x in u . !(x in v))"), ENV, mode) is P


def test_hand_computed_atoms():
    # [0 in v] = Q * 1 = Q in both modes
    assert eval_member(Z, V) is Q
    assert eval_member(Z, V, TAKEUTI) is Q
    # [u = v] = (P -> Q) & (Q -> P) = P⊥ & Q⊥ = 0
    assert eval_equal(U, V).is_zero
    assert eval_equal(U, U).is_one
    # [u = 0] = P -> [0 in 0] = P -> 0 = P⊥
    assert eval_equal(U, Z) is ortho(P)


def test_check_lookup_and_errors():
    env = Environment(2)
    assert evaluate(parse("check:0 in check:1"), env).is_one
    assert evaluate(parse("check:1 = check:2"), env).is_zero
    with pytest.raises(UnboundNameError):
        evaluate(parse("w in check:1"), env)
    with pytest.raises(UnboundNameError):
        evaluate(parse("check:9 in check:1"), env)
    with pytest.raises(NotDelta0Error):
        evaluate(parse("A x . x in check:1"), env)


def test_dimension_checks():
    with pytest.raises(logic.DimensionMismatch):
        Environment(3, {"P": P})
    with pytest.raises(logic.DimensionMismatch):
        eval_equal(U, check_ordinal(1, 3))


def test_evaluator_options():
    with pytest.raises(ValueError):
        Evaluator(derived="other")
    with pytest.raises(ValueError):
        Evaluator(conditional="other")
    assert Evaluator("takeuti").mode is TAKEUTI


def random_env(seed, style="generic"):
    rng = random.Random(seed)
    dim = rng.randint(2, 3)
    us = universe_generate(seed, dim, 2, 3, count=3, style=style)
    return rng, Environment(dim, {}, {f"c{i}": u for i, u in enumerate(us)})


@given(st.integers(0, 10**6), st.sampled_from([REFORMED, TAKEUTI]))
def test_matches_reference_semantics(seed, mode):
    rng, env = random_env(seed)
    f = random_formula(rng, list(env.qsets), 2)
    assert Evaluator(mode).evaluate(f, env) is ref_eval(f, env, {}, mode)
    assert Evaluator(mode, memo=False).evaluate(f, env) is ref_eval(f, env, {}, mode)
    if mode is REFORMED:
        # rewriting E as !A! is sound only when the quantifiers are duals
        assert Evaluator(mode, derived="desugar").evaluate(f, env) is ref_eval(f, env, {}, mode)


@given(st.integers(0, 10**6))
def test_boolean_universes_agree_across_modes(seed):
    rng, env = random_env(seed, "boolean")
    f = random_formula(rng, list(env.qsets), 2)
    assert evaluate(f, env, REFORMED) is evaluate(f, env, TAKEUTI)


@given(st.integers(0, 10**6))
def test_equality_is_symmetric_and_reflexive(seed):
    _, env = random_env(seed)
    a, b, _ = env.qsets.values()
    assert eval_equal(a, b) is eval_equal(b, a)
    assert eval_equal(a, a).is_one


def test_values_on_checks_are_classical():
    env = Environment(2, {}, {"a": check_ordinal(1, 2), "b": check_ordinal(2, 2)})
    assert evaluate(parse("a in b"), env).is_one
    assert evaluate(parse("b in a"), env).is_zero
    assert evaluate(parse("A x in b . x in b"), env).is_one
    assert evaluate(parse("E x in b . x = a"), env).is_one


def test_eval_classical():
    one, two = ordinal(1), ordinal(2)
    assert eval_classical(parse("a in b"), {"a": ordinal(0), "b": one})
    assert not eval_classical(parse("a = b"), {"a": one, "b": two})
    assert eval_classical(parse("A x in b . x in b"), {"b": two})
    assert eval_classical(parse("E x . x in b"), {"b": two}, universe=[ordinal(0)])
    with pytest.raises(UnboundNameError):
        eval_classical(parse("a in b"), {"a": one})


def test_describe_and_classify():
    assert classify(P) == "proper"
    assert classify(logic.one(2)) == "one" and classify(logic.zero(2)) == "zero"
    assert describe(P, ENV, show_span=True) == "proper span{(1, 0)} = P"
    assert describe(Q, show_span=True) == "proper span{(1, 1)}"
    assert describe(logic.zero(2), show_span=True) == "zero span{}"


def test_transfer_spot_values():
    w = make_qset([(V, ortho(P))])
    env = Environment(2, {}, {"u": Z, "v": U, "w": w})
    assert evaluate(parse("u = u"), env).is_one
    assert evaluate(parse("A x in w . x in w"), env).is_one
    value = evaluate(parse("u = v & u in w -> v in w"), env)
    # [u = v] = P⊥, [u in w] = P⊥ * [0 = {<0,Q>}] = P⊥ * Q⊥ = P⊥, [v in w] = P⊥ * [u = v'] = 0
    assert value is ref_arrow(ortho(P), logic.zero(2)) is P
