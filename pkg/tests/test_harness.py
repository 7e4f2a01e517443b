import json
import random
from itertools import product

import pytest

from qsets import harness, logic
from qsets.evaluate import eval_classical, evaluate
from qsets.formula import free_names, is_delta0
from qsets.universe import hf_universe, qset_commutator


def test_corpus_is_well_formed():
    corpus = harness.load_corpus()
    assert len(corpus) >= 12
    assert len({e.name for e in corpus}) == len(corpus)
    assert any(e.name.startswith("eq_") for e in corpus)
    for e in corpus:
        assert is_delta0(e.formula)
        assert free_names(e.formula) <= set(e.variables)
        assert e.sketch


def test_corpus_is_classically_valid():
    # every corpus formula is true on all HF bindings of small rank
    sets = hf_universe(3)
    for e in harness.load_corpus():
        for combo in product(sets, repeat=len(e.variables)):
            assert eval_classical(e.formula, dict(zip(e.variables, combo))), e.name


@pytest.mark.parametrize("bad", ["a ::= u in u ::= u", "a ::= u in v ::= u ::= sketch"])
def test_parse_corpus_errors(bad):
    with pytest.raises(ValueError):
        harness.parse_corpus(bad)


def test_random_formula_is_closed_delta0_and_deterministic():
    for seed in range(50):
        f = harness.random_formula(random.Random(seed), ["a", "b"], 3)
        assert is_delta0(f) and free_names(f) <= {"a", "b"}
        assert f == harness.random_formula(random.Random(seed), ["a", "b"], 3)
        g = harness.random_formula(random.Random(seed), ["a"], 2, variables=("x",), must_use="x")
        assert "x" in free_names(g)


def test_counterexample_reproduced():
    ok, detail = harness.counterexample_reproduced()
    assert ok, detail


def test_equality_witness_below_one():
    entry, env = harness.equality_witness()
    value = evaluate(entry.formula, env)
    assert not value.is_one
    assert qset_commutator(env.qsets.values()).is_zero


@pytest.mark.parametrize("suite,kw", [
    ("demorgan", {"cases": 20}), ("restriction", {"cases": 20}), ("transfer", {"cases": 5}),
    ("eqv", {"cases": 40}), ("kernel", {"cases": 10}), ("range", {"cases": 10}),
    ("commutators", {"cases": 20}),
])
def test_suites_pass_and_are_deterministic(suite, kw):
    a = harness.RUNNERS[suite](seed=3, **kw)
    b = harness.RUNNERS[suite](seed=3, **kw)
    assert a.passed, a.to_text()
    assert a.notes == b.notes
    summary = a.summary()
    assert summary["suite"] == suite and summary["failures"] == 0
    assert summary["replay"].startswith(f"qsets check {suite} --seed 3")
    json.loads(a.to_json())


def test_demorgan_counts_takeuti_gaps():
    report = harness.suite_demorgan(seed=7, cases=200)
    assert report.passed
    assert report.notes["takeuti_discrepancies"] > 0


def test_transfer_exploratory_conditionals_do_not_gate():
    report = harness.suite_transfer(seed=1, cases=3, conditional="relevance")
    assert "exploratory_violations" in report.notes
    assert not report.gating


def test_report_failure_rendering():
    report = harness.SuiteReport("x", 1, 1, params={"dim": "2-2"})
    report.failures.append(harness.Failure(0, 5, "law", "broken", "u in v", "1", "0", {"dimension": 2}))
    assert not report.passed
    text = report.to_text()
    assert "FAIL" in text and "seed 5" in text and "universe" in text
    assert json.loads(report.to_json())["failure_list"][0]["law"] == "law"


def test_kernel_law_catalogue():
    for law in ("C1", "C2", "C3", "OM", "arrow-expansion", "star-expansion",
                "commuting-join", "commuting-arrow", "commuting-star",
                "E-sasaki", "MP-relevance", "MT-contrapositive"):
        assert law in harness.KERNEL_LAWS


def test_commuting_with_commutes():
    rng = random.Random(0)
    for _ in range(100):
        q = harness.random_kernel_projection(rng, 4)
        assert logic.commutes(harness.commuting_with(rng, q), q)
        assert logic.leq(harness.subspace_of(rng, q), q)
