"""Acceptance criteria, each checked exactly and within its runtime bound.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for
one PASS/FAIL line per criterion.
"""

import sys
import time

import pytest

from qsets import harness, logic
from qsets.evaluate import REFORMED, TAKEUTI, Evaluator
from qsets.formula import parse

SEED = 2024
RESULTS: dict[str, tuple[bool, str]] = {}


def record(name, ok, detail):
    RESULTS[name] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return ok


def timed(fn, *args, **kw):
    start = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - start


def report_ok(report, seconds, bound):
    return report.passed and seconds < bound


def criterion_1():
    def run():
        env = harness.counterexample_environment()
        p = env.projections["P"]
        exists_neg = parse("E x in u . !!(x in v)")
        not_forall = parse("!(A x in u . !(x in v))")
        t = Evaluator(TAKEUTI)
        r = Evaluator(REFORMED)
        return (t.evaluate(exists_neg, env).is_zero
                and t.evaluate(not_forall, env) is p and not p.is_zero
                and r.evaluate(exists_neg, env) is p
                and r.evaluate(not_forall, env) is p)
    ok, s = timed(run)
    return record("1 counterexample reproduction", ok and s < 1,
                  f"takeuti 0 < P, reformed P = P; {s:.3f}s (< 1s)")


def criterion_2():
    rep, s = timed(harness.suite_demorgan, SEED, cases=200, dims=(2, 4), rank_cap=2, branch=3)
    return record("2 De Morgan suite", report_ok(rep, s, 60) and rep.cases >= 200,
                  f"{rep.cases} cases, {len(rep.failures)} failures, "
                  f"{rep.notes['takeuti_discrepancies']} takeuti gaps; {s:.1f}s (< 60s)")


def criterion_3():
    laws = list(harness.KERNEL_LAWS)
    required = {"C1", "C2", "C3", "OM", "arrow-expansion", "star-expansion",
                "commuting-join", "commuting-arrow", "commuting-star"} | {
        f"{h}-{c}" for h in ("E", "MP", "MT") for c in logic.CONDITIONALS}
    rep, s = timed(harness.suite_kernel_laws, SEED, cases=500, dims=(2, 4), laws=laws)
    covered = required <= set(rep.notes["cases_per_law"])
    return record("3 kernel law suite", report_ok(rep, s, 60) and covered,
                  f"{len(laws)} laws x {rep.cases} cases, {len(rep.failures)} failures; "
                  f"{s:.1f}s (< 60s)")


def criterion_4():
    rep, s = timed(harness.suite_commutators, SEED, cases=200, dims=(2, 4), max_size=3)
    pairs, ps = timed(harness.suite_kernel_laws, SEED, cases=100, dims=(2, 4),
                      laws=["commutator-pair-vs-finite"])
    ok = report_ok(rep, s + ps, 120) and pairs.passed
    return record("4 commutator agreement", ok,
                  f"{rep.cases} families + {pairs.cases} pairs, "
                  f"{len(rep.failures) + len(pairs.failures)} failures; {s + ps:.1f}s (< 120s)")


def criterion_5():
    rep, s = timed(harness.suite_restriction, SEED, cases=100)
    return record("5 restriction principle", report_ok(rep, s, 120),
                  f"{rep.cases} triples ({rep.notes['nontrivial_p']} with proper p), "
                  f"{len(rep.failures)} failures; {s:.1f}s (< 120s)")


def criterion_6():
    rep, s = timed(harness.suite_transfer, SEED, cases=100)
    nonvacuous = rep.notes["equality_instances_below_one"] >= 1
    ok = report_ok(rep, s, 300) and rep.notes["formulas"] >= 12 and nonvacuous
    return record("6 transfer principle", ok,
                  f"{rep.notes['formulas']} formulas x {rep.cases} bindings, "
                  f"{len(rep.failures)} violations, "
                  f"{rep.notes['equality_instances_below_one']} equality instances below 1; "
                  f"{s:.1f}s (< 300s)")


def criterion_7():
    rep, s = timed(harness.suite_elementary_equivalence, SEED, cases=200, hf_rank_cap=3)
    return record("7 elementary equivalence", report_ok(rep, s, 60),
                  f"{rep.cases} formulas ({rep.notes['classically_true']} classically true), "
                  f"{len(rep.failures)} failures; {s:.1f}s (< 60s)")


def criterion_8():
    rep, s = timed(harness.suite_generated_logic, SEED, cases=100)
    return record("8 generated-logic membership", report_ok(rep, s, 120),
                  f"{rep.cases} cases, {len(rep.failures)} failures; {s:.1f}s (< 120s)")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
