"""Acceptance criteria, each at its stated size, tolerance and time bound.

Every test records one PASS/FAIL line, printed in the terminal summary.
"""

import json
import subprocess
import sys
import time

from conftest import record_criterion
from exactness import adjverify as av
from exactness import grppairs as gp
from exactness import setrel as sr

SET_SIZE = 3
CORPUS_NAMES = ["C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3"]


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def summary(reports) -> str:
    return ", ".join(f"{r.suite_name}: {r.cases_checked} cases / {r.failure_count} failures" for r in reports)


def test_criterion_1_counterexample():
    rep, secs = timed(av.reproduce_counterexample)
    whole, parts = rep.info["D(g.f)"], rep.info["D(g).D(f)"]
    ok = rep.passed and whole == 2 and parts == 1 and secs < 1.0
    record_criterion(1, ok, f"|D(g.f)| = {whole}, |D(g).D(f)| = {parts}, {secs:.3f} s (< 1 s)")
    assert ok, rep.failures


def test_criterion_2_D_and_C_functorial_on_starred():
    universe = av.setrel_universe(SET_SIZE, starred=True)

    def run():
        d = av.check_functoriality(sr.D_obj, sr.D_mor, universe, "D on SetRel*")
        c = av.check_functoriality(*av.as_r_functor(sr.C_obj, sr.C_mor), universe, "C on SetRel*")
        return d, c

    (d, c), secs = timed(run)
    ok = d.passed and c.passed and secs < 60
    record_criterion(2, ok, f"{summary([d, c])}, {secs:.1f} s (< 60 s)")
    assert ok, (d.failures, c.failures)


def test_criterion_3_end_adjunctions_set():
    c_m0, _, _, m1_d = av.set_chain_adjunctions(SET_SIZE)
    reps, secs = timed(lambda: [av.check_r_adjunction(m1_d), av.check_r_adjunction(c_m0)])
    ok = all(r.passed for r in reps) and secs < 300
    record_criterion(3, ok, f"{summary(reps)}, {secs:.1f} s (< 300 s)")
    assert ok, [r.failures for r in reps]


def test_criterion_4_middle_adjunctions_set():
    _, m0_f, f_m1, _ = av.set_chain_adjunctions(SET_SIZE)
    reps = [av.check_middle_homsets(SET_SIZE), av.check_r_adjunction(m0_f), av.check_r_adjunction(f_m1)]
    ok = all(r.passed for r in reps)
    record_criterion(4, ok, summary(reps))
    assert ok, [r.failures for r in reps]


def test_criterion_5_axioms_and_mutations():
    rep = av.run_axiom_suite(SET_SIZE)
    strong = [f for f in rep.failures if f.case.startswith("A5 strong")]
    missed = []
    for axiom, (_, cfg) in av.axiom_mutations().items():
        failing = av.failing_axioms(av.run_axiom_suite(SET_SIZE, cfg, cap=1000))
        if not any(name == axiom or name.startswith(axiom + " ") for name in failing):
            missed.append(axiom)
    ok = rep.passed and not strong and not missed
    record_criterion(5, ok, f"{rep.cases_checked} axiom cases / {rep.failure_count} failures; 14 mutations, uncaught: {missed or 'none'}")
    assert ok, (rep.failures, missed)


def test_criterion_6_galois():
    rep = av.check_galois(SET_SIZE)
    record_criterion(6, rep.passed, f"{rep.cases_checked} cases / {rep.failure_count} failures")
    assert rep.passed, rep.failures


def test_criterion_7_grp_chain():
    groups = gp.corpus()
    assert [G.name for G in groups] == CORPUS_NAMES

    def run():
        reps = [av.check_r_adjunction(d) for d in av.grp_chain_adjunctions(groups)]
        return reps + [av.check_grp_counts(groups)]

    reps, secs = timed(run)
    counts = reps[-1].info
    ok = all(r.passed for r in reps) and counts["S3_transposition_to_C2_trivial"] == 1 and secs < 300
    record_criterion(7, ok, f"{summary(reps)}; |hom_pair((S3,<t>),(C2,1))| = {counts['S3_transposition_to_C2_trivial']}, {secs:.1f} s (< 300 s)")
    assert ok, [r.failures for r in reps]


def test_criterion_8_forms():
    rep = av.check_forms(SET_SIZE, gp.corpus())
    record_criterion(8, rep.passed, f"{rep.cases_checked} cases / {rep.failure_count} failures")
    assert rep.passed, rep.failures


def _strip_elapsed(report: dict) -> dict:
    return {**report, "suites": [{k: v for k, v in s.items() if k != "elapsed_ms"} for s in report["suites"]]}


def test_criterion_9_determinism():
    outs = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "exactness", "--suite", "all", "--report", "json"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(_strip_elapsed(json.loads(proc.stdout)))
    ok = outs[0] == outs[1] and outs[0]["pass"]
    record_criterion(9, ok, f"two --suite all runs, {len(outs[0]['suites'])} suites, identical modulo elapsed_ms: {outs[0] == outs[1]}")
    assert ok
