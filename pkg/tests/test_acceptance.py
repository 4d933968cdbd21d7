"""Acceptance gate: one PASS/FAIL line per criterion, also shown in the summary."""

import json
import random
import time
from fractions import Fraction

import pytest

from fraccover.criterion import is_covered
from fraccover.extremal import boundary_equivalence, build_extremal
from fraccover.factor import find_factor, verify_factor
from fraccover.graph import gnp, neighborhood
from fraccover.harness import DENSE_SCHEDULE, config_from_mapping, run_experiment, strip_timing
from fraccover.neighborhood import check_hypothesis, ratio
from oracles import lp_factor_feasible

EQUIV_PARAMS = "1,1;1,2;2,2;2,3"
THEOREM_PARAMS = "2,2,0;2,3,0;2,3,1"


def equivalence_cfg(out):
    return config_from_mapping(
        {"mode": "oracle-exhaustive", "n": "5..6", "params": EQUIV_PARAMS, "output": str(out)}
    )


def theorem_cfg(out):
    return config_from_mapping({
        "mode": "theorem2-random",
        "params": THEOREM_PARAMS,
        "n": "8..12",
        "densities": ",".join(str(p) for p in DENSE_SCHEDULE),
        "trials": "200",
        "seed": "20240101",
        "include_complete": "true",
        "output": str(out),
    })


def read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def equivalence_runs(tmp_path_factory):
    first = run_experiment(equivalence_cfg(tmp_path_factory.mktemp("equiv1")), keep_rows=True)
    second = run_experiment(equivalence_cfg(tmp_path_factory.mktemp("equiv2")))
    return first, second


@pytest.fixture(scope="session")
def theorem_runs(tmp_path_factory):
    first = run_experiment(theorem_cfg(tmp_path_factory.mktemp("thm1")), keep_rows=True)
    second = run_experiment(theorem_cfg(tmp_path_factory.mktemp("thm2")))
    return first, second


def sharpness_certificate():
    inst = build_extremal(2, 3, 0, 7)
    return inst, is_covered(inst.graph, 2, 3)


def hypothesis_report():
    inst = build_extremal(2, 3, 0, 7)
    return inst, check_hypothesis(inst.graph, 2, 3, 0, mode="disjunctive")


def test_criterion_1_sharpness_certificate(record_acceptance):
    start = time.perf_counter()
    inst, verdict = sharpness_certificate()
    elapsed = time.perf_counter() - start
    c = verdict.certificate
    ok = (
        inst.n == 11
        and len(inst.A) == 3
        and not verdict.covered
        and c.S == inst.A
        and c.T == inst.B
        and c.theta == 1 == 3 - 2
        and c.epsilon == 2
        and elapsed < 1.0
    )
    record_acceptance(1, "sharpness certificate S=A, T=B, theta=1, eps=2", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_2_hypothesis_holds(record_acceptance):
    start = time.perf_counter()
    inst, rep = hypothesis_report()
    boundary = boundary_equivalence(inst)
    # independent check on actual subsets of B, one per size
    B = sorted(inst.B)
    r = ratio(inst.n, 2, 3, 0)
    direct = all(
        (len(neighborhood(inst.graph, B[:s])) >= r * s) == (s <= inst.t) for s in range(1, len(B) + 1)
    )
    elapsed = time.perf_counter() - start
    ok = rep.holds and rep.subsets_examined == 2**11 and boundary and direct and elapsed < 5.0
    record_acceptance(
        2, "hypothesis holds on all 2^11 subsets, boundary |X| <= t exact", ok,
        f"{rep.subsets_examined} subsets, {elapsed:.3f}s",
    )
    assert ok


def test_criterion_3_engine_equivalence(record_acceptance, equivalence_runs):
    (summary, rows), _ = equivalence_runs
    expected_rows = 4 * (2**10 + 2**15)
    agree = sum(r["criterion_covered"] == r["oracle_covered"] for r in rows)
    ok = summary.exit_code == 0 and summary.rows == expected_rows and agree == expected_rows
    record_acceptance(3, "criterion and flow engine agree on all n=5,6 graphs", ok, f"{agree}/{expected_rows}")
    assert ok


def test_criterion_4_theorem_validation(record_acceptance, theorem_runs):
    (summary, rows), _ = theorem_runs
    complete_rows = [r for r in rows if r["source"] == "complete"]
    premise = [r for r in rows if r["order_bound_ok"] is True and r["hypothesis_holds"] is True]
    ok = (
        summary.exit_code == 0
        and summary.counterexamples == 0
        and summary.rows == 3 * (200 + 5)
        and len(complete_rows) == 15
        and all(r["criterion_covered"] is True and r["oracle_covered"] is True for r in premise)
        and len(premise) == summary.premise_instances > 0
    )
    record_acceptance(
        4, "premise instances all critical-covered by both engines", ok,
        f"{summary.premise_instances} premise instances, {summary.counterexamples} counterexamples",
    )
    assert ok


def test_criterion_5_degree_consequence(record_acceptance, theorem_runs):
    (summary, rows), _ = theorem_runs
    passing = [r for r in rows if r["hypothesis_holds"] is True]
    ok = summary.degree_violations == 0 and all(r["degree_consequence_ok"] is True for r in passing)
    record_acceptance(5, "minimum degree bound on hypothesis-passing instances", ok, f"{len(passing)} checked")
    assert ok


def random_feasible_instances(count, seed):
    rng = random.Random(seed)
    found = 0
    draws = 0
    lp_mismatch = 0
    while found < count:
        draws += 1
        n = rng.randint(2, 9)
        G = gnp(n, Fraction(rng.randint(3, 10), 10), rng.getrandbits(32))
        if not G.m:
            continue
        a = rng.randint(0, 3)
        b = a + rng.randint(0, 3)
        pins = [rng.choice(G.edges())]
        h = find_factor(G, a, b, pins)
        lp_mismatch += (h is not None) != lp_factor_feasible(G.n, G.edges(), a, b, pins)
        if h is not None:
            found += 1
            yield G, a, b, pins, h
    assert lp_mismatch == 0, f"{lp_mismatch} feasibility mismatches against LP in {draws} draws"


def test_criterion_6_factor_validity(record_acceptance, equivalence_runs, theorem_runs):
    (eq, _), _ = equivalence_runs
    (th, _), _ = theorem_runs
    emitted_ok = eq.factors_bad == 0 and th.factors_bad == 0 and eq.factors_checked > 0 and th.factors_checked > 0
    bad = 0
    total = 0
    for G, a, b, pins, h in random_feasible_instances(1000, 6):
        total += 1
        bad += not (verify_factor(G, a, b, pins, h) and h.is_half_integral())
    ok = emitted_ok and total == 1000 and bad == 0
    record_acceptance(
        6, "every emitted factor valid and half-integral", ok,
        f"{eq.factors_checked + th.factors_checked} from runs, {total} random pinned, {bad} bad",
    )
    assert ok


def test_criterion_7_determinism(record_acceptance, equivalence_runs, theorem_runs):
    same = []
    _, v1 = sharpness_certificate()
    _, v2 = sharpness_certificate()
    same.append(json.dumps(v1.to_json()) == json.dumps(v2.to_json()))
    _, r1 = hypothesis_report()
    _, r2 = hypothesis_report()
    same.append(json.dumps(r1.to_json()) == json.dumps(r2.to_json()))
    for (s1, _), (s2, _) in (equivalence_runs, theorem_runs):
        same.append(read_text(s1.certificates) == read_text(s2.certificates))
        same.append(strip_timing(read_text(s1.ledger)) == strip_timing(read_text(s2.ledger)))
    ok = all(same)
    record_acceptance(7, "repeat runs byte-identical (timing excluded)", ok, f"{sum(same)}/{len(same)} artifacts")
    assert ok
