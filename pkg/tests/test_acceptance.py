"""Acceptance criteria 1-10, one test each, one PASS/FAIL line per criterion."""

import json
import os
import subprocess
import sys
import time
from math import comb

import pytest

from veronese_rate.bounds import EXIT_INCONCLUSIVE, EXIT_VIOLATION, Checker, CorpusCase, corpus_run
from veronese_rate.corpus import CORPUS, corpus_rings, make_ring
from veronese_rate.extended import NEG_INF
from veronese_rate.modules import residue_field_module
from veronese_rate.resolution import rat_of_ring, resolve_minimal, t_values
from veronese_rate.spec_format import parse_corpus
from veronese_rate.veronese import veronese_ring

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
ACCEPTANCE_CORPUS = os.path.join(ROOT, "data", "acceptance.corpus")


@pytest.fixture
def report(capsys):
    """Call ``report(k, ok, detail)``; prints the criterion line even under capture."""
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {k}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def _cases():
    cases = []
    with open(ACCEPTANCE_CORPUS, encoding="utf-8") as fh:
        blocks = parse_corpus(fh.read())
    for b in blocks:
        R = b.spec.ring()
        cases.append(CorpusCase(b.name, R, b.spec.module(R), b.checks, b.inject))
    return cases


@pytest.fixture(scope="module")
def acceptance_run():
    checker = Checker()
    t = time.time()
    reports, summary = corpus_run(_cases(), checker=checker)
    return checker, reports, summary, time.time() - t


def _family(reports, *names):
    return [r for r in reports if r.inequality in names]


def _all_satisfied(rs):
    bad = [r.text() for r in rs if r.verdict != "satisfied"]
    return not bad and bool(rs), bad[:3]


def test_criterion_1_koszul(report):
    t = time.time()
    ok = True
    for n in (2, 3, 4):
        R = make_ring([f"x{k}" for k in range(n)], [])
        _, B = resolve_minimal(residue_field_module(R), n)
        ok &= [B.betti(i) for i in range(n + 1)] == [comb(n, i) for i in range(n + 1)]
        ok &= t_values(B) == list(range(n + 1)) and not B.any_truncated
    dt = time.time() - t
    report(1, ok and dt < 5, f"Koszul complex over K[x_1..x_n], n = 2, 3, 4 ({dt:.2f}s)")


def test_criterion_2_hypersurfaces(report):
    t = time.time()
    ok = True
    for d in (2, 3, 4):
        res = rat_of_ring(make_ring(["x"], [f"x^{d}"]), 5)
        ok &= t_values(res.betti)[:6] == [0, 1, d, d + 1, 2 * d, 2 * d + 1]
        ok &= res.value == d - 1 and res.betti.t(2) - 1 == d - 1 and not res.lower_bound
    dt = time.time() - t
    report(2, ok and dt < 5, f"K[x]/(x^d), d = 2, 3, 4, N = 5: t-values and rat = d - 1 ({dt:.2f}s)")


def test_criterion_3_residue_identities(report):
    t = time.time()
    failures = []
    for name, R in corpus_rings():
        res = rat_of_ring(R, 4)
        if res.betti.t(2) != R.m_I or not res.value >= R.m_I - 1:
            failures.append(name)
    dt = time.time() - t
    report(3, not failures and dt < 60, f"t_2(K) = m(I) and rat >= m(I) - 1 on 8 rings, failures {failures} ({dt:.1f}s)")


def test_criterion_4_veronese_rings(report):
    t = time.time()
    S = make_ring(["x", "y"], [])
    ok = [f.degree for f in veronese_ring(S, 2).target.minimal_ideal_generators] == [2]
    ok &= [f.degree for f in veronese_ring(S, 3).target.minimal_ideal_generators] == [2, 2, 2]
    failures = []
    for name, R in corpus_rings():
        for c in (1, 2, 3):
            T = veronese_ring(R, c, verify_upto=8).target
            if any(T.hilbert(i) != R.hilbert(i * c) for i in range(9)):
                failures.append((name, c))
    dt = time.time() - t
    report(4, ok and not failures and dt < 60,
           f"conic and twisted cubic; Hilbert identity i <= 8 for c <= 3, failures {failures} ({dt:.1f}s)")


def test_criterion_5_maxi(report, acceptance_run):
    _, reports, _, _ = acceptance_run
    rs = _family(reports, "maxi")
    ok, bad = _all_satisfied(rs)
    report(5, ok and len(rs) == 3 * len(CORPUS), f"t_i(m^s(s)) <= t_i(m(1)), s <= 3, i <= 4: {len(rs)} checks {bad}")


def test_criterion_6_versyz(report, acceptance_run):
    _, reports, _, _ = acceptance_run
    rs = _family(reports, "versyz")
    ok, bad = _all_satisfied(rs)
    report(6, ok and len(rs) == 6 * len(CORPUS), f"composition bound, c <= 3, all d, n <= 4: {len(rs)} checks {bad}")


def test_criterion_7_main_theorem(report, acceptance_run):
    _, reports, _, _ = acceptance_run
    rs = _family(reports, "mainthm", "mainthm-power", "aramova")
    ok, bad = _all_satisfied(rs)
    want = len(CORPUS) * (4 * 3 + 6 + 4 * 3)
    report(7, ok and len(rs) == want,
           f"main theorem, power form and rate corollary, M in {{K, m(1), m^2(2), R(-2)}}, c <= 3: {len(rs)} checks {bad}")


def test_criterion_8_backelin_and_regularity(report, acceptance_run):
    checker, reports, _, _ = acceptance_run
    hyp4 = make_ring(["x"], ["x^4"])
    rat, _ = checker.rat(hyp4, 5)
    b = checker.check("backelin", hyp4, c=3, N=5)
    ok = rat == 3 and (b.lhs, b.rhs, b.slack, b.verdict) == (1, 1, 0, "satisfied")
    rz = _family(reports, "reg-zero")
    live = [r for r in rz if "vacuous" not in r.flags]
    ok2, bad = _all_satisfied(rz)
    # a zero piece (e.g. R_{4i+3} = 0 for K[x]/(x^3)) has regularity -inf
    zero = [r for r in live if r.lhs is NEG_INF]
    ok2 &= all(r.lhs == 0 for r in live if r.lhs is not NEG_INF) and len(live) > len(zero)
    report(8, ok and ok2, f"rat(R^(3)) = 1 for K[x]/(x^4) with slack 0; reg = 0 on {len(live) - len(zero)} "
                          f"nonzero pieces with c >= rat ({len(zero)} zero pieces) {bad}")


def test_criterion_9_harness_self_test(report, acceptance_run):
    checker, _, _, _ = acceptance_run
    # corrupted right-hand sides reuse the cached left-hand sides
    reports, summary = corpus_run(_cases(), rhs_offset=1, checker=checker)
    ok = summary["violated"] >= 1 and summary["exit_code"] == EXIT_VIOLATION
    small = [CorpusCase("hyp3", make_ring(["x"], ["x^3"]), None, [("backelin", {"c": 2})])]
    _, strict = corpus_run(small, strict=True, checker=Checker(4, D=3))
    _, relaxed = corpus_run(small, strict=False, checker=Checker(4, D=3))
    ok &= strict["truncated"] >= 1 and strict["exit_code"] == EXIT_INCONCLUSIVE and relaxed["exit_code"] == 0
    report(9, ok, f"RHS - 1 gives {summary['violated']} violations, exit {summary['exit_code']}; "
                  f"strict truncation exit {strict['exit_code']}")


def _cli_json(seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    out = subprocess.run([sys.executable, "-m", "veronese_rate.cli", "corpus", "--file", ACCEPTANCE_CORPUS,
                          "--format", "json"], capture_output=True, env=env, check=False)
    return out.returncode, out.stdout


def test_criterion_10_determinism(report, acceptance_run):
    _, reports, summary, _ = acceptance_run
    code1, first = _cli_json(1)
    code2, second = _cli_json(2)
    data = json.loads(first)
    same_as_in_process = data["reports"] == [r.to_dict() for r in reports] and data["summary"] == summary
    report(10, code1 == code2 == 0 and first == second and same_as_in_process,
           f"two full-suite runs (different hash seeds) byte-identical: {first == second}, {len(first)} bytes")
