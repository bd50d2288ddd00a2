import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from veronese_rate.bounds import (EXIT_INCONCLUSIVE, EXIT_OK, EXIT_VIOLATION, Checker, CorpusCase,
                                  backelin_rhs, canonical_piece, check, complex_degree_bound,
                                  compositions, corpus_run, mainthm_rhs, sequence_verdict,
                                  surjection_rate_rhs, verdict, versyz_rhs)
from veronese_rate.corpus import CORPUS, make_ring
from veronese_rate.extended import NEG_INF, xmax
from veronese_rate.modules import free_module, power_ideal_module, residue_field_module
from veronese_rate.resolution import resolve_minimal
from veronese_rate.veronese import restrict_resolution_to_veronese, veronese_ring


def test_rhs_examples():
    assert versyz_rhs(1, 3, [0, 5]) == 2
    assert versyz_rhs(2, 2, [0, 1, 3]) == 2
    assert versyz_rhs(3, 2, [0, 1, 3, 4]) == 3
    assert mainthm_rhs(Fraction(3, 2), 2, 0, 2) == 1
    assert mainthm_rhs(1, 1, 3, 2) == 3
    assert backelin_rhs(2, 2) == 1 and backelin_rhs(3, 2) == 2
    assert all(backelin_rhs(1, c) == 1 for c in range(1, 6))
    assert surjection_rate_rhs(1, 1, 0) == 1
    assert surjection_rate_rhs(Fraction(3, 2), 2, 0) == 2
    assert surjection_rate_rhs(1, 1, 2) == 3


def test_versyz_rejects_minus_infinity():
    with pytest.raises(ArithmeticError):
        versyz_rhs(2, 2, [0, 1, NEG_INF])
    with pytest.raises(ValueError):
        versyz_rhs(1, 2, [1, 1])


def test_compositions_count():
    assert sum(1 for _ in compositions(5)) == 2 ** 4


t_seq = st.lists(st.integers(1, 12), min_size=4, max_size=4).map(lambda t: [0] + sorted(t))


@given(t_seq, st.integers(1, 4), st.integers(1, 5), st.integers(1, 4), st.integers(0, 3))
def test_versyz_monotone(t, n, c, where, bump):
    base = versyz_rhs(n, c, t)
    t2 = list(t)
    t2[where] += bump
    assert versyz_rhs(n, c, t2) >= base
    assert versyz_rhs(n, c + 1, t) <= base


@given(st.fractions(min_value=0, max_value=10, max_denominator=7),
       st.fractions(min_value=0, max_value=10, max_denominator=7), st.integers(-3, 5))
def test_mainthm_rhs_at_c_one(rate, rat, t0):
    assert mainthm_rhs(rate, rat, t0, 1) == math.ceil(max(rate, rat)) + max(0, t0)


def test_verdict_table():
    assert verdict(NEG_INF, 3, False, False) == ("satisfied", math.inf)
    assert verdict(NEG_INF, 3, True, False)[0] == "inconclusive"
    assert verdict(2, 3, False, False) == ("satisfied", 1)
    assert verdict(2, 3, True, False)[0] == "inconclusive"
    # a truncated lhs only grows, so exceeding an exact rhs is a real violation
    assert verdict(4, 3, True, False) == ("violated", -1)
    assert verdict(4, 3, False, True)[0] == "inconclusive"
    assert sequence_verdict([0, 1, 2], [0, 2, 2], False, False) == ("satisfied", 0)
    assert sequence_verdict([0, 3], [0, 2], False, False) == ("violated", -1)


def test_complex_degree_bound_examples():
    assert complex_degree_bound([[4, 7]], 0) == 4
    free = [[0, NEG_INF, NEG_INF], [1, NEG_INF, NEG_INF], [2, NEG_INF, NEG_INF]]
    assert complex_degree_bound(free, 2) == 2


def _summand_t(tables, shifts, n):
    return xmax(tables[k].t(n) + i if tables[k].t(n) is not NEG_INF else NEG_INF for k, i in shifts)


def test_restricted_koszul_bound():
    S = make_ring(["x", "y"], [])
    sl, _ = resolve_minimal(residue_field_module(S), 2, keep_maps=True)
    vm = veronese_ring(S, 2)
    tables = {k: resolve_minimal(vm.piece(free_module(S, 0), k), 2)[1] for k in range(2)}
    L = restrict_resolution_to_veronese(sl, 2, 0)
    tm = [[_summand_t(tables, L[i], n) for n in range(3)] for i in range(3)]
    assert complex_degree_bound(tm, 1) == 1


@pytest.mark.parametrize("case", CORPUS)
@pytest.mark.parametrize("d", [0, 1])
def test_restricted_resolutions_bound_homology(case, d):
    # F -> m(1) over R restricts to an acyclic complex over R^(2) resolving m(1)^(2,d)
    R = make_ring(case[1], case[2])
    M = power_ideal_module(R, 1)
    N = 3
    sl, B = resolve_minimal(M, N, keep_maps=True)
    vm = veronese_ring(R, 2)
    tables = {k: resolve_minimal(vm.piece(free_module(R, 0), k), N)[1] for k in range(2)}
    L = restrict_resolution_to_veronese(sl, 2, d)
    tm = [[_summand_t(tables, L[i], n) for n in range(N + 1)] for i in range(N + 1)]
    _, H = resolve_minimal(vm.piece(M, d), N)
    for n in range(N + 1):
        actual = H.t(n)
        bound = complex_degree_bound(tm, n)
        assert actual is NEG_INF or actual <= bound


@pytest.mark.parametrize("case", CORPUS)
@pytest.mark.parametrize("c", [2, 3])
def test_canonical_pieces_match_direct_pieces(case, c):
    R = make_ring(case[1], case[2])
    ch = Checker(3)
    vm = ch.vmap(R, c)
    for M in (free_module(R, 0), free_module(R, 2), power_ideal_module(R, 1), power_ideal_module(R, 2)):
        assert canonical_piece(M, c, 0) is not None
        for d in range(c):
            _, direct = resolve_minimal(vm.piece(M, d), 3)
            assert ch.piece(R, M, c, d).entries == direct.entries


def test_check_examples():
    hyp4 = make_ring(["x"], ["x^4"])
    r = check("backelin", hyp4, c=3, N=5)
    assert (r.lhs, r.rhs, r.verdict, r.slack) == (1, 1, "satisfied", 0)
    xy3 = make_ring(["x", "y"], ["x^3"])
    r = check("maxi", xy3, s=2, N=4)
    assert r.verdict == "satisfied"
    r = check("mainthm", xy3, free_module(xy3, 0), c=1)
    assert r.lhs is NEG_INF and r.verdict == "satisfied" and r.slack == math.inf
    d = r.to_dict()
    assert {"inequality", "lhs", "rhs", "verdict", "slack", "cutoffs", "flags"} <= set(d)


def test_vacuous_and_flagged_checks():
    hyp4 = make_ring(["x"], ["x^4"])
    r = check("reg-zero", hyp4, c=2, d=1)
    assert r.verdict == "satisfied" and "vacuous" in r.flags
    xy = make_ring(["x", "y"], ["x*y"])
    r = check("aramova", xy, free_module(xy, 2), c=2)
    assert "not-generated-in-degree-zero" in r.flags
    with pytest.raises(ValueError):
        check("nonsense", xy)


def test_corpus_run_exit_codes():
    assert corpus_run([])[1]["exit_code"] == EXIT_OK
    R = make_ring(["x", "y"], ["x^2"])
    case = CorpusCase("c", R, None, [("backelin", {"c": 2})])
    _, summary = corpus_run([case])
    assert summary["exit_code"] == EXIT_OK
    _, summary = corpus_run([case], rhs_offset=1)
    assert summary["exit_code"] == EXIT_VIOLATION and summary["violated"] == 1
    trunc = Checker(4, D=3)
    _, summary = corpus_run([case], strict=True, checker=trunc)
    assert summary["truncated"] >= 1 and summary["exit_code"] == EXIT_INCONCLUSIVE
