import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import koszul_betti

from veronese_rate.corpus import CORPUS, make_ring
from veronese_rate.extended import NEG_INF
from veronese_rate.linalg import matmul_mod
from veronese_rate.modules import free_module
from veronese_rate.regbound import monomial_krull_dim, monomial_regularity, veronese_regularity

P = 32003
monos3 = st.tuples(*[st.integers(0, 3)] * 3).filter(lambda e: 2 <= sum(e) <= 4)


def _ring_of_monomials(gens):
    names = ("x", "y", "z")
    text = ["*".join(f"{n}^{k}" for n, k in zip(names, e) if k) for e in gens]
    return make_ring(names, text)


def _koszul_reg(R, jmax):
    G = free_module(R, 0).graded().over_cover()
    betti = koszul_betti(G, R.nvars, R.nvars, jmax, P)
    return max(j - i for i, j in betti)


@settings(max_examples=25)
@given(st.lists(monos3, min_size=1, max_size=4))
def test_hochster_matches_koszul_homology(gens):
    R = _ring_of_monomials(gens)
    r = monomial_regularity(R.leading_monomials, 3, P)
    assert r == _koszul_reg(R, r + 5)


@settings(max_examples=25)
@given(st.lists(monos3, min_size=1, max_size=3), st.integers(1, 3))
def test_reg_bound_dominates_non_monomial(gens, shift):
    # perturb a monomial ideal into a binomial one: reg(in(I)) >= reg(I)
    names = ("x", "y", "z")
    polys = []
    for e in gens:
        mono = "*".join(f"{n}^{k}" for n, k in zip(names, e) if k)
        other = "*".join(f"{n}^{k}" for n, k in zip(names, e[shift % 3:] + e[:shift % 3]) if k)
        polys.append(mono if mono == other else f"{mono} + {shift}*{other}")
    R = make_ring(names, polys)
    assert R.reg_bound >= _koszul_reg(R, R.reg_bound + 5)


def test_examples():
    assert monomial_regularity([(2, 0)], 2) == 1
    assert monomial_regularity([(2, 0), (0, 3)], 2) == 3
    assert monomial_regularity([(0, 0)], 2) is NEG_INF
    assert monomial_krull_dim([(2, 0), (0, 3)], 2) == 0
    assert monomial_krull_dim([(1, 1)], 2) == 1
    assert veronese_regularity(NEG_INF, 2, 3, 0) is NEG_INF


@pytest.mark.parametrize("name,names,ideal", CORPUS)
def test_corpus_ring_invariants(name, names, ideal):
    R = make_ring(names, ideal)
    assert R.m_I == max(int(f.split("^")[-1]) if "^" in f and "+" not in f else 2 for f in ideal)
    assert R.reg_bound == _koszul_reg(R, 8)
    for a in range(6):
        assert len(R.basis(a)) == R.hilbert(a)


@given(st.sampled_from(CORPUS), st.integers(0, 5), st.data())
def test_multiplication_commutes(case, a, data):
    R = make_ring(case[1], case[2])
    k = data.draw(st.integers(0, R.nvars - 1))
    l_ = data.draw(st.integers(0, R.nvars - 1))
    lhs = matmul_mod(R.mult(k, a), R.mult(l_, a + 1), P)
    rhs = matmul_mod(R.mult(l_, a), R.mult(k, a + 1), P)
    assert np.array_equal(lhs, rhs)


def test_ring_rejects_bad_generators():
    with pytest.raises(ValueError):
        make_ring(("x", "y"), ["x + y^2"])
    with pytest.raises(ValueError):
        make_ring(("x", "y"), ["x"])
