from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import rank_gf

from veronese_rate.extended import NEG_INF, ceil_div, from_json, to_json, xmax
from veronese_rate.linalg import complement_rows, left_kernel, matmul_mod, rank, rref

P = 32003
small_p = st.sampled_from([3, 5, 7, 32003])


def test_neg_inf_sentinel():
    assert NEG_INF < -10 ** 9 and NEG_INF < Fraction(-7, 3)
    assert NEG_INF + 5 is NEG_INF
    assert xmax([]) is NEG_INF
    assert xmax([NEG_INF, 2, Fraction(5, 2)]) == Fraction(5, 2)
    with pytest.raises(ArithmeticError):
        ceil_div(NEG_INF, 2)
    with pytest.raises(ArithmeticError):
        int(NEG_INF)


@given(st.fractions(max_denominator=50), st.integers(1, 20))
def test_ceil_div_exact(a, c):
    q = ceil_div(a, c)
    assert q - 1 < a / c <= q


@given(st.one_of(st.integers(-100, 100), st.fractions(max_denominator=9), st.just(NEG_INF)))
def test_json_round_trip(x):
    assert from_json(to_json(x)) == x


@st.composite
def matrices(draw, max_side=9):
    p = draw(small_p)
    m = draw(st.integers(0, max_side))
    n = draw(st.integers(1, max_side))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return p, np.array(rows, dtype=np.float64).reshape(m, n)


@given(matrices())
def test_rank_matches_sympy(pm):
    p, a = pm
    assert rank(a, p) == rank_gf(a.astype(int).tolist(), p)


@given(matrices())
def test_rref_is_reduced_and_same_span(pm):
    p, a = pm
    r, piv = rref(a, p)
    assert len(piv) == r.shape[0] == rank_gf(a.astype(int).tolist(), p)
    for k, c in enumerate(piv):
        col = r[:, c] % p
        assert col[k] == 1 and np.count_nonzero(col) == 1
    if len(piv):
        both = np.vstack([r, a])
        assert rank_gf(both.astype(int).tolist(), p) == len(piv)


@given(matrices())
def test_left_kernel(pm):
    p, a = pm
    ker = left_kernel(a, p)
    assert ker.shape[0] == a.shape[0] - rank(a, p)
    if ker.size:
        assert not np.any(matmul_mod(ker, a, p) % p)
        assert rank(ker, p) == ker.shape[0]


@given(matrices(), matrices())
def test_complement_rows(pa, pb):
    p, a = pa
    _, b = pb
    if b.shape[1] != a.shape[1]:
        return
    b = b % p
    extra = complement_rows(a, b, p)
    assert rank(np.vstack([a, extra]) if extra.size else a, p) == rank(np.vstack([a, b]), p)
    assert extra.shape[0] == rank(np.vstack([a, b]), p) - rank(a, p)


def test_matmul_mod_large_entries():
    a = np.full((3, 400), P - 1, dtype=np.float64)
    b = np.full((400, 2), P - 1, dtype=np.float64)
    assert (matmul_mod(a, b, P) == (400 % P)).all()
