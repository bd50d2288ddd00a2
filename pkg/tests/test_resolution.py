from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import ci_betti, koszul_betti

from veronese_rate.corpus import CORPUS, make_ring
from veronese_rate.extended import NEG_INF
from veronese_rate.modules import (ModulePresentation, PowerIdealModule, free_module,
                                   power_ideal_module, residue_field_module)
from veronese_rate.monomial import monomials_of_degree
from veronese_rate.polynomial import FreeVector, GradedFreeModule
from veronese_rate.resolution import (betti_text, rat_of_ring, rate_truncated,
                                      regularity_truncated, resolve_minimal, t_values)

P = 32003
CI = {"hyp3": [3], "hyp4": [4], "xy-x2": [2], "xy-x3": [3], "xy-x2-y3": [2, 3],
      "quadric-cone": [2], "xy-xy": [2]}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_koszul_complex(n):
    R = make_ring([f"x{k}" for k in range(n)], [])
    _, B = resolve_minimal(residue_field_module(R), n)
    assert [B.betti(i) for i in range(n + 1)] == [comb(n, i) for i in range(n + 1)]
    assert t_values(B) == list(range(n + 1))
    assert not B.any_truncated


@pytest.mark.parametrize("name,names,ideal", [c for c in CORPUS if c[0] in CI])
def test_residue_field_over_complete_intersections(name, names, ideal):
    R = make_ring(names, ideal)
    _, B = resolve_minimal(residue_field_module(R), 5)
    assert not B.any_truncated
    assert B.entries == ci_betti(len(names), CI[name], 5, B.D)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_hypersurface_rat(d):
    R = make_ring(["x"], [f"x^{d}"])
    res = rat_of_ring(R, 5)
    assert res.value == d - 1
    assert t_values(res.betti)[:6] == [0, 1, d, d + 1, 2 * d, 2 * d + 1]


def _coker_xy():
    R = make_ring(("x", "y"), ["x^2"])
    F = GradedFreeModule(R.poly_ring, (0, 1))
    rels = [FreeVector(F, {(0, (0, 2)): 1, (1, (0, 1)): P - 1}),
            FreeVector(F, {(0, (1, 1)): 1})]
    return ModulePresentation(R, (0, 1), rels)


@pytest.mark.parametrize("build", [
    lambda: residue_field_module(make_ring(("x", "y"), ["x^2", "x*y"])),
    lambda: power_ideal_module(make_ring(("x", "y"), ["x^2", "y^3"]), 2),
    lambda: residue_field_module(make_ring(("x", "y", "z"), ["x^2 + y*z"])),
    _coker_xy,
])
def test_linear_and_groebner_routes_agree(build):
    M = build()
    _, lin = resolve_minimal(M, 3, 10)
    _, gro = resolve_minimal(M, 3, 10, method="groebner")
    assert lin.entries == gro.entries


@pytest.mark.parametrize("case", CORPUS)
@pytest.mark.parametrize("s", [1, 2, 3])
def test_power_ideal_presentation_matches_direct_oracle(case, s):
    R = make_ring(case[1], case[2])
    M = power_ideal_module(R, s)
    assert isinstance(M.graded(), PowerIdealModule)
    _, a = resolve_minimal(M.graded("presentation"), 3)
    _, b = resolve_minimal(M.graded(), 3)
    assert a.entries == b.entries
    for j in range(6):
        assert M.presented.dim(j) == M.graded().dim(j)


monos3 = st.tuples(*[st.integers(0, 2)] * 3).filter(lambda e: 2 <= sum(e) <= 3)


@settings(max_examples=20)
@given(st.lists(monos3, min_size=1, max_size=3))
def test_quotients_of_polynomial_ring_match_koszul_homology(gens):
    names = ("x", "y", "z")
    text = ["*".join(f"{n}^{k}" for n, k in zip(names, e) if k) for e in gens]
    S = make_ring(names, [])
    R = make_ring(names, text)
    # S/I as a cyclic S-module: coker of the generator row
    F = GradedFreeModule(S.poly_ring, (0,))
    rels = [FreeVector(F, {(0, e): 1}) for e in gens]
    M = ModulePresentation(S, (0,), rels)
    _, B = resolve_minimal(M, 3)
    assert not B.any_truncated
    assert B.entries == koszul_betti(M.graded(), 3, 3, B.D, P)
    assert regularity_truncated(B) == R.reg_bound


@st.composite
def quadric_ideals(draw):
    names = ("x", "y", "z")
    out = []
    for _ in range(draw(st.integers(1, 2))):
        d = draw(st.integers(2, 3))
        picks = draw(st.lists(st.sampled_from(monomials_of_degree(3, d)), min_size=1, max_size=3, unique=True))
        out.append(" + ".join(f"{draw(st.integers(1, 9))}*" + "*".join(f"{n}^{k}" for n, k in zip(names, e) if k)
                              for e in picks))
    return make_ring(names, out)


@settings(max_examples=20)
@given(quadric_ideals())
def test_t2_of_residue_field_is_m_of_ideal(R):
    res = rat_of_ring(R, 2)
    B = res.betti
    assert B.t(2) == R.m_I
    assert res.value >= R.m_I - 1


def test_differentials_compose_to_zero_and_are_minimal():
    R = make_ring(("x", "y", "z"), ["x^2 + y*z"])
    sl, B = resolve_minimal(power_ideal_module(R, 1), 3, keep_maps=True)
    for i in range(2, 4):
        d_i, d_prev = sl.differentials[i], sl.differentials[i - 1]
        for row in d_i:
            for col in range(len(d_prev[0])):
                acc = R.poly_ring.zero()
                for k, f in enumerate(row):
                    acc = acc + f * d_prev[k][col]
                assert R.reduce(acc).is_zero()
            assert all(f.is_zero() or f.degree >= 1 for f in row)


def test_free_module_has_trivial_resolution():
    R = make_ring(("x", "y"), ["x*y"])
    _, B = resolve_minimal(free_module(R, 2), 4)
    assert B.entries == {(0, 2): 1}
    assert rate_truncated(B) is NEG_INF


def test_rate_is_a_fraction():
    R = make_ring(("x", "y"), ["x^3"])
    _, B = resolve_minimal(residue_field_module(R), 4)
    assert rate_truncated(B) == Fraction(3, 2)


def test_betti_text_layout():
    R = make_ring(("x",), ["x^3"])
    _, B = resolve_minimal(residue_field_module(R), 3)
    assert betti_text(B) == (
        "       0 1 2 3\n"
        "    0: 1 1 . .\n"
        "    1: . . 1 1\n"
        "total: 1 1 1 1\n"
        f"cutoffs: N=3 D={B.D}\n"
        "truncated columns: none"
    )
    keys = set(B.to_dict())
    assert {"betti", "t", "reg_trunc", "rate_trunc", "truncated_columns"} <= keys


def test_truncation_is_reported():
    R = make_ring(("x",), ["x^3"])
    _, B = resolve_minimal(residue_field_module(R), 4, D=4)
    # t_4 = 6 lies above D; column 3 is exact in value but not certified
    assert B.truncated_columns() == [3, 4]
    assert B.t(4) is NEG_INF
    assert B.entries == {(0, 0): 1, (1, 1): 1, (2, 3): 1, (3, 4): 1}
