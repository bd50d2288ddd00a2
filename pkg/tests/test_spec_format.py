import pytest
from hypothesis import given
from hypothesis import strategies as st

from veronese_rate.polynomial import PolyRing
from veronese_rate.spec_format import (ParseError, SessionSpec, parse_check, parse_corpus,
                                       parse_polynomial, parse_session)


def test_parse_examples():
    S = PolyRing(["x", "y"], 7)
    x, y = S.gens()
    f = parse_polynomial("x^2 - y^2", S)
    assert f == x ** 2 + 6 * y ** 2
    S = PolyRing(["x", "y"], 32003)
    x, y = S.gens()
    assert parse_polynomial("3x*y + y^2", S) == 3 * x * y + y ** 2
    assert parse_polynomial("  3 x y+y ^ 2 ", S) == 3 * x * y + y ** 2
    assert parse_polynomial("-x^2", S) == -(x ** 2)


@pytest.mark.parametrize("text,offset", [("x^", 2), ("", 0), ("x+", 2), ("z", 0), ("x*", 2), ("x^2 y3", 4)])
def test_parse_errors_report_offsets(text, offset):
    S = PolyRing(["x", "y"], 32003)
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, S)
    assert err.value.offset == offset


def test_session_rejects_inhomogeneous():
    with pytest.raises(ParseError, match="x\\^2 \\+ y"):
        parse_session("vars = x, y\nideal = x^2 + y\n")
    with pytest.raises(ParseError, match="degree below 2"):
        parse_session("vars = x, y\nideal = x\n")


def test_session_errors_are_offsets_in_file():
    text = "vars = x\nideal = x^\n"
    with pytest.raises(ParseError) as err:
        parse_session(text)
    assert text.encode()[err.value.offset - 2:err.value.offset] == b"x^"


def test_unknown_key_and_kind():
    with pytest.raises(ParseError):
        parse_session("vars = x\nfoo = 1\n")
    with pytest.raises(ParseError):
        parse_session("vars = x\nmodule.kind = sheaf\n")


names = st.sampled_from(["x", "y", "z"])
term = st.tuples(st.integers(1, 9), st.lists(st.tuples(names, st.integers(1, 3)), min_size=1, max_size=3))


@st.composite
def specs(draw):
    vars_ = ("x", "y", "z")
    ideal = []
    for _ in range(draw(st.integers(0, 2))):
        deg = draw(st.integers(2, 3))
        monos = draw(st.lists(st.lists(names, min_size=deg, max_size=deg), min_size=1, max_size=3))
        ideal.append(" + ".join(f"{draw(st.integers(1, 6))}*" + "*".join(m) for m in monos))
    kind = draw(st.sampled_from(["residue-field", "max-ideal-power", "veronese-piece", "coker"]))
    spec = SessionSpec(char=draw(st.sampled_from([5, 7, 32003])), vars=vars_, ideal=tuple(ideal),
                       module_kind=kind)
    if kind == "max-ideal-power":
        spec.module_s = draw(st.integers(1, 3))
    if kind == "veronese-piece":
        spec.module_c = draw(st.integers(1, 3))
        spec.module_d = draw(st.integers(0, spec.module_c - 1))
    if kind == "coker":
        spec.module_matrix = (("x", "y"), ("y", "z"))
        spec.module_shifts = (0, 0)
    spec.twist = draw(st.integers(-2, 2))
    spec.cutoffs = draw(st.dictionaries(st.sampled_from(["N", "D", "G"]), st.integers(0, 9)))
    return spec


@given(specs())
def test_session_round_trip(spec):
    text = spec.serialize()
    again, _ = parse_session(text)
    assert again == spec
    assert again.serialize() == text


def test_corpus_blocks():
    text = "name = a\nvars = x\nideal = x^3\ncheck = backelin c=2\n---\nname = b\nvars = x, y\ninject = 1\n"
    blocks = parse_corpus(text)
    assert [b.name for b in blocks] == ["a", "b"]
    assert blocks[0].checks == [("backelin", {"c": 2})]
    assert blocks[1].inject == 1
    assert parse_check("versyz c=3 d=1") == ("versyz", {"c": 3, "d": 1})
