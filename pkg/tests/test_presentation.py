import pytest
from hypothesis import given, strategies as st

from nil2kit.catalog import unitriangular
from nil2kit.presentation import (
    Commutator,
    Power,
    PresentationSyntaxError,
    evaluate,
    format_word,
    parse_relation,
    parse_relator,
    parse_word,
    relations_hold,
)


@pytest.mark.parametrize("text, kind", [
    ("x^5=1", "power"),
    ("[x,a]=b^-1", "commutator"),
    ("[x,u]=1", "killing"),
    ("x a x^-1 a^-1", "general"),
    ("[x,b]", "killing"),
])
def test_relation_kinds(text, kind):
    assert parse_relation(text).kind == kind


def test_structure_of_parsed_words():
    r = parse_relator("[x,a]=b^-1")
    assert r.lhs == (Commutator("x", "a"),)
    assert r.rhs == (Power("b", -1),)
    assert parse_word("x⁻¹ y^{3}*z") == (Power("x", -1), Power("y", 3), Power("z"))
    assert parse_word("1") == ()
    assert format_word(()) == "1"


def test_alphabet_is_longest_match_and_strict():
    assert parse_word("ux", ["u", "ux", "x"]) == (Power("ux"),)
    with pytest.raises(PresentationSyntaxError) as err:
        parse_relation("[x,q]=1", ["x", "a"])
    assert err.value.offset == 3


@pytest.mark.parametrize("bad, offset", [("x^", 2), ("[x,y", 4), ("x=y=z", 3), ("", 0), ("x^a", 2), ("[x y]", 3)])
def test_syntax_errors_carry_byte_offsets(bad, offset):
    with pytest.raises(PresentationSyntaxError) as err:
        parse_relation(bad)
    assert err.value.offset == offset


def test_offsets_count_bytes_not_characters():
    with pytest.raises(PresentationSyntaxError) as err:
        parse_relation("x⁻¹ ^")
    assert err.value.offset == len("x⁻¹ ".encode())


names = st.sampled_from(["x", "a", "b", "u1", "v_2"])
atoms = st.one_of(
    st.builds(Power, names, st.integers(-7, 7).filter(lambda k: k != 0)),
    st.builds(Commutator, names, names),
)


@given(st.lists(atoms, max_size=6), st.lists(atoms, max_size=6))
def test_format_parse_round_trip(lhs, rhs):
    text = f"{format_word(tuple(lhs))}={format_word(tuple(rhs))}"
    r = parse_relation(text)
    assert (r.lhs, r.rhs) == (tuple(lhs), tuple(rhs))
    assert parse_relation(str(r)) == r


def test_z5_presentation_holds_in_matrix_realization():
    G = unitriangular(3, 5)
    real = G.realization
    x = real.normalize([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    a = real.normalize([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    rels = [parse_relation(t) for t in ["[x,a]=b^-1", "[x,b]=1", "x^5=1", "a^5=1", "b^5=1"]]
    good = {"x": x, "a": a, "b": real.normalize([[1, 0, -1], [0, 1, 0], [0, 0, 1]])}
    assert relations_hold(rels, good, real.mul, real.inv, real.identity) == []
    wrong = dict(good, b=real.normalize([[1, 0, 1], [0, 1, 0], [0, 0, 1]]))
    assert relations_hold(rels, wrong, real.mul, real.inv, real.identity) == [rels[0]]


def test_evaluate_integers():
    add = lambda u, v: u + v
    neg = lambda u: -u
    assert evaluate(parse_word("x^3 y^-2 [x,y]"), {"x": 5, "y": 7}, add, neg, 0) == 1
