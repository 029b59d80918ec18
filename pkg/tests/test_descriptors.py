import json

import pytest
from hypothesis import given, strategies as st

from nil2kit.catalog import load_catalog
from nil2kit.checks import fixture, fixture_path
from nil2kit.descriptors import (
    Descriptor,
    DescriptorError,
    load_action,
    load_group,
    load_span,
    normalize,
)
from nil2kit.freenil2 import FreeNil2Group
from nil2kit.groups import HomomorphismError


def test_catalog_fixture():
    groups = load_catalog()
    assert len(groups) == 15
    assert sorted(G.order for G in groups) == [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8, 27]
    assert {"D4", "Q8", "UT3(Z3)", "S3"} <= {G.name for G in groups}


def test_presentation_with_realization():
    B = load_group(fixture("z5_actor.json"))
    assert B.order == 125 and B.name == "B"


def test_killing_only_presentation_is_free_nil2():
    G = load_group({"type": "presentation_nil2", "generators": ["x", "u"], "relations": ["[x,u]=1"]})
    assert isinstance(G, FreeNil2Group) and not G.pairs


def test_presentation_errors():
    base = {"type": "presentation_nil2", "generators": ["x", "a", "b"]}
    with pytest.raises(DescriptorError):
        load_group(dict(base, relations=["x^5=1"]))          # needs a realization
    with pytest.raises(DescriptorError):
        load_group(dict(base, relations=["[x,q]=1"]))        # unknown generator
    wrong = fixture("z5_actor.json")
    wrong["realization"]["images"]["b"] = [1, 0, 1, 0, 1, 0, 0, 0, 1]
    with pytest.raises(DescriptorError, match=r"\[x,a\]=b\^-1"):
        load_group(wrong)


@pytest.mark.parametrize("bad", [
    {"moduli": [2]},
    {"type": "mystery"},
    {"type": "cyclic_product"},
    {"type": "cyclic_product", "moduli": [0]},
    {"type": "matrix_group", "modulus": 3, "generators": [[1, 0, 0]]},
    {"type": "semidirect", "base": {"type": "cyclic_product", "moduli": [2]}},
    [1, 2],
])
def test_malformed_descriptors(bad):
    with pytest.raises(DescriptorError):
        normalize(bad)


def test_action_descriptors():
    B = load_group({"type": "cyclic_product", "moduli": [2]})
    X = load_group({"type": "cyclic_product", "moduli": [3]})
    inv = load_action({"type": "automorphisms", "images": [[0, 2, 1]]}, B, X)
    assert inv.level == "group"
    assert load_action({"type": "table", "table": [[0, 1, 2], [0, 2, 1]]}, B, X) == inv
    assert load_action({"type": "trivial"}, B, X).level == "nil2"
    with pytest.raises(DescriptorError):
        load_action({"type": "table", "table": [[0, 1, 2]]}, B, X)
    with pytest.raises(DescriptorError):
        load_action({"type": "conjugation"}, B, X)
    Z3 = load_group({"type": "cyclic_product", "moduli": [3]})
    with pytest.raises(HomomorphismError):
        load_action({"type": "automorphisms", "images": [[0, 2, 1]]}, Z3, X)   # order 3 -> order 2


def test_semidirect_descriptor():
    d = {"type": "semidirect", "base": {"type": "cyclic_product", "moduli": [2]},
         "fiber": {"type": "cyclic_product", "moduli": [3]}, "action": {"type": "matrices", "images": [[2]]}}
    assert load_group(d).order == 6


def test_span_descriptor():
    f, g = load_span(fixture("span_z.json"))
    assert f.matrix == [[2]] and g.matrix == [[3]]
    with pytest.raises(DescriptorError):
        load_span({"source": {"moduli": [2]}, "left": {"moduli": [3]}, "right": {"moduli": [2]}, "f": [[1]], "g": [[1]]})


def test_fixtures_round_trip():
    for name in ("z5_actor.json", "z5_target.json", "z5_semidirect.json"):
        d = Descriptor.parse(fixture(name))
        assert Descriptor.parse(d.serialize()) == d
        assert Descriptor.parse(json.loads(d.serialize())).digest == d.digest
    with open(fixture_path("catalog.json")) as fh:
        for entry in json.load(fh)["groups"]:
            d = Descriptor.parse(entry)
            assert Descriptor.parse(d.to_json()) == d


relations = st.lists(
    st.sampled_from(["[x,u]=1", "x^5=1", "[x,a]=b^-1", "x a x^-1 a^-1", "[u,a]", "b⁻¹ = x^{2}"]), max_size=4
)
groups = st.one_of(
    st.builds(lambda m: {"type": "cyclic_product", "moduli": m}, st.lists(st.integers(1, 9), max_size=3)),
    st.builds(
        lambda m, g: {"type": "matrix_group", "modulus": m, "generators": g},
        st.integers(2, 7),
        st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=1, max_size=3),
    ),
    st.builds(lambda r: {"type": "presentation_nil2", "generators": ["x", "u", "a", "b"], "relations": r}, relations),
)


@given(groups)
def test_parse_serialize_parse_is_a_fixed_point(d):
    once = Descriptor.parse(d)
    assert Descriptor.parse(once.serialize()) == once
