import random

import pytest
from hypothesis import given, strategies as st

from nil2kit.freenil2 import (
    FreeNil2Group,
    Nil2Element,
    Nil2HomError,
    comparison_map,
    coproduct,
    flat,
    hom,
    lacc_counterexample,
    structure_report,
)
from nil2kit.presentation import parse_relation

F = FreeNil2Group(["g1", "g2", "g3"])
K = FreeNil2Group(["x", "y", "z", "w"], killed=[("x", "z"), ("y", "w")])


def elements(G, bound=6):
    return st.builds(
        Nil2Element,
        st.tuples(*[st.integers(-bound, bound)] * G.n),
        st.tuples(*[st.integers(-bound, bound)] * len(G.pairs)),
    )


def naive_power(G, p, k):
    out = G.identity()
    step = p if k >= 0 else G.inv(p)
    for _ in range(abs(k)):
        out = G.mul(out, step)
    return out


def test_sign_convention():
    g1, g2, _ = F.gens()
    assert F.mul(g1, g2) == F.element([1, 1, 0])
    assert F.mul(g2, g1) == F.element([1, 1, 0], {("g1", "g2"): -1})
    for i in range(3):
        for j in range(i + 1, 3):
            assert F.commutator(F.generator(i), F.generator(j)) == F.element(e={(i, j): 1})


@given(elements(F), elements(F), elements(F))
def test_associativity_and_identity(p, q, r):
    assert F.mul(F.mul(p, q), r) == F.mul(p, F.mul(q, r))
    assert F.mul(p, F.identity()) == p == F.mul(F.identity(), p)
    assert F.is_identity(F.mul(p, F.inv(p))) and F.is_identity(F.mul(F.inv(p), p))


@given(elements(K), elements(K), elements(K))
def test_class_two_laws_with_killed_pairs(p, q, r):
    c = K.commutator(p, q)
    assert K.is_identity(K.commutator(c, r))
    assert K.commutator(p, K.mul(q, r)) == K.mul(K.commutator(p, q), K.commutator(p, r))
    assert K.is_central(c)


@given(elements(F), st.integers(-9, 9))
def test_power_closed_form(p, k):
    assert F.power(p, k) == naive_power(F, p, k)


def test_killed_pairs_commute():
    x, y, z, w = K.gens()
    assert K.is_identity(K.commutator(x, z)) and K.is_identity(K.commutator(w, y))
    assert not K.is_identity(K.commutator(x, y))
    assert len(K.pairs) == 4


def test_hom_checks_killed_pairs():
    H = FreeNil2Group(["s", "t"])
    s, t = H.gens()
    with pytest.raises(Nil2HomError) as err:
        hom(K, H, [s, t, t, s])
    assert err.value.witness == ("x", "z")
    phi = hom(K, H, [s, t, s, t])
    rng = random.Random(1)
    for _ in range(200):
        p, q = K.random_element(rng), K.random_element(rng)
        assert phi(K.mul(p, q)) == H.mul(phi(p), phi(q))


def test_from_relations_rejects_other_kinds():
    FreeNil2Group.from_relations(["x", "u"], [parse_relation("[x,u]=1")])
    with pytest.raises(ValueError):
        FreeNil2Group.from_relations(["x"], [parse_relation("x^5=1")])


@pytest.mark.parametrize("n", range(0, 6))
def test_commutator_rank_of_free_group(n):
    G = FreeNil2Group([f"g{i}" for i in range(n)])
    assert structure_report(G)["commutator_rank"] == n * (n - 1) // 2


def test_coproduct_of_two_cyclic_groups_is_heisenberg():
    G = coproduct(FreeNil2Group(["x"]), FreeNil2Group(["y"]))
    rep = structure_report(G)
    assert rep["isomorphism_type"] == "H3" and rep["commutator_rank"] == 1
    with pytest.raises(ValueError):
        coproduct(G, FreeNil2Group(["x"]))


def test_flat_structures():
    one = flat(["b"], ["x"])
    r1 = structure_report(one.kernel)
    assert (r1["abelianization_rank"], r1["commutator_rank"], r1["isomorphism_type"]) == (2, 0, "Z^2")
    two = flat(["b"], ["x", "y"])
    r2 = structure_report(two.kernel)
    assert (r2["abelianization_rank"], r2["commutator_rank"], r2["center_rank"]) == (4, 1, 3)
    assert r2["isomorphism_type"] == "H3 x Z^2"


def test_flat_embedding_lands_in_kernel():
    fl = flat(["b"], ["x", "y"])
    rng = random.Random(3)
    for _ in range(300):
        p = fl.kernel.random_element(rng)
        image = fl.embedding(p)
        assert fl.in_kernel(image)
        assert fl.total.n and fl.base.n
        assert fl.base.is_identity(fl.projection(image))


def test_kernel_coordinates_closed_under_multiplication():
    fl = flat(["b", "c"], ["x"])
    T = fl.total
    rng = random.Random(4)
    members = []
    while len(members) < 50:
        p = T.random_element(rng, 3)
        p = T.element([0, 0] + list(p.a[2:]), {})
        p = T.mul(p, T.commutator(T.generator("b"), T.power(T.generator("x"), rng.randint(-3, 3))))
        members.append(p)
    for p in members:
        for q in members[:10]:
            assert fl.in_kernel(T.mul(p, q)) and fl.in_kernel(T.inv(p))


def test_comparison_map_kills_three_commutators():
    D, C, phi, fxy, _ = comparison_map()
    g = {n: D.generator(n) for n in D.names}
    for a, b in [("x", "v"), ("y", "u"), ("u", "v")]:
        assert not D.is_identity(D.commutator(g[a], g[b]))
        assert C.is_identity(phi(D.commutator(g[a], g[b])))
    assert not C.is_identity(phi(D.commutator(g["x"], g["y"])))


def test_lacc_report_passes():
    rep = lacc_counterexample()
    assert rep["pass"] and len(rep["verdicts"]) == 10
