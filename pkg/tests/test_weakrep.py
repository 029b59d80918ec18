from itertools import combinations

import pytest

from nil2kit.actions import conjugation_action, trivial_action
from nil2kit.automorphisms import central_auts, inner_perm
from nil2kit.catalog import cyclic_product, dihedral8, load_catalog, quaternion8, trivial_group, unitriangular
from nil2kit.groups import closed_under_products
from nil2kit.weakrep import (
    AdmissibleBoundExceeded,
    admissible_subgroups,
    build_T,
    is_admissible,
    nil2_actions,
    tau,
    tau_injectivity_check,
)

TARGETS = [cyclic_product([2, 2]), cyclic_product([4]), dihedral8(), quaternion8(), unitriangular(3, 3), trivial_group()]


def all_subgroups(G):
    out = []
    for k in range(1, G.order + 1):
        for subset in combinations(range(1, G.order), k - 1):
            members = (0,) + subset
            if closed_under_products(G, members):
                out.append(frozenset(members))
    return out


@pytest.mark.parametrize("X", TARGETS, ids=lambda X: X.name)
def test_admissible_subgroups_match_exhaustive_oracle(X):
    G = central_auts(X).group
    expected = {S for S in all_subgroups(G) if is_admissible(X, S)}
    found = [M.subgroup.members for M in admissible_subgroups(X)]
    assert set(found) == expected and len(found) == len(expected)


def test_klein_admissible_subgroups():
    subs = admissible_subgroups(cyclic_product([2, 2]))
    assert [M.order for M in subs] == [1, 2, 2, 2]   # the order-3 rotation subgroup is excluded


@pytest.mark.parametrize("X, factors", [
    (cyclic_product([2, 2]), (2, 2, 2)),
    (cyclic_product([4]), (2,)),
    (trivial_group(), ()),
    (cyclic_product([3]), ()),
    (dihedral8(), (2, 2)),
    (unitriangular(3, 3), (3, 3)),
])
def test_T_golden_values(X, factors):
    wr = build_T(X)
    assert wr.T.invariant_factors == factors
    assert all(wr.legs_injective()) and wr.legs_commute()


@pytest.mark.parametrize("X", TARGETS, ids=lambda X: X.name)
def test_T_equals_top_when_poset_has_a_maximum(X):
    wr = build_T(X)
    top = max(wr.subgroups, key=lambda M: M.order)
    if all(M.subgroup.members <= top.subgroup.members for M in wr.subgroups):
        assert wr.T.invariant_factors == top.abelian.invariant_factors


def test_tau_of_trivial_action_is_zero():
    X = cyclic_product([2, 2])
    wr = build_T(X)
    B = cyclic_product([4])
    tv = tau(wr, trivial_action(B, X))
    assert all(v == wr.T.zero() for v in tv.values)


def test_tau_of_conjugation_factors_through_inner_leg():
    X = dihedral8()
    wr = build_T(X)
    tv = tau(wr, conjugation_action(X))
    autc = central_auts(X)
    inn = frozenset(autc.id_of(inner_perm(X, g)) for g in X)
    assert wr.subgroups[tv.image].subgroup.members == inn


def test_distinct_actions_have_distinct_tau():
    X = cyclic_product([2, 2])
    wr = build_T(X)
    B = cyclic_product([2, 2])
    acts = nil2_actions(B, X)
    values = {tau(wr, xi).values for xi in acts}
    assert len(acts) == 10 and len(values) == len(acts)


def test_injectivity_and_naturality_report():
    X = cyclic_product([4])
    rep = tau_injectivity_check(X, load_catalog())
    assert rep["pass"] and rep["natural"] and rep["injective"]
    assert rep["skipped_not_class_2"] == ["S3"]
    assert rep["naturality_squares"] > 1000


def test_bound():
    with pytest.raises(AdmissibleBoundExceeded):
        admissible_subgroups(cyclic_product([2, 2, 2]), bound=10)
