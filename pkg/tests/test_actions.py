import numpy as np
import pytest

from nil2kit.actions import (
    ActionError,
    DerivedAction,
    action_from_hom,
    action_to_morphism,
    check_acting_morphism,
    conjugation_action,
    derived_action,
    extension_from_action,
    fixed_points,
    image_abelian_check,
    morphism_to_action,
    pullback_action,
    semidirect,
    trivial_action,
    validate_group_action,
    validate_nil2_action,
)
from nil2kit.automorphisms import aut_group, central_auts, is_central_automorphism
from nil2kit.catalog import cyclic_product, dihedral8, quaternion8, symmetric3, unitriangular
from nil2kit.checks import z5_example
from nil2kit.groups import center, hom, homomorphisms, nilpotency_class


def test_trivial_action_is_nil2_and_gives_direct_product():
    B, X = cyclic_product([3]), quaternion8()
    xi = trivial_action(B, X)
    assert xi.level == "nil2"
    G = semidirect(xi)
    assert G.order == 24 and nilpotency_class(G) == 2
    assert fixed_points(xi).order == 8


@pytest.mark.parametrize("X", [dihedral8(), quaternion8(), unitriangular(3, 3)])
def test_conjugation_is_nil2_for_class_two(X):
    xi = conjugation_action(X)
    assert validate_nil2_action(xi)
    am = action_to_morphism(xi)
    assert image_abelian_check(am)
    assert am.image().order == X.order // center(X).order


def test_conjugation_on_s3_is_only_a_group_action():
    xi = conjugation_action(symmetric3())
    assert validate_group_action(xi)
    report = validate_nil2_action(xi)
    assert not report and report.condition == "precondition"
    assert xi.level == "group"
    with pytest.raises(ActionError):
        xi.require("nil2")


def test_group_action_conditions_are_named():
    B, X = cyclic_product([2]), cyclic_product([3])
    bad_identity = DerivedAction(B, X, [[0, 2, 1], [0, 2, 1]])
    assert validate_group_action(bad_identity).condition == "identity"
    not_multiplicative = DerivedAction(B, X, [[0, 1, 2], [1, 0, 2]])
    assert validate_group_action(not_multiplicative).condition in ("compatibility", "multiplicativity")
    B4 = cyclic_product([4])
    incompatible = DerivedAction(B4, X, [[0, 1, 2], [0, 2, 1], [0, 2, 1], [0, 2, 1]])
    r = validate_group_action(incompatible)
    assert r.condition == "compatibility" and r.witness == (1, 1, 1)


def test_table_shape_is_checked():
    with pytest.raises(ValueError):
        DerivedAction(cyclic_product([2]), cyclic_product([3]), [[0, 1, 2]])


def test_inversion_on_z3_fails_fixed_condition():
    B, X = cyclic_product([2]), cyclic_product([3])
    xi = DerivedAction(B, X, [[0, 1, 2], [0, 2, 1]])
    report = validate_nil2_action(xi)
    assert not report and report.condition == "fixed"
    assert nilpotency_class(semidirect(xi)) is None   # S3


def test_split_extension_round_trip():
    X = dihedral8()
    for xi in (conjugation_action(X), trivial_action(X, X)):
        E = extension_from_action(xi)
        assert derived_action(E) == xi


def test_pullback_along_hom():
    X = quaternion8()
    xi = conjugation_action(X)
    B2 = cyclic_product([4])
    for f in homomorphisms(B2, X):
        pulled = pullback_action(xi, f)
        assert pulled.level == "nil2"
        assert all(pulled(b, x) == xi(f(b), x) for b in B2 for x in X)


def test_acting_morphism_round_trip():
    X = dihedral8()
    C = central_auts(X)
    B = cyclic_product([2, 2])
    count = 0
    for phi in homomorphisms(B, C.group):
        xi = morphism_to_action(phi, X)
        back = action_to_morphism(xi).hom
        assert list(back.table) == list(phi.table)
        count += 1
    assert count == 16


def test_non_central_morphism_is_rejected():
    X = dihedral8()
    A = aut_group(X)
    a = next(g for g in A if not is_central_automorphism(X, A.elements[g]))
    phi = hom(cyclic_product([A.element_order(a)]), A, [a])
    report = check_acting_morphism(phi, X)
    assert not report and report.condition == "central"
    with pytest.raises(ActionError) as err:
        morphism_to_action(phi, X)
    assert err.value.report.condition == "central"


def test_z5_example_witness():
    B, X, phi = z5_example()
    assert B.order == 125
    report = check_acting_morphism(phi, X)
    assert report.condition == "act_mor"
    b, c, x = report.witness
    xi = action_from_hom(phi, X)
    d = X.mul(xi(b, x), X.inv(x))
    assert xi(c, d) != d
    G = semidirect(xi)
    assert G.order == 15625 and nilpotency_class(G) == 3


def test_nil2_actions_give_class_two_products():
    X = cyclic_product([2, 2])
    A = aut_group(X)
    B = cyclic_product([2])
    for phi in homomorphisms(B, A):
        xi = action_from_hom(phi, X)
        c = nilpotency_class(semidirect(xi))
        assert bool(validate_nil2_action(xi)) == (c is not None and c <= 2)
        assert np.array_equal(xi.table[0], np.arange(4))
