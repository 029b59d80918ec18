from math import gcd

import pytest

from nil2kit.automorphisms import (
    AutSearchTooLarge,
    aut_group,
    automorphisms,
    central_auts,
    inner_auts,
    is_central_automorphism,
    lemma_check,
)
from nil2kit.catalog import alternating4, cyclic_product, dihedral8, quaternion8, small_groups, symmetric3, unitriangular
from nil2kit.groups import center, nilpotency_class


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12])
def test_aut_of_cyclic_group_is_units(n):
    assert len(automorphisms(cyclic_product([n]))) == sum(1 for k in range(n) if gcd(k, n) == 1)


@pytest.mark.parametrize("G, order", [
    (cyclic_product([2, 2]), 6),
    (cyclic_product([2, 2, 2]), 168),
    (cyclic_product([4, 2]), 8),
    (dihedral8(), 8),
    (quaternion8(), 24),
    (symmetric3(), 6),
    (alternating4(), 24),
    (unitriangular(3, 3), 432),
])
def test_aut_orders(G, order):
    assert aut_group(G).order == order


def test_pruned_search_matches_unpruned_oracle():
    for G in small_groups():
        assert automorphisms(G) == automorphisms(G, pruned=False), G.name


@pytest.mark.parametrize("G, order", [
    (cyclic_product([2, 2]), 6),
    (cyclic_product([4]), 2),
    (dihedral8(), 4),
    (quaternion8(), 4),
    (unitriangular(3, 3), 9),
    (symmetric3(), 1),
])
def test_central_aut_orders(G, order):
    assert central_auts(G).order == order


def test_central_auts_by_definition():
    for G in small_groups():
        Z = center(G).members
        direct = [p for p in automorphisms(G) if all(G.mul(p[x], G.inv(x)) in Z for x in G)]
        assert central_auts(G).elements == sorted(direct)
        assert all(is_central_automorphism(G, p) for p in direct)


def test_klein_central_auts_not_nilpotent():
    C = central_auts(cyclic_product([2, 2]))
    assert nilpotency_class(C.group) is None


def test_inner_automorphisms():
    for G in (dihedral8(), quaternion8(), unitriangular(3, 3), symmetric3()):
        inn = inner_auts(G)
        assert inn.subgroup.order * center(G).order == G.order


def test_lemma_agrees_everywhere():
    for G in small_groups() + [alternating4(), unitriangular(4, 2), unitriangular(3, 3)]:
        inn_central, class2 = lemma_check(G)
        assert inn_central == class2, G.name


def test_search_bound():
    with pytest.raises(AutSearchTooLarge):
        automorphisms(cyclic_product([5, 5, 5]))
    with pytest.raises(AutSearchTooLarge):
        automorphisms(cyclic_product([2] * 9))
