"""Automorphism groups by brute-force search over generator images."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

from .groups import (
    AutomorphismsOf,
    FiniteGroup,
    GroupHom,
    Subgroup,
    _graph_closure,
    center,
    enumerate_group,
    hom,
    is_normal,
    nilpotency_class,
    subgroup,
)

AUT_BOUND = 256
# largest number of generator-image tuples the search will try
SEARCH_BOUND = 2 * 10**5


class AutSearchTooLarge(ValueError):
    pass


def _images_to_perm(X: FiniteGroup, images) -> tuple[int, ...] | None:
    graph = _graph_closure(X, X, list(zip(X.generators, images)))
    if graph is None or len(set(graph.values())) != X.order:
        return None
    return tuple(graph[g] for g in X)


def automorphisms(X: FiniteGroup, *, pruned: bool = True, bound: int = AUT_BOUND) -> list[tuple[int, ...]]:
    """All automorphisms of X as permutations of ids, sorted lexicographically.

    With ``pruned`` the image of each generator is restricted to elements of the
    same order, and central generators to central elements.
    """
    if X.order > bound:
        raise AutSearchTooLarge(f"|X| = {X.order} exceeds automorphism search bound {bound}")
    key = ("automorphisms", pruned)
    if key in X.cache:
        return X.cache[key]
    if pruned:
        orders = X.element_orders
        Z = center(X)
        cands = []
        for g in X.generators:
            pool = [h for h in X if orders[h] == orders[g]]
            if g in Z:
                pool = [h for h in pool if h in Z]
            cands.append(pool)
    else:
        cands = [list(X) for _ in X.generators]
    space = prod(len(c) for c in cands)
    if space > SEARCH_BOUND:
        raise AutSearchTooLarge(f"automorphism search over {space} generator images exceeds {SEARCH_BOUND}")
    found = set()
    for images in product(*cands):
        perm = _images_to_perm(X, images)
        if perm is not None:
            found.add(perm)
    result = sorted(found)
    X.cache[key] = result
    return result


def _group_from_perms(X: FiniteGroup, perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    """Enumerate the group of the given (closed) set of automorphisms from a greedy generating set."""
    real = AutomorphismsOf(X)
    gens: list[tuple[int, ...]] = []
    span = {real.identity}
    for p in perms:
        if len(span) == len(perms):
            break
        if p not in span:
            gens.append(p)
            span = set(enumerate_group(real, gens).elements)
    G = enumerate_group(real, gens, name=name)
    if G.order != len(perms):
        raise AssertionError("automorphism set is not closed under composition")
    return G


def aut_group(X: FiniteGroup, bound: int = AUT_BOUND) -> FiniteGroup:
    if "aut" not in X.cache:
        X.cache["aut"] = _group_from_perms(X, automorphisms(X, bound=bound), f"Aut({X.name})")
    return X.cache["aut"]


def is_central_automorphism(X: FiniteGroup, perm) -> bool:
    """f(x) x^-1 lies in Z(X) for every x."""
    Z = center(X)
    return all(X.mul(perm[x], X.inv(x)) in Z for x in X)


@dataclass(eq=False)
class CentralAutGroup:
    base: FiniteGroup
    elements: list[tuple[int, ...]]
    group: FiniteGroup
    in_aut: Subgroup

    @property
    def order(self) -> int:
        return len(self.elements)

    def id_of(self, perm) -> int:
        """Id of an automorphism (given as permutation) in ``group``."""
        return self.group.index[tuple(perm)]


def central_auts(X: FiniteGroup, bound: int = AUT_BOUND) -> CentralAutGroup:
    if "aut_c" in X.cache:
        return X.cache["aut_c"]
    A = aut_group(X, bound)
    members = [a for a in A if is_central_automorphism(X, A.elements[a])]
    perms = sorted(A.elements[a] for a in members)
    in_aut = subgroup(A, members)
    assert in_aut.order == len(members), "central automorphisms are not closed"
    assert is_normal(A, in_aut), "Aut_c(X) is not normal in Aut(X)"
    result = CentralAutGroup(X, perms, _group_from_perms(X, perms, f"Aut_c({X.name})"), in_aut)
    X.cache["aut_c"] = result
    return result


def inner_perm(X: FiniteGroup, g: int) -> tuple[int, ...]:
    return tuple(X.conj(g, x) for x in X)


@dataclass(eq=False)
class InnerAuts:
    subgroup: Subgroup       # Inn(X) inside Aut(X)
    map: GroupHom            # X -> Inn(X), g -> conjugation by g
    perms: list[tuple[int, ...]]


def inner_auts(X: FiniteGroup) -> InnerAuts:
    A = aut_group(X)
    gens = [A.index[inner_perm(X, g)] for g in X.generators]
    inn = subgroup(A, gens)
    Inn = inn.as_group()
    images = [Inn.index[inner_perm(X, g)] for g in X.generators]
    phi = hom(X, Inn, images)
    kernel = phi.kernel()
    assert kernel.members == center(X).members, "kernel of X -> Inn(X) is not Z(X)"
    return InnerAuts(inn, phi, sorted(set(inner_perm(X, g) for g in X)))


def lemma_check(X: FiniteGroup) -> tuple[bool, bool]:
    """(Inn(X) <= Aut_c(X), X has class <= 2). The two always agree."""
    inn_central = all(is_central_automorphism(X, inner_perm(X, g)) for g in X.generators)
    c = nilpotency_class(X)
    return inn_central, c is not None and c <= 2
