"""The abelian group T receiving every 2-nilpotent action on a finite X.

T is the colimit, in abelian groups, of the inclusion poset of admissible
subgroups M of Aut_c(X): abelian subgroups in which every element fixes the
displacements f(x) x^-1 of every other element. An action xi of B on X is sent
to tau_B(xi): B -> M_xi -> T, where M_xi is the image of b -> (b * -).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import (
    AbelianCoordinates,
    AbelianHom,
    FgAbelianGroup,
    ThinDiagram,
    colimit,
    from_finite_abelian,
    is_injective,
)
from .actions import DerivedAction, action_from_hom, check_acting_morphism, pullback_action
from .automorphisms import CentralAutGroup, central_auts
from .groups import FiniteGroup, Subgroup, homomorphisms, nilpotency_class, subgroup, trivial_subgroup

ADMISSIBLE_BOUND = 10**4


class AdmissibleBoundExceeded(ValueError):
    pass


class WeakRepError(RuntimeError):
    """An internal-consistency failure (an action whose image is not admissible)."""


@dataclass(eq=False)
class AdmissibleSubgroup:
    subgroup: Subgroup               # inside central_auts(X).group
    coords: AbelianCoordinates

    @property
    def abelian(self) -> FgAbelianGroup:
        return self.coords.group

    @property
    def order(self) -> int:
        return self.subgroup.order


def _displacement_table(X: FiniteGroup, autc: CentralAutGroup) -> tuple[np.ndarray, np.ndarray]:
    """perms[a] is the permutation of automorphism a; disp[a, x] = a(x) x^-1."""
    perms = np.array(autc.group.elements, dtype=np.int64).reshape(autc.group.order, X.order)
    if X.table is not None:
        disp = X.table[perms, X.inverses[None, :]]
    else:
        disp = np.array([[X.mul(int(p[x]), X.inv(x)) for x in X] for p in perms], dtype=np.int64)
    return perms, disp


def compatibility(X: FiniteGroup) -> np.ndarray:
    """compat[f, g]: f and g commute and each fixes the other's displacements."""
    autc = central_auts(X)
    G = autc.group
    perms, disp = _displacement_table(X, autc)
    n = G.order
    fixes = np.empty((n, n), dtype=bool)   # fixes[g, f]: g fixes every value of disp[f]
    for g in range(n):
        fixes[g] = np.all(perms[g][disp] == disp, axis=1)
    commute = np.array([[G.mul(f, g) == G.mul(g, f) for g in G] for f in G], dtype=bool)
    return fixes & fixes.T & commute


def is_admissible(X: FiniteGroup, members) -> bool:
    """Direct check over all pairs of members and all x (used as an oracle)."""
    G = central_auts(X).group
    members = list(members)
    for f in members:
        pf = G.elements[f]
        for g in members:
            pg = G.elements[g]
            if G.mul(f, g) != G.mul(g, f):
                return False
            for x in X:
                d = X.mul(pf[x], X.inv(x))
                if pg[d] != d:
                    return False
    return True


def admissible_subgroups(X: FiniteGroup, bound: int = ADMISSIBLE_BOUND) -> list[AdmissibleSubgroup]:
    """Every admissible subgroup of Aut_c(X), sorted by (order, members).

    Admissibility is a pairwise condition that survives products, so a subgroup
    is admissible iff it is generated by pairwise compatible, self-compatible
    elements; the search grows subgroups one compatible element at a time.
    """
    if "admissible" in X.cache:
        return X.cache["admissible"]
    autc = central_auts(X)
    G = autc.group
    if G.order > bound:
        raise AdmissibleBoundExceeded(f"|Aut_c(X)| = {G.order} exceeds the subgroup enumeration bound {bound}")
    compat = compatibility(X)
    candidates = [g for g in G if g and compat[g, g]]
    start = trivial_subgroup(G)
    found = {start.members: start}
    frontier = [start]
    while frontier:
        nxt = []
        for M in frontier:
            for g in candidates:
                if g in M or not all(compat[g, h] for h in M.generators):
                    continue
                N = subgroup(G, list(M.generators) + [g])
                if N.members not in found:
                    found[N.members] = N
                    nxt.append(N)
        frontier = nxt
    subs = sorted(found.values(), key=lambda S: (S.order, sorted(S.members)))
    out = [AdmissibleSubgroup(S, from_finite_abelian(G, S.generators, S.members)) for S in subs]
    X.cache["admissible"] = out
    return out


@dataclass(eq=False)
class WeakRepresentation:
    target: FiniteGroup
    autc: CentralAutGroup
    subgroups: list[AdmissibleSubgroup]
    diagram: ThinDiagram
    T: FgAbelianGroup
    legs: list[AbelianHom]
    position: dict = field(default_factory=dict)   # frozenset(members) -> index

    def leg_value(self, i: int, a: int) -> tuple[int, ...]:
        """Canonical T-coordinates of j_{M_i}(a) for an automorphism id a in M_i."""
        return self.T.canonical(self.legs[i](self.subgroups[i].coords.coords[a]))

    def legs_injective(self) -> list[bool]:
        return [is_injective(h) for h in self.legs]

    def legs_commute(self) -> bool:
        return all(self.legs[j].compose(h).equals(self.legs[i]) for (i, j), h in self.diagram.arrows.items())

    def summary(self) -> dict:
        return {
            "target": self.target.name,
            "aut_c_order": self.autc.order,
            "admissible_subgroups": len(self.subgroups),
            "admissible_orders": [M.order for M in self.subgroups],
            "T": self.T.describe(),
            "legs_injective": all(self.legs_injective()),
            "legs_commute": self.legs_commute(),
        }


def build_T(X: FiniteGroup, bound: int = ADMISSIBLE_BOUND) -> WeakRepresentation:
    subs = admissible_subgroups(X, bound)
    objects = [M.abelian for M in subs]
    arrows = {}
    for i, Mi in enumerate(subs):
        for j, Mj in enumerate(subs):
            if i != j and Mi.subgroup.members < Mj.subgroup.members:
                cols = [Mj.coords.coords[g] for g in Mi.coords.generators]
                mat = [[c[r] for c in cols] for r in range(Mj.abelian.n)]
                arrows[(i, j)] = AbelianHom(objects[i], objects[j], mat)
    D = ThinDiagram(objects, arrows)
    if not D.check_thin():
        raise WeakRepError("inclusion diagram is not thin")
    T, legs = colimit(D)
    position = {M.subgroup.members: i for i, M in enumerate(subs)}
    return WeakRepresentation(X, central_auts(X), subs, D, T, legs, position)


@dataclass(frozen=True)
class TauValue:
    """tau_B(xi) as the tuple of T-coordinates of b, for b in B's id order."""

    values: tuple[tuple[int, ...], ...]
    image: int                      # index of M_xi among the admissible subgroups
    rho: tuple[int, ...]            # b -> id of (b * -) in Aut_c(X)


def tau(wr: WeakRepresentation, xi: DerivedAction) -> TauValue:
    if xi.target is not wr.target:
        raise ValueError("action targets a different group")
    xi.require("nil2")
    index = wr.autc.group.index
    try:
        rho = tuple(index[tuple(row)] for row in xi.table.tolist())
    except KeyError:
        raise WeakRepError("an action value is not a central automorphism") from None
    i = wr.position.get(frozenset(rho))
    if i is None:
        raise WeakRepError("image of the action is not an admissible subgroup")
    return TauValue(tuple(wr.leg_value(i, a) for a in rho), i, rho)


def nil2_actions(B: FiniteGroup, X: FiniteGroup) -> list[DerivedAction]:
    """All 2-nilpotent actions of B on X, one per acting morphism B -> Aut_c(X)."""
    G = central_auts(X).group
    return [action_from_hom(phi, X) for phi in homomorphisms(B, G) if check_acting_morphism(phi, X)]


def _class_at_most_2(G: FiniteGroup) -> bool:
    c = nilpotency_class(G)
    return c is not None and c <= 2


def tau_injectivity_check(X: FiniteGroup, catalog: list[FiniteGroup], wr: WeakRepresentation | None = None) -> dict:
    """Injectivity of tau_B for each B, completeness of images and naturality along every f: B' -> B."""
    wr = wr or build_T(X)
    groups = [B for B in catalog if _class_at_most_2(B)]
    skipped = [B.name for B in catalog if not _class_at_most_2(B)]
    per_b = []
    actions: dict[int, list[DerivedAction]] = {}
    taus: dict[int, list[TauValue]] = {}
    ok = True
    for k, B in enumerate(groups):
        acts = nil2_actions(B, X)
        values = []
        complete = True
        for xi in acts:
            try:
                values.append(tau(wr, xi))
            except WeakRepError:
                complete = False
        actions[k], taus[k] = acts, values
        injective = complete and _injective(acts, values)
        ok &= injective
        per_b.append({"B": B.name, "order": B.order, "actions": len(acts), "injective": injective, "images_admissible": complete})
    squares = 0
    natural_fail = None
    for k2, B2 in enumerate(groups):
        for k, B in enumerate(groups):
            if not taus[k]:
                continue
            for f in homomorphisms(B2, B):
                ft = f.table.tolist()
                for xi, tv in zip(actions[k], taus[k]):
                    lhs = tau(wr, pullback_action(xi, f)).values
                    rhs = tuple(tv.values[b] for b in ft)
                    squares += 1
                    if lhs != rhs and natural_fail is None:
                        natural_fail = {"B'": B2.name, "B": B.name, "f": list(f.images)}
    return {
        "target": X.name,
        "weak_representation": wr.summary(),
        "per_B": per_b,
        "skipped_not_class_2": skipped,
        "injective": ok,
        "naturality_squares": squares,
        "natural": natural_fail is None,
        "naturality_witness": natural_fail,
        "pass": ok and natural_fail is None and wr.summary()["legs_commute"],
    }


def _injective(acts: list[DerivedAction], values: list[TauValue]) -> bool:
    """Equal tau forces equal image, then equal rho', then equal action."""
    seen: dict[tuple, int] = {}
    for n, tv in enumerate(values):
        m = seen.setdefault(tv.values, n)
        if m == n:
            continue
        other = values[m]
        if other.image != tv.image or other.rho != tv.rho or acts[m] != acts[n]:
            return False
    return True
