"""Derived actions B x X -> X, their validation, semidirect products and split extensions.

An action is stored as an explicit |B| x |X| table of target ids, so every
validation is an exhaustive scan. Witnesses are reported in lexicographic id
order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .automorphisms import central_auts
from .groups import (
    AutomorphismsOf,
    CyclicProduct,
    FiniteGroup,
    GroupHom,
    MatrixGroup,
    PairGroup,
    Subgroup,
    SubgroupOf,
    _generating_subset,
    center,
    closed_under_products,
    enumerate_group,
    hom,
    nilpotency_class,
)

LEVELS = ("none", "group", "nil2")
# build the semidirect product to cross-check nil2 validity up to this order
CROSS_CHECK_LIMIT = 4096


class ActionError(ValueError):
    def __init__(self, message: str, report: "Report | None" = None):
        super().__init__(message)
        self.report = report


@dataclass
class Report:
    valid: bool
    condition: str | None = None
    witness: tuple[int, ...] | None = None
    readable: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        out: dict = {"valid": self.valid}
        if not self.valid:
            out["condition"] = self.condition
            out["witness"] = list(self.witness or ())
            out["readable"] = self.readable
        return out


class DerivedAction:
    """A map B x X -> X, (b, x) -> b * x, given as a table of ids."""

    def __init__(self, actor: FiniteGroup, target: FiniteGroup, table):
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (actor.order, target.order):
            raise ValueError(f"action table must have shape {(actor.order, target.order)}, got {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= target.order):
            raise ValueError("action table has out-of-range entries")
        self.actor = actor
        self.target = target
        self.table = table
        self._rows = table.tolist()

    def __call__(self, b: int, x: int) -> int:
        return self._rows[b][x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DerivedAction)
            and other.actor is self.actor
            and other.target is self.target
            and np.array_equal(other.table, self.table)
        )

    def __hash__(self) -> int:
        return hash((id(self.actor), id(self.target), self.table.tobytes()))

    def __repr__(self) -> str:
        return f"DerivedAction({self.actor.name} on {self.target.name})"

    @cached_property
    def level(self) -> str:
        """Highest validity level reached: "none", "group" or "nil2"."""
        if not validate_group_action(self):
            return "none"
        if not validate_nil2_action(self, cross_check=False):
            return "group"
        return "nil2"

    def require(self, level: str) -> "DerivedAction":
        if LEVELS.index(self.level) < LEVELS.index(level):
            report = validate_group_action(self) if level == "group" or self.level == "none" else validate_nil2_action(self, cross_check=False)
            raise ActionError(f"action is not valid at level {level!r}", report)
        return self


def trivial_action(B: FiniteGroup, X: FiniteGroup) -> DerivedAction:
    return DerivedAction(B, X, np.tile(np.arange(X.order), (B.order, 1)))


def conjugation_action(X: FiniteGroup) -> DerivedAction:
    t = X.table
    if t is not None:
        return DerivedAction(X, X, t[t, X.inverses[:, None]])  # t[gx, g^-1]
    return DerivedAction(X, X, [[X.conj(g, x) for x in X] for g in X])


def _perm_evaluator(cod: FiniteGroup, X: FiniteGroup):
    """Turn a codomain value into the permutation of X's ids it induces."""
    real = cod.realization
    while isinstance(real, SubgroupOf):
        real = real.parent.realization
    if isinstance(real, AutomorphismsOf):
        if real.base is not X:
            raise ActionError("automorphisms belong to a different group")
        return lambda v: v
    if isinstance(real, MatrixGroup):
        xr = X.realization
        if not (isinstance(xr, CyclicProduct) and len(xr.moduli) == real.dim and set(xr.moduli) <= {real.modulus}):
            raise ActionError("matrix codomain does not act on the target group")
        vecs = X.elements
        return lambda v: tuple(X.index[real.apply(v, vec)] for vec in vecs)
    raise ActionError(f"cannot interpret {real.kind} values as automorphisms of the target")


def action_from_hom(phi: GroupHom, X: FiniteGroup) -> DerivedAction:
    """b * x = phi(b)(x) for a homomorphism into automorphisms (or matrices) of X."""
    ev = _perm_evaluator(phi.cod, X)
    perms = {}
    rows = []
    for b in phi.dom:
        c = phi(b)
        if c not in perms:
            perms[c] = ev(phi.cod.elements[c])
        rows.append(perms[c])
    return DerivedAction(phi.dom, X, rows)


# ---------------------------------------------------------------------------
# validation


def validate_group_action(xi: DerivedAction) -> Report:
    """1 * x = x; (bb') * x = b * (b' * x); b * (xx') = (b * x)(b * x')."""
    B, X, T = xi.actor, xi.target, xi.table
    nb, nx = B.order, X.order
    bad = np.flatnonzero(T[0] != np.arange(nx))
    if len(bad):
        x = int(bad[0])
        return Report(False, "identity", (0, x), [f"1 * {X.format(x)} = {X.format(xi(0, x))}"])
    if B.table is not None:
        lhs = T[B.table]                                   # [b, b', x] -> (bb') * x
        rhs = T[np.arange(nb)[:, None, None], T[None, :, :]]  # b * (b' * x)
        hits = np.argwhere(lhs != rhs)
        first = tuple(int(v) for v in hits[0]) if len(hits) else None
    else:
        first = next(
            ((b, c, x) for b in B for c in B for x in X if xi(B.mul(b, c), x) != xi(b, xi(c, x))),
            None,
        )
    if first is not None:
        b, c, x = first
        return Report(False, "compatibility", first, [
            f"({B.format(b)}{B.format(c)}) * {X.format(x)} != {B.format(b)} * ({B.format(c)} * {X.format(x)})"
        ])
    if X.table is not None and nb * nx * nx <= 5 * 10**7:
        Xt = X.table
        lhs = T[:, Xt]                                      # [b, x, x'] -> b * (xx')
        rhs = Xt[T[:, :, None], T[:, None, :]]              # (b * x)(b * x')
        hits = np.argwhere(lhs != rhs)
        first = tuple(int(v) for v in hits[0]) if len(hits) else None
    else:
        first = next(
            ((b, x, y) for b in B for x in X for y in X if xi(b, X.mul(x, y)) != X.mul(xi(b, x), xi(b, y))),
            None,
        )
    if first is not None:
        b, x, y = first
        return Report(False, "multiplicativity", first, [
            f"{B.format(b)} * ({X.format(x)}{X.format(y)}) != ({B.format(b)} * {X.format(x)})({B.format(b)} * {X.format(y)})"
        ])
    return Report(True)


def fixed_points(xi: DerivedAction) -> Subgroup:
    """X^B = {x : b * x = x for all b}."""
    X = xi.target
    members = np.flatnonzero(np.all(xi.table == np.arange(X.order)[None, :], axis=0)).tolist()
    assert closed_under_products(X, members), "fixed points do not form a subgroup"
    return Subgroup(X, members, _generating_subset(X, members))


def displacement(xi: DerivedAction, b: int, x: int) -> int:
    """(b * x) x^-1"""
    X = xi.target
    return X.mul(xi(b, x), X.inv(x))


def _displacements(xi: DerivedAction) -> np.ndarray:
    X = xi.target
    if X.table is not None:
        return X.table[xi.table, X.inverses[None, :]]
    return np.array([[displacement(xi, b, x) for x in X] for b in xi.actor], dtype=np.int64)


def validate_nil2_action(xi: DerivedAction, cross_check: bool = True) -> Report:
    """(b * x) x^-1 lies in Z(X) and in X^B for every b, x.

    With ``cross_check`` a passing action also has its semidirect product built
    and checked to be of class <= 2 (for small enough products).
    """
    report = validate_group_action(xi)
    if not report:
        return report
    B, X = xi.actor, xi.target
    for name, G in (("actor", B), ("target", X)):
        c = nilpotency_class(G)
        if c is None or c > 2:
            return Report(False, "precondition", (), [f"{name} {G.name} has class {c if c is not None else 'not nilpotent'}"])
    D = _displacements(xi)
    Z = center(X).members
    T = xi.table
    fixed = np.all(T == np.arange(X.order)[None, :], axis=0)
    for b in B:
        for x in X:
            d = int(D[b, x])
            if d not in Z:
                return Report(False, "central", (b, x, d), [
                    f"({B.format(b)} * {X.format(x)}){X.format(x)}^-1 = {X.format(d)} is not central"
                ])
            if not fixed[d]:
                mover = int(np.flatnonzero(T[:, d] != d)[0])
                return Report(False, "fixed", (b, x, mover), [
                    f"({B.format(b)} * {X.format(x)}){X.format(x)}^-1 = {X.format(d)}",
                    f"{B.format(mover)} * {X.format(d)} = {X.format(xi(mover, d))} != {X.format(d)}",
                ])
    if cross_check and B.order * X.order <= CROSS_CHECK_LIMIT:
        c = nilpotency_class(semidirect(xi))
        assert c is not None and c <= 2, "nil2-valid action produced a semidirect product of class > 2"
    return Report(True)


# ---------------------------------------------------------------------------
# semidirect products and split extensions


def semidirect(xi: DerivedAction) -> FiniteGroup:
    """B x X with (b,x)(b',x') = (bb', x (b * x'))."""
    report = validate_group_action(xi)
    if not report:
        raise ActionError("semidirect product needs a group action", report)
    B, X = xi.actor, xi.target
    real = PairGroup(B, X, xi.table)
    gens = [(g, 0) for g in B.generators] + [(0, x) for x in X.generators]
    return enumerate_group(real, gens, name=f"{B.name}|x{X.name}")


@dataclass(eq=False)
class SplitExtension:
    kernel: FiniteGroup
    total: FiniteGroup
    base: FiniteGroup
    k: GroupHom
    p: GroupHom
    s: GroupHom


def check_split_extension(E: SplitExtension) -> None:
    if not np.array_equal(E.p.compose(E.s).table, np.arange(E.base.order)):
        raise AssertionError("p o s != id_B")
    if not E.k.is_injective():
        raise AssertionError("k is not injective")
    if set(E.k.table.tolist()) != E.p.kernel().members:
        raise AssertionError("image of k is not the kernel of p")


def extension_from_action(xi: DerivedAction) -> SplitExtension:
    """X -> B |x X <=> B via the canonical injections and projection."""
    B, X = xi.actor, xi.target
    A = semidirect(xi)
    nb = len(B.generators)
    k = hom(X, A, [A.index[(0, x)] for x in X.generators])
    s = hom(B, A, [A.index[(g, 0)] for g in B.generators])
    p = hom(A, B, [A.elements[a][0] for a in A.generators])
    assert all(A.elements[a][0] == 0 for a in A.generators[nb:])
    E = SplitExtension(X, A, B, k, p, s)
    check_split_extension(E)
    return E


def derived_action(E: SplitExtension) -> DerivedAction:
    """b * x = s(b) k(x) s(b)^-1, read back through k."""
    A = E.total
    back = {int(a): x for x, a in enumerate(E.k.table.tolist())}
    rows = [[back[A.conj(E.s(b), E.k(x))] for x in E.kernel] for b in E.base]
    return DerivedAction(E.base, E.kernel, rows)


# ---------------------------------------------------------------------------
# acting morphisms


@dataclass(eq=False)
class ActingMorphism:
    hom: GroupHom             # B -> Aut_c(X)
    action: DerivedAction

    def image(self) -> Subgroup:
        return self.hom.image()


def action_to_morphism(xi: DerivedAction) -> ActingMorphism:
    """b -> (b * -) as a homomorphism into Aut_c(X)."""
    xi.require("nil2")
    B, X = xi.actor, xi.target
    autc = central_auts(X)
    images = []
    for g in B.generators:
        perm = tuple(xi._rows[g])
        if perm not in autc.group.index:
            raise ActionError(f"{B.format(g)} * - is not a central automorphism")
        images.append(autc.group.index[perm])
    return ActingMorphism(hom(B, autc.group, images), xi)


def check_acting_morphism(phi: GroupHom, X: FiniteGroup) -> Report:
    """b' * ((b * x) x^-1) = (b * x) x^-1 for all b, b', x, and centrality of every b * -."""
    xi = action_from_hom(phi, X)
    B = phi.dom
    D = _displacements(xi)
    Z = center(X).members
    for b in B:
        for x in X:
            d = int(D[b, x])
            if d not in Z:
                return Report(False, "central", (b, x, d), [
                    f"{B.format(b)} * - is not central: ({B.format(b)} * {X.format(x)}){X.format(x)}^-1 = {X.format(d)}"
                ])
    moved = xi.table[:, D].transpose(1, 0, 2) != D[:, None, :]   # [b, b', x]
    hits = np.argwhere(moved)
    if len(hits):
        b, c, x = (int(v) for v in hits[0])
        d = int(D[b, x])
        return Report(False, "act_mor", (b, c, x), [
            f"({B.format(b)} * {X.format(x)}){X.format(x)}^-1 = {X.format(d)}",
            f"{B.format(c)} * {X.format(d)} = {X.format(xi(c, d))} != {X.format(d)}",
        ])
    return Report(True)


def morphism_to_action(phi: GroupHom, X: FiniteGroup) -> DerivedAction:
    """The nil2 action b * x = phi(b)(x); raises ActionError with a witness otherwise."""
    report = check_acting_morphism(phi, X)
    if not report:
        raise ActionError("homomorphism does not define a 2-nilpotent action", report)
    return action_from_hom(phi, X)


def image_abelian_check(am: ActingMorphism) -> bool:
    cod = am.hom.cod
    ims = am.hom.images
    return all(cod.mul(a, b) == cod.mul(b, a) for a in ims for b in ims)


def pullback_action(xi: DerivedAction, f: GroupHom) -> DerivedAction:
    """Change of base along f: B' -> B: b' *' x = f(b') * x."""
    if f.cod is not xi.actor:
        raise ValueError("f must land in the actor of the action")
    return DerivedAction(f.dom, xi.target, xi.table[f.table])
