"""Finite groups enumerated from generators, with exact arithmetic on ids.

Every group is a list of *realized* values (tuples, matrices, pairs,
permutations) closed under a realization-level product. Elements are
referred to by their canonical id: the position in the breadth-first
enumeration from the identity, multiplying on the right by the generators in
declared order. The identity always has id 0.
"""
from __future__ import annotations

import random
from collections import deque
from functools import cached_property
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

DEFAULT_BUDGET = 10**6
# groups up to this order get a cached Cayley table
TABLE_LIMIT = 2048
# full pairwise verification of homomorphisms up to this order
FULL_CHECK_LIMIT = 512
# full triple-wise associativity check up to this order
AXIOM_FULL_LIMIT = 64


class BudgetExceeded(RuntimeError):
    def __init__(self, partial_size: int, budget: int):
        super().__init__(
            f"closure exceeded element budget {budget} (partial size {partial_size})"
        )
        self.partial_size = partial_size
        self.budget = budget


class HomomorphismError(ValueError):
    """Raised when generator images do not extend to a homomorphism."""

    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# realizations


class CyclicProduct:
    kind = "cyclic_product"

    def __init__(self, moduli: Sequence[int]):
        self.moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in self.moduli):
            raise ValueError(f"moduli must be positive, got {self.moduli}")
        self.identity = tuple(0 for _ in self.moduli)

    def mul(self, u, v):
        return tuple((a + b) % m for a, b, m in zip(u, v, self.moduli))

    def inv(self, u):
        return tuple(-a % m for a, m in zip(u, self.moduli))

    def unit_vectors(self) -> list[tuple[int, ...]]:
        n = len(self.moduli)
        return [tuple(1 % self.moduli[i] if k == i else 0 for k in range(n)) for i in range(n)]

    def format(self, u) -> str:
        return "(" + ",".join(str(a) for a in u) + ")"

    def describe(self) -> dict:
        return {"type": self.kind, "moduli": list(self.moduli)}


class MatrixGroup:
    """Square matrices over Z_m, stored row-major as flat tuples."""

    kind = "matrix_group"

    def __init__(self, modulus: int, dim: int):
        if modulus < 2:
            raise ValueError("matrix groups need modulus >= 2")
        self.modulus = int(modulus)
        self.dim = int(dim)
        n = self.dim
        self.identity = tuple(1 if i == j else 0 for i in range(n) for j in range(n))

    def normalize(self, rows) -> tuple[int, ...]:
        flat = [int(v) for row in rows for v in row] if rows and isinstance(rows[0], (list, tuple)) else [int(v) for v in rows]
        if len(flat) != self.dim * self.dim:
            raise ValueError(f"expected {self.dim}x{self.dim} matrix")
        return tuple(v % self.modulus for v in flat)

    def mul(self, u, v):
        n, m = self.dim, self.modulus
        return tuple(
            sum(u[i * n + k] * v[k * n + j] for k in range(n)) % m
            for i in range(n)
            for j in range(n)
        )

    def inv(self, u):
        prev, cur = self.identity, u
        while cur != self.identity:
            prev, cur = cur, self.mul(cur, u)
        return prev

    def apply(self, u, vec) -> tuple[int, ...]:
        n, m = self.dim, self.modulus
        return tuple(sum(u[i * n + k] * vec[k] for k in range(n)) % m for i in range(n))

    def format(self, u) -> str:
        n = self.dim
        return "[" + ";".join(" ".join(str(u[i * n + j]) for j in range(n)) for i in range(n)) + "]"

    def describe(self) -> dict:
        return {"type": self.kind, "modulus": self.modulus, "dim": self.dim}


class PairGroup:
    """Carrier B x X with (b,x)(b',x') = (bb', x (b * x'))."""

    kind = "pair_group"

    def __init__(self, base: "FiniteGroup", fiber: "FiniteGroup", act: np.ndarray):
        self.base = base
        self.fiber = fiber
        self.act = act
        self._act_rows = act.tolist()
        self.identity = (0, 0)

    def mul(self, u, v):
        b, x = u
        c, y = v
        return (self.base.mul(b, c), self.fiber.mul(x, self._act_rows[b][y]))

    def inv(self, u):
        b, x = u
        bi = self.base.inv(b)
        return (bi, self._act_rows[bi][self.fiber.inv(x)])

    def format(self, u) -> str:
        return f"<{self.base.format(u[0])}, {self.fiber.format(u[1])}>"

    def describe(self) -> dict:
        return {"type": self.kind, "base": self.base.order, "fiber": self.fiber.order}


class SubgroupOf:
    """Values are the parent's values; the product is the parent's."""

    kind = "subgroup_of"

    def __init__(self, parent: "FiniteGroup"):
        self.parent = parent
        self.identity = parent.realization.identity

    def mul(self, u, v):
        p = self.parent
        return p.elements[p.mul(p.index[u], p.index[v])]

    def inv(self, u):
        p = self.parent
        return p.elements[p.inv(p.index[u])]

    def format(self, u) -> str:
        return self.parent.realization.format(u)

    def describe(self) -> dict:
        return {"type": self.kind, "parent": self.parent.realization.describe()}


class AutomorphismsOf:
    """Permutations of a base group's ids, composed as functions: (f*g)(x) = f(g(x))."""

    kind = "automorphisms"

    def __init__(self, base: "FiniteGroup"):
        self.base = base
        self.identity = tuple(range(base.order))

    def mul(self, f, g):
        return tuple(f[i] for i in g)

    def inv(self, f):
        out = [0] * len(f)
        for i, j in enumerate(f):
            out[j] = i
        return tuple(out)

    def format(self, f) -> str:
        base = self.base
        return "{" + ", ".join(f"{base.format(g)}->{base.format(f[g])}" for g in base.generators) + "}"

    def describe(self) -> dict:
        return {"type": self.kind, "base": self.base.realization.describe()}


# ---------------------------------------------------------------------------
# groups


class FiniteGroup:
    """An enumerated finite group. Treat instances as immutable."""

    def __init__(
        self,
        realization,
        elements: list,
        generators: Sequence[int],
        tree: tuple[list[int], list[int]],
        name: str | None = None,
    ):
        self.realization = realization
        self.elements = elements
        self.index = {v: i for i, v in enumerate(elements)}
        self.generators = tuple(generators)
        self._tree_parent, self._tree_gen = tree
        self.name = name or realization.kind
        self.cache: dict[Any, Any] = {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.elements)))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def format(self, g: int) -> str:
        return self.realization.format(self.elements[g])

    def id_of(self, value) -> int:
        return self.index[value]

    @cached_property
    def table(self) -> np.ndarray | None:
        """Cayley table (ids), built column by column along the enumeration tree."""
        n = self.order
        if n > TABLE_LIMIT:
            return None
        gens = self.generators
        rmul = np.empty((len(gens), n), dtype=np.int32)
        real, els, idx = self.realization, self.elements, self.index
        for s, g in enumerate(gens):
            gv = els[g]
            rmul[s] = [idx[real.mul(v, gv)] for v in els]
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n)
        for j in range(1, n):
            table[:, j] = rmul[self._tree_gen[j]][table[:, self._tree_parent[j]]]
        return table

    @cached_property
    def _rows(self) -> list[list[int]] | None:
        t = self.table
        return None if t is None else t.tolist()

    @cached_property
    def inverses(self) -> np.ndarray:
        t = self.table
        if t is not None:
            return np.argmin(t, axis=1).astype(np.int32)
        real, els, idx = self.realization, self.elements, self.index
        return np.array([idx[real.inv(v)] for v in els], dtype=np.int32)

    @cached_property
    def _inv_list(self) -> list[int]:
        return self.inverses.tolist()

    def mul(self, g: int, h: int) -> int:
        rows = self._rows
        if rows is not None:
            return rows[g][h]
        return self.index[self.realization.mul(self.elements[g], self.elements[h])]

    def inv(self, g: int) -> int:
        return self._inv_list[g]

    def prod(self, *gs: int) -> int:
        out = 0
        for g in gs:
            out = self.mul(out, g)
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out = 0
        while k:
            if k & 1:
                out = self.mul(out, g)
            g = self.mul(g, g)
            k >>= 1
        return out

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, g: int) -> int:
        k, cur = 1, g
        while cur != 0:
            cur = self.mul(cur, g)
            k += 1
        return k

    @cached_property
    def element_orders(self) -> list[int]:
        return [self.element_order(g) for g in self]

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)


def commutator(G: FiniteGroup, g: int, h: int) -> int:
    """[g, h] = g h g^-1 h^-1."""
    return G.mul(G.mul(G.mul(g, h), G.inv(g)), G.inv(h))


def enumerate_group(
    realization,
    generators: Sequence,
    budget: int = DEFAULT_BUDGET,
    name: str | None = None,
) -> FiniteGroup:
    """Breadth-first closure of ``generators`` under the realization product."""
    gens = list(generators)
    identity = realization.identity
    elements = [identity]
    index = {identity: 0}
    parent, via = [-1], [-1]
    head = 0
    mul = realization.mul
    while head < len(elements):
        v = elements[head]
        for s, g in enumerate(gens):
            w = mul(v, g)
            if w not in index:
                if len(elements) >= budget:
                    raise BudgetExceeded(len(elements), budget)
                index[w] = len(elements)
                elements.append(w)
                parent.append(head)
                via.append(s)
        head += 1
    return FiniteGroup(
        realization,
        elements,
        [index[g] for g in gens],
        (parent, via),
        name=name,
    )


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subgroup of ``parent`` given by member ids (parent ids)."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int], generators: Sequence[int]):
        self.parent = parent
        self.members = frozenset(members)
        self.generators = tuple(generators)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    @property
    def order(self) -> int:
        return len(self.members)

    def is_trivial(self) -> bool:
        return self.members == frozenset({0})

    def as_group(self) -> FiniteGroup:
        """Enumerate as a standalone group whose values are the parent's values."""
        if "as_group" not in self.__dict__:
            p = self.parent
            self.__dict__["as_group"] = enumerate_group(
                SubgroupOf(p), [p.elements[g] for g in self.generators], name=f"sub({p.name})"
            )
        return self.__dict__["as_group"]

    def is_abelian(self) -> bool:
        G = self.parent
        return all(G.mul(a, b) == G.mul(b, a) for a in self.generators for b in self.generators)


def _closure(G: FiniteGroup, gens: Sequence[int], budget: int) -> set[int]:
    seen = {0}
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = G.mul(h, g)
            if k not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(len(seen), budget)
                seen.add(k)
                queue.append(k)
    return seen


def subgroup(G: FiniteGroup, gens: Iterable[int], budget: int = DEFAULT_BUDGET) -> Subgroup:
    """Subgroup generated by ``gens``; identity generators are dropped."""
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    return Subgroup(G, _closure(G, gens, budget), gens)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, {0}, ())


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, range(G.order), G.generators)


def normal_closure(G: FiniteGroup, S: Iterable[int], budget: int = DEFAULT_BUDGET) -> Subgroup:
    """Smallest normal subgroup containing ``S``."""
    gens = [s for s in dict.fromkeys(S) if s != 0]
    members = _closure(G, gens, budget)
    changed = True
    while changed:
        changed = False
        for n in list(gens):
            for g in G.generators:
                for c in (G.conj(g, n), G.conj(G.inv(g), n)):
                    if c not in members:
                        gens.append(c)
                        members = _closure(G, gens, budget)
                        changed = True
    return Subgroup(G, members, gens)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(G.conj(g, h) in H for h in H.generators for g in G.generators)


def center(G: FiniteGroup) -> Subgroup:
    cached = G.cache.get("center")
    if cached is None:
        gens = G.generators
        members = [z for z in G if all(G.mul(z, g) == G.mul(g, z) for g in gens)]
        cached = G.cache["center"] = Subgroup(G, members, _generating_subset(G, members))
    return cached


def _generating_subset(G: FiniteGroup, members: Sequence[int]) -> list[int]:
    """Greedy generating set of a subgroup given by its full member list."""
    target = len(members)
    gens: list[int] = []
    span = {0}
    for m in members:
        if len(span) == target:
            break
        if m not in span:
            gens.append(m)
            span = _closure(G, gens, DEFAULT_BUDGET)
    return gens


def _all_commutators(G: FiniteGroup) -> set[int]:
    t = G.table
    if t is not None:
        inv = G.inverses
        gh = t  # gh[g, h] = g*h
        c = t[t[gh, inv[:, None]], inv[None, :]]
        return set(np.unique(c).tolist())
    return {commutator(G, g, h) for g in G for h in G}


def commutator_subgroup(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Subgroup:
    cached = G.cache.get("derived")
    if cached is not None:
        return cached
    gens = G.generators
    D = normal_closure(G, [commutator(G, a, b) for a in gens for b in gens], budget)
    if G.order <= FULL_CHECK_LIMIT:
        other = subgroup(G, sorted(_all_commutators(G)), budget)
        assert other.members == D.members, "derived subgroup constructions disagree"
    G.cache["derived"] = D
    return D


def lower_central_series(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> list[Subgroup]:
    """X^0 = G, X^k = [X^{k-1}, G], stopping at the first repeat.

    The last entry is the stable term; it is trivial iff G is nilpotent.
    """
    cached = G.cache.get("lcs")
    if cached is not None:
        return cached
    series = [whole(G)]
    while not series[-1].is_trivial():
        prev = series[-1]
        nxt = normal_closure(
            G, [commutator(G, a, g) for a in prev.generators for g in G.generators], budget
        )
        if nxt.members == prev.members:
            break
        series.append(nxt)
    G.cache["lcs"] = series
    return series


def nilpotency_class(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> int | None:
    """Smallest k with X^k trivial, or None when G is not nilpotent."""
    series = lower_central_series(G, budget)
    if not series[-1].is_trivial():
        return None
    return len(series) - 1


def format_class(c: int | None) -> str | int:
    return "not nilpotent" if c is None else c


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """Homomorphism given by generator images and the induced table dom -> cod."""

    def __init__(self, dom: FiniteGroup, cod: FiniteGroup, images: Sequence[int], table: np.ndarray):
        self.dom = dom
        self.cod = cod
        self.images = tuple(int(i) for i in images)
        self.table = table
        self._list = table.tolist()

    def __call__(self, g: int) -> int:
        return self._list[g]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and other.dom is self.dom
            and other.cod is self.cod
            and np.array_equal(other.table, self.table)
        )

    def __hash__(self) -> int:
        return hash((id(self.dom), id(self.cod), self.table.tobytes()))

    def __repr__(self) -> str:
        return f"GroupHom({self.dom.name} -> {self.cod.name}, images={self.images})"

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner"""
        if inner.cod is not self.dom:
            raise ValueError("codomain/domain mismatch")
        table = self.table[inner.table]
        return GroupHom(inner.dom, self.cod, [int(table[g]) for g in inner.dom.generators], table)

    def kernel(self) -> Subgroup:
        members = np.flatnonzero(self.table == 0).tolist()
        return Subgroup(self.dom, members, _generating_subset(self.dom, members))

    def image(self) -> Subgroup:
        return subgroup(self.cod, self.images)

    def is_injective(self) -> bool:
        return len(np.unique(self.table)) == self.dom.order


def _extend(dom: FiniteGroup, cod: FiniteGroup, images: Sequence[int]) -> np.ndarray:
    table = np.zeros(dom.order, dtype=np.int64)
    out = [0] * dom.order
    par, via = dom._tree_parent, dom._tree_gen
    for j in range(1, dom.order):
        out[j] = cod.mul(out[par[j]], images[via[j]])
    table[:] = out
    return table


def _first_violation(dom: FiniteGroup, cod: FiniteGroup, table: np.ndarray, rng: random.Random, samples: int):
    if dom.order <= FULL_CHECK_LIMIT and dom.table is not None and cod.table is not None:
        lhs = table[dom.table]
        rhs = cod.table[table[:, None], table[None, :]]
        bad = np.argwhere(lhs != rhs)
        return tuple(int(v) for v in bad[0]) if len(bad) else None
    t = table.tolist()
    # f(a s) = f(a) f(s) on every Cayley edge already proves multiplicativity
    for a in dom:
        for s in dom.generators:
            if t[dom.mul(a, s)] != cod.mul(t[a], t[s]):
                return (a, s)
    for _ in range(samples):
        a, b = rng.randrange(dom.order), rng.randrange(dom.order)
        if t[dom.mul(a, b)] != cod.mul(t[a], t[b]):
            return (a, b)
    return None


def hom(
    dom: FiniteGroup,
    cod: FiniteGroup,
    images: Sequence[int],
    *,
    samples: int = 10**5,
    seed: int = 0,
) -> GroupHom:
    """Extend generator images to a verified homomorphism.

    Raises HomomorphismError with a witness pair (a, b) where f(ab) != f(a)f(b).
    """
    images = [int(i) for i in images]
    if len(images) != len(dom.generators):
        raise ValueError(f"need {len(dom.generators)} images, got {len(images)}")
    table = _extend(dom, cod, images)
    for s, g in enumerate(dom.generators):
        if table[g] != images[s]:
            raise HomomorphismError(f"generator {s} is assigned two images", (g, 0))
    bad = _first_violation(dom, cod, table, random.Random(seed), samples)
    if bad is not None:
        a, b = bad
        raise HomomorphismError(
            f"not a homomorphism: f({dom.format(a)}*{dom.format(b)}) != f({dom.format(a)})f({dom.format(b)})",
            bad,
        )
    return GroupHom(dom, cod, images, table)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, G.generators, np.arange(G.order))


def trivial_hom(dom: FiniteGroup, cod: FiniteGroup) -> GroupHom:
    return GroupHom(dom, cod, [0] * len(dom.generators), np.zeros(dom.order, dtype=np.int64))


def _graph_closure(dom: FiniteGroup, cod: FiniteGroup, pairs: Sequence[tuple[int, int]]) -> dict[int, int] | None:
    """Closure of the subgroup of dom x cod generated by ``pairs``; None if not a graph."""
    graph = {0: 0}
    queue = deque([0])
    while queue:
        b = queue.popleft()
        a = graph[b]
        for g, h in pairs:
            nb, na = dom.mul(b, g), cod.mul(a, h)
            old = graph.get(nb)
            if old is None:
                graph[nb] = na
                queue.append(nb)
            elif old != na:
                return None
    return graph


def homomorphisms(dom: FiniteGroup, cod: FiniteGroup, *, prune_by_order: bool = True) -> Iterator[GroupHom]:
    """All homomorphisms dom -> cod, in lexicographic order of generator images."""
    gens = dom.generators
    if prune_by_order:
        cod_orders = cod.element_orders
        candidates = [
            [h for h in cod if dom.element_orders[g] % cod_orders[h] == 0] for g in gens
        ]
    else:
        candidates = [list(cod) for _ in gens]

    def search(k: int, chosen: list[int]):
        if k == len(gens):
            graph = _graph_closure(dom, cod, list(zip(gens, chosen)))
            table = np.array([graph[g] for g in dom], dtype=np.int64)
            yield GroupHom(dom, cod, chosen, table)
            return
        for h in candidates[k]:
            trial = chosen + [h]
            if _graph_closure(dom, cod, list(zip(gens[: k + 1], trial))) is not None:
                yield from search(k + 1, trial)

    yield from search(0, [])


# ---------------------------------------------------------------------------
# axiom checks


def check_group_axioms(G: FiniteGroup, samples: int = 10**5, seed: int = 0) -> str | None:
    """Return a description of the first failed axiom, or None.

    Associativity is checked on all triples when |G| <= 64, else on random ones.
    """
    n = G.order
    t = G.table
    inv = G.inverses
    if t is not None:
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            return "identity"
        if not (np.all(t[ar, inv] == 0) and np.all(t[inv, ar] == 0)):
            return "inverse"
        if n <= AXIOM_FULL_LIMIT:
            lhs = t[t[:, :, None], ar[None, None, :]]
            if not np.array_equal(lhs, t[ar[:, None, None], t[None, :, :]]):
                return "associativity"
            return None
    else:
        for a in G:
            if G.mul(0, a) != a or G.mul(a, 0) != a:
                return "identity"
            if G.mul(a, G.inv(a)) != 0 or G.mul(G.inv(a), a) != 0:
                return "inverse"
    rng = np.random.default_rng(seed)
    trip = rng.integers(0, n, size=(samples, 3))
    if t is not None:
        a, b, c = trip.T
        if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
            return "associativity"
        return None
    for a, b, c in trip.tolist():
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            return "associativity"
    return None


def closed_under_products(G: FiniteGroup, members: Iterable[int]) -> bool:
    ms = set(members)
    return 0 in ms and all(G.mul(a, b) in ms for a in ms for b in ms) and all(G.inv(a) in ms for a in ms)

