"""Free class-2 nilpotent groups modulo commutator-killing relations.

An element is stored in collected form

    g_1^{a_1} ... g_n^{a_n} * prod_{i<j} c_{ij}^{e_{ij}},    c_{ij} = [g_i, g_j],

with one exponent per non-killed pair. Exponents are unbounded ints.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .presentation import Commutator, Relation


class Nil2HomError(ValueError):
    def __init__(self, message: str, witness: tuple[str, str] | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Nil2Element:
    a: tuple[int, ...]   # generator exponents
    e: tuple[int, ...]   # commutator exponents, aligned with the group's ``pairs``


class FreeNil2Group:
    """Free class-2 group on ``gen_names`` with [g_i, g_j] = 1 for each killed pair."""

    def __init__(self, gen_names: Sequence[str], killed: Iterable[Sequence] = ()):
        self.names = tuple(gen_names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        self.position = {name: i for i, name in enumerate(self.names)}
        pairs = set()
        for p in killed:
            i, j = (self._index(g) for g in p)
            if i == j:
                raise ValueError(f"killed pair must join distinct generators: {p}")
            pairs.add(frozenset((i, j)))
        self.killed = frozenset(pairs)
        self.pairs = tuple(
            (i, j) for i, j in combinations(range(len(self.names)), 2) if frozenset((i, j)) not in self.killed
        )
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}

    def _index(self, g) -> int:
        if isinstance(g, str):
            if g not in self.position:
                raise KeyError(f"unknown generator {g!r}")
            return self.position[g]
        if not 0 <= g < len(self.names):
            raise IndexError(g)
        return int(g)

    def __repr__(self) -> str:
        killed = sorted(tuple(sorted(self.names[i] for i in p)) for p in self.killed)
        return f"FreeNil2Group({list(self.names)}, killed={killed})"

    @property
    def n(self) -> int:
        return len(self.names)

    @classmethod
    def from_relations(cls, gen_names: Sequence[str], relations: Iterable[Relation]) -> "FreeNil2Group":
        killed = []
        for r in relations:
            if r.kind != "killing":
                raise ValueError(f"only relations of the form [g,h]=1 are supported, got {r}")
            c = r.lhs[0]
            killed.append((c.left, c.right))
        return cls(gen_names, killed)

    def relations(self) -> list[Relation]:
        return [
            Relation((Commutator(self.names[i], self.names[j]),), ())
            for i, j in sorted(tuple(sorted(p)) for p in self.killed)
        ]

    # -- elements ---------------------------------------------------------

    def identity(self) -> Nil2Element:
        return Nil2Element((0,) * self.n, (0,) * len(self.pairs))

    def element(self, a: Sequence[int] | dict = (), e: dict | None = None) -> Nil2Element:
        """Build from exponent data; ``a`` and ``e`` may be keyed by names."""
        if isinstance(a, dict):
            av = [0] * self.n
            for g, k in a.items():
                av[self._index(g)] = int(k)
        else:
            av = [int(k) for k in a] or [0] * self.n
        if len(av) != self.n:
            raise ValueError("wrong number of generator exponents")
        ev = [0] * len(self.pairs)
        for (g, h), k in (e or {}).items():
            i, j = self._index(g), self._index(h)
            if i == j or frozenset((i, j)) in self.killed:
                continue
            if i < j:
                ev[self.pair_index[(i, j)]] += int(k)
            else:
                ev[self.pair_index[(j, i)]] -= int(k)
        return Nil2Element(tuple(av), tuple(ev))

    def generator(self, g) -> Nil2Element:
        i = self._index(g)
        return Nil2Element(tuple(int(k == i) for k in range(self.n)), (0,) * len(self.pairs))

    def gens(self) -> list[Nil2Element]:
        return [self.generator(i) for i in range(self.n)]

    def mul(self, p: Nil2Element, q: Nil2Element) -> Nil2Element:
        a, b = p.a, q.a
        e = tuple(
            x + y - a[j] * b[i] for (i, j), x, y in zip(self.pairs, p.e, q.e)
        )
        return Nil2Element(tuple(x + y for x, y in zip(a, b)), e)

    def inv(self, p: Nil2Element) -> Nil2Element:
        a = p.a
        return Nil2Element(tuple(-x for x in a), tuple(-x - a[i] * a[j] for (i, j), x in zip(self.pairs, p.e)))

    def power(self, p: Nil2Element, k: int) -> Nil2Element:
        """p^k for any integer k (closed form, valid for negative k as well)."""
        a = p.a
        tri = k * (k - 1) // 2
        return Nil2Element(tuple(k * x for x in a), tuple(k * x - a[i] * a[j] * tri for (i, j), x in zip(self.pairs, p.e)))

    def prod(self, *ps: Nil2Element) -> Nil2Element:
        out = self.identity()
        for p in ps:
            out = self.mul(out, p)
        return out

    def commutator(self, p: Nil2Element, q: Nil2Element) -> Nil2Element:
        """p q p^-1 q^-1"""
        return self.mul(self.mul(self.mul(p, q), self.inv(p)), self.inv(q))

    def is_identity(self, p: Nil2Element) -> bool:
        return not any(p.a) and not any(p.e)

    def is_central(self, p: Nil2Element) -> bool:
        return all(self.is_identity(self.commutator(p, g)) for g in self.gens())

    def random_element(self, rng: random.Random, bound: int = 5) -> Nil2Element:
        return Nil2Element(
            tuple(rng.randint(-bound, bound) for _ in range(self.n)),
            tuple(rng.randint(-bound, bound) for _ in self.pairs),
        )

    def format(self, p: Nil2Element) -> str:
        parts = [self.names[i] if k == 1 else f"{self.names[i]}^{k}" for i, k in enumerate(p.a) if k]
        for (i, j), k in zip(self.pairs, p.e):
            if k:
                c = f"[{self.names[i]},{self.names[j]}]"
                parts.append(c if k == 1 else f"{c}^{k}")
        return "".join(parts) or "1"

    def to_json(self, p: Nil2Element) -> dict:
        return {
            "a": {self.names[i]: k for i, k in enumerate(p.a) if k},
            "e": {f"[{self.names[i]},{self.names[j]}]": k for (i, j), k in zip(self.pairs, p.e) if k},
        }


class Nil2Hom:
    def __init__(self, dom: FreeNil2Group, cod: FreeNil2Group, images: Sequence[Nil2Element]):
        self.dom = dom
        self.cod = cod
        self.images = tuple(images)
        self._brackets = {
            (i, j): cod.commutator(self.images[i], self.images[j]) for i, j in dom.pairs
        }

    def __call__(self, p: Nil2Element) -> Nil2Element:
        cod = self.cod
        out = cod.identity()
        for img, k in zip(self.images, p.a):
            if k:
                out = cod.mul(out, cod.power(img, k))
        for pair, k in zip(self.dom.pairs, p.e):
            if k:
                out = cod.mul(out, cod.power(self._brackets[pair], k))
        return out

    def compose(self, inner: "Nil2Hom") -> "Nil2Hom":
        return Nil2Hom(inner.dom, self.cod, [self(g) for g in inner.images])


def hom(dom: FreeNil2Group, cod: FreeNil2Group, images: Sequence[Nil2Element] | dict) -> Nil2Hom:
    """Extend generator images; every killed pair must map to commuting elements."""
    if isinstance(images, dict):
        images = [images[name] for name in dom.names]
    images = list(images)
    if len(images) != dom.n:
        raise ValueError(f"need {dom.n} images, got {len(images)}")
    for p in sorted(tuple(sorted(p)) for p in dom.killed):
        i, j = p
        if not cod.is_identity(cod.commutator(images[i], images[j])):
            raise Nil2HomError(
                f"[{dom.names[i]},{dom.names[j]}] = 1 is not preserved", (dom.names[i], dom.names[j])
            )
    return Nil2Hom(dom, cod, images)


def coproduct(G: FreeNil2Group, H: FreeNil2Group) -> FreeNil2Group:
    """Free product in the class-2 variety: generators side by side, no cross relations."""
    clash = set(G.names) & set(H.names)
    if clash:
        raise ValueError(f"generator names clash: {sorted(clash)}")
    killed = [tuple(G.names[i] for i in p) for p in G.killed]
    killed += [tuple(H.names[i] for i in p) for p in H.killed]
    return FreeNil2Group(G.names + H.names, killed)


@dataclass(eq=False)
class FlatConstruction:
    """Kernel of [id_B, 0]: B + X -> B for free class-2 B and X."""

    total: FreeNil2Group       # B + X
    kernel: FreeNil2Group      # standalone presentation of the kernel
    embedding: Nil2Hom         # kernel -> total
    projection: Nil2Hom        # total -> B
    base: FreeNil2Group
    u_names: dict[tuple[str, str], str]

    def in_kernel(self, p: Nil2Element) -> bool:
        """Zero exponents on every b-generator and every [b, b'] pair."""
        T = self.total
        nb = self.base.n
        return not any(p.a[:nb]) and not any(k for (i, j), k in zip(T.pairs, p.e) if j < nb)


def flat(
    b_gens: Sequence[str],
    x_gens: Sequence[str],
    u_names: dict[tuple[str, str], str] | None = None,
) -> FlatConstruction:
    """B flat X on generators x_j and u_ij = [b_i, x_j], with every u central."""
    b_gens, x_gens = list(b_gens), list(x_gens)
    if set(b_gens) & set(x_gens):
        raise ValueError("b and x generator names must be disjoint")
    u_names = dict(u_names or {})
    for b in b_gens:
        for x in x_gens:
            u_names.setdefault((b, x), f"u_{b}{x}")
    us = [u_names[(b, x)] for b in b_gens for x in x_gens]
    names = x_gens + us
    if len(set(names)) != len(names) or set(names) & set(b_gens):
        raise ValueError("generator names clash in the flat construction")
    killed = [(x, u) for x in x_gens for u in us] + list(combinations(us, 2))
    K = FreeNil2Group(names, killed)
    T = FreeNil2Group(b_gens + x_gens)
    B = FreeNil2Group(b_gens)
    images = [T.generator(x) for x in x_gens]
    images += [T.commutator(T.generator(b), T.generator(x)) for b in b_gens for x in x_gens]
    emb = hom(K, T, images)
    proj = hom(T, B, [B.generator(b) for b in b_gens] + [B.identity() for _ in x_gens])
    return FlatConstruction(T, K, emb, proj, B, u_names)


def structure_report(G: FreeNil2Group) -> dict:
    """Rank invariants and the split (free class-2 part) x (free abelian central part).

    Each non-killed pair owns its own commutator coordinate, so a generator lies
    in the centre's generator part exactly when it occurs in no non-killed pair.
    """
    involved = sorted({i for p in G.pairs for i in p})
    isolated = [i for i in range(G.n) if i not in set(involved)]
    k = len(involved)
    complete = len(G.pairs) == k * (k - 1) // 2
    if k == 0:
        part = None
    elif complete and k == 2:
        part = "H3"
    elif complete:
        part = f"F2({k})"
    else:
        part = "quotient"
    factors = ([part] if part else []) + ([f"Z^{len(isolated)}"] if len(isolated) > 1 else ["Z"] * len(isolated))
    return {
        "generators": list(G.names),
        "abelianization_rank": G.n,
        "commutator_rank": len(G.pairs),
        "center_rank": len(isolated) + len(G.pairs),
        "class2_part": {
            "generators": [G.names[i] for i in involved],
            "free": complete,
            "non_killed_pairs": [[G.names[i], G.names[j]] for i, j in G.pairs],
        },
        "central_factor_rank": len(isolated),
        "nilpotency_class": 2 if G.pairs else (1 if G.n else 0),
        "isomorphism_type": " x ".join(factors) if factors else "1",
    }


def comparison_map(b: str = "b", x: str = "x", y: str = "y", u: str = "u", v: str = "v"):
    """[B flat id_X, B flat id_Y]: (B flat X) + (B flat Y) -> B flat (X + Y), all on one generator each."""
    fx = flat([b], [x], {(b, x): u})
    fy = flat([b], [y], {(b, y): v})
    fxy = flat([b], [x, y], {(b, x): u, (b, y): v})
    D = coproduct(fx.kernel, fy.kernel)
    C = fxy.kernel
    phi = hom(D, C, {name: C.generator(name) for name in D.names})
    return D, C, phi, fxy, (fx, fy)


def lacc_counterexample() -> dict:
    """The comparison map for B = X = Y = Z kills three of the four basic commutators."""
    D, C, phi, fxy, (fx, fy) = comparison_map()
    to_total = fxy.embedding.compose(phi)
    g = {name: D.generator(name) for name in D.names}
    brackets = {
        "[x,y]": D.commutator(g["x"], g["y"]),
        "[x,v]": D.commutator(g["x"], g["v"]),
        "[y,u]": D.commutator(g["y"], g["u"]),
        "[u,v]": D.commutator(g["u"], g["v"]),
    }
    verdicts = []
    for label, c in brackets.items():
        verdicts.append({"check": f"{label} nontrivial in coproduct", "pass": not D.is_identity(c), "value": D.format(c)})
    for label in ("[x,v]", "[y,u]", "[u,v]"):
        img = phi(brackets[label])
        verdicts.append({"check": f"phi({label}) = 1", "pass": C.is_identity(img), "value": C.format(img)})
    img = phi(brackets["[x,y]"])
    verdicts.append({"check": "phi([x,y]) != 1", "pass": not C.is_identity(img), "value": C.format(img)})
    kernel_witness = brackets["[x,v]"]
    verdicts.append({
        "check": "ker(phi) nontrivial",
        "pass": not D.is_identity(kernel_witness) and C.is_identity(phi(kernel_witness)),
        "value": D.format(kernel_witness),
    })
    u_total = to_total(g["u"])
    T = fxy.total
    verdicts.append({
        "check": "phi(u) = [b,x] in B + (X + Y)",
        "pass": u_total == T.commutator(T.generator("b"), T.generator("x")) and fxy.in_kernel(u_total),
        "value": T.format(u_total),
    })
    return {
        "command": "lacc",
        "flat_b_x": structure_report(fx.kernel),
        "flat_b_xy": structure_report(C),
        "coproduct": structure_report(D),
        "verdicts": verdicts,
        "pass": all(v["pass"] for v in verdicts),
    }
