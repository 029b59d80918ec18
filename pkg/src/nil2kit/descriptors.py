"""JSON descriptors for groups, actions and abelian spans.

Group descriptors::

    {"type": "cyclic_product", "moduli": [4, 2]}
    {"type": "matrix_group", "modulus": 3, "generators": [[0, 2, 1, 0], ...]}   # flat row-major
    {"type": "presentation_nil2", "generators": ["x", "u"], "relations": ["[x,u]=1"]}
    {"type": "presentation_nil2", "generators": [...], "relations": [...],
     "realization": {"group": <matrix_group or cyclic_product>, "images": {"x": <value>, ...}}}
    {"type": "semidirect", "base": <group>, "fiber": <group>, "action": <action>}

Action descriptors (actor B, target X)::

    {"type": "trivial"}
    {"type": "conjugation"}                                  # B and X the same group
    {"type": "matrices", "images": [<flat matrix per B generator>]}
    {"type": "automorphisms", "images": [<permutation of X ids per B generator>]}
    {"type": "table", "table": [[...], ...]}                 # |B| x |X| ids

Span descriptors (for amalgams): ``{"source": A, "left": A, "right": A,
"f": rows, "g": rows}`` with A either ``{"moduli": [...]}`` or
``{"n": k, "relations": [[...], ...]}``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

from .abelian import AbelianHom, FgAbelianGroup
from .actions import DerivedAction, action_from_hom, conjugation_action, semidirect, trivial_action
from .catalog import cyclic_product, matrix_group
from .freenil2 import FreeNil2Group
from .groups import DEFAULT_BUDGET, AutomorphismsOf, CyclicProduct, FiniteGroup, MatrixGroup, enumerate_group, GroupHom, hom
from .presentation import PresentationSyntaxError, format_word, parse_relation, relations_hold


class DescriptorError(ValueError):
    """Malformed or unsupported descriptor (a usage/input error)."""


GROUP_TYPES = ("cyclic_product", "matrix_group", "presentation_nil2", "semidirect")
ACTION_TYPES = ("trivial", "conjugation", "matrices", "automorphisms", "table")


def _require(d: Any, key: str, kind: type | tuple = object):
    if not isinstance(d, dict):
        raise DescriptorError(f"expected a JSON object, got {type(d).__name__}")
    if key not in d:
        raise DescriptorError(f"descriptor {d.get('type', '?')!r} is missing {key!r}")
    value = d[key]
    if not isinstance(value, kind):
        raise DescriptorError(f"{key!r} has the wrong type")
    return value


def _int_list(v, what: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise DescriptorError(f"{what} must be a list of integers")
    return list(v)


def _flatten(m, what: str) -> list[int]:
    if isinstance(m, list) and m and isinstance(m[0], list):
        return [a for row in m for a in _int_list(row, what)]
    return _int_list(m, what)


def normalize(d: Any) -> dict:
    """Canonical form of a group descriptor; parse -> serialize is a fixed point."""
    t = _require(d, "type", str)
    out: dict = {"type": t}
    if "name" in d:
        out["name"] = str(d["name"])
    if t == "cyclic_product":
        moduli = _int_list(_require(d, "moduli"), "moduli")
        if any(m < 1 for m in moduli):
            raise DescriptorError("moduli must be positive")
        out["moduli"] = moduli
    elif t == "matrix_group":
        m = _require(d, "modulus", int)
        if m < 2:
            raise DescriptorError("modulus must be at least 2")
        gens = [_flatten(g, "matrix") for g in _require(d, "generators", list)]
        if not gens:
            raise DescriptorError("matrix_group needs at least one generator")
        sizes = {len(g) for g in gens}
        dim = int(round(len(gens[0]) ** 0.5))
        if sizes != {dim * dim}:
            raise DescriptorError("generators must be square matrices of one size")
        out["modulus"] = m
        out["generators"] = [[a % m for a in g] for g in gens]
    elif t == "presentation_nil2":
        names = _require(d, "generators", list)
        if not all(isinstance(n, str) for n in names) or len(set(names)) != len(names):
            raise DescriptorError("generators must be distinct names")
        out["generators"] = list(names)
        rels = []
        for text in _require(d, "relations", list):
            try:
                rels.append(str(parse_relation(str(text), names)))
            except PresentationSyntaxError as e:
                raise DescriptorError(str(e)) from e
        out["relations"] = rels
        if "realization" in d:
            r = d["realization"]
            group = normalize(_require(r, "group", dict))
            images = _require(r, "images", dict)
            if set(images) != set(names):
                raise DescriptorError("realization must give an image for every generator")
            out["realization"] = {"group": group, "images": {n: images[n] for n in names}}
            if "order" in r:
                out["realization"]["order"] = _require(r, "order", int)
    elif t == "semidirect":
        out["base"] = normalize(_require(d, "base", dict))
        out["fiber"] = normalize(_require(d, "fiber", dict))
        out["action"] = normalize_action(_require(d, "action", dict))
    else:
        raise DescriptorError(f"unknown group type {t!r}; expected one of {GROUP_TYPES}")
    return out


def normalize_action(d: Any) -> dict:
    t = _require(d, "type", str)
    if t in ("trivial", "conjugation"):
        return {"type": t}
    if t == "matrices":
        return {"type": t, "images": [_flatten(m, "matrix") for m in _require(d, "images", list)]}
    if t == "automorphisms":
        return {"type": t, "images": [_int_list(p, "permutation") for p in _require(d, "images", list)]}
    if t == "table":
        return {"type": t, "table": [_int_list(r, "table row") for r in _require(d, "table", list)]}
    raise DescriptorError(f"unknown action type {t!r}; expected one of {ACTION_TYPES}")


@dataclass(frozen=True)
class Descriptor:
    """A validated group descriptor in canonical form."""

    data: str   # canonical JSON text

    @classmethod
    def parse(cls, obj: Any) -> "Descriptor":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as e:
                raise DescriptorError(f"invalid JSON: {e}") from e
        return cls(json.dumps(normalize(obj), sort_keys=True))

    def to_json(self) -> dict:
        return json.loads(self.data)

    def serialize(self) -> str:
        return self.data

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.data.encode()).hexdigest()[:16]


def element_value(G: FiniteGroup, v: Any):
    """Realization value for a JSON element (int vector or flat/nested matrix)."""
    real = G.realization
    if isinstance(real, CyclicProduct):
        vec = [v] if isinstance(v, int) else _int_list(v, "element")
        if len(vec) != len(real.moduli):
            raise DescriptorError("element has the wrong length")
        return tuple(a % m for a, m in zip(vec, real.moduli))
    if isinstance(real, MatrixGroup):
        flat = _flatten(v, "matrix")
        if len(flat) != real.dim ** 2:
            raise DescriptorError("matrix has the wrong size")
        return real.normalize(flat)
    raise DescriptorError(f"elements of {real.kind} groups cannot be given in JSON")


def element_id(G: FiniteGroup, v: Any) -> int:
    value = element_value(G, v)
    if value not in G.index:
        raise DescriptorError(f"{v} is not an element of {G.name}")
    return G.index[value]


def load_group(d: Any, budget: int = DEFAULT_BUDGET):
    """FiniteGroup for finite descriptors; FreeNil2Group for killing-only presentations."""
    if isinstance(d, Descriptor):
        d = d.to_json()
    d = normalize(d)
    t = d["type"]
    name = d.get("name")
    if t == "cyclic_product":
        return cyclic_product(d["moduli"], name=name, budget=budget)
    if t == "matrix_group":
        return matrix_group(d["modulus"], d["generators"], name=name, budget=budget)
    if t == "presentation_nil2":
        return _load_presentation(d, budget)
    base = _finite(load_group(d["base"], budget))
    fiber = _finite(load_group(d["fiber"], budget))
    xi = load_action(d["action"], base, fiber)
    G = semidirect(xi)
    if name:
        G.name = name
    return G


def _finite(G) -> FiniteGroup:
    if not isinstance(G, FiniteGroup):
        raise DescriptorError("a finite group is required here")
    return G


def _load_presentation(d: dict, budget: int):
    names = d["generators"]
    rels = [parse_relation(r, names) for r in d["relations"]]
    if "realization" not in d:
        if any(r.kind != "killing" for r in rels):
            raise DescriptorError(
                "presentations with non-killing relations need an explicit finite realization"
            )
        return FreeNil2Group.from_relations(names, rels)
    r = d["realization"]
    host = _finite(load_group(r["group"], budget))
    values = {n: element_value(host, r["images"][n]) for n in names}
    real = host.realization
    failed = relations_hold(rels, values, real.mul, real.inv, real.identity)
    if failed:
        raise DescriptorError(
            "realization violates " + ", ".join(f"{format_word(f.lhs)}={format_word(f.rhs)}" for f in failed)
        )
    G = enumerate_group(real, [values[n] for n in names], budget=budget, name=d.get("name"))
    if "order" in r and G.order != r["order"]:
        raise DescriptorError(f"realization has order {G.order}, expected {r['order']}")
    G.presentation = (tuple(names), tuple(rels))
    return G


def load_action(d: Any, B: FiniteGroup, X: FiniteGroup) -> DerivedAction:
    """Derived action described by ``d``; homomorphism failures raise HomomorphismError."""
    d = normalize_action(d)
    t = d["type"]
    if t == "trivial":
        return trivial_action(B, X)
    if t == "conjugation":
        if B.order != X.order or B.elements != X.elements:
            raise DescriptorError("conjugation needs actor and target to be the same group")
        xi = conjugation_action(X)
        return DerivedAction(B, X, xi.table)
    if t == "table":
        try:
            return DerivedAction(B, X, d["table"])
        except ValueError as e:
            raise DescriptorError(str(e)) from e
    return action_from_hom(action_hom(d, B, X), X)


def action_hom(d: Any, B: FiniteGroup, X: FiniteGroup) -> GroupHom:
    """B -> (matrices or automorphisms of X) for "matrices"/"automorphisms" actions."""
    d = normalize_action(d)
    if d["type"] not in ("matrices", "automorphisms"):
        raise DescriptorError(f"a {d['type']!r} action is not given by generator images")
    images = d["images"]
    if len(images) != len(B.generators):
        raise DescriptorError(f"need one image per generator of the actor ({len(B.generators)})")
    if d["type"] == "matrices":
        xr = X.realization
        if not isinstance(xr, CyclicProduct) or len(set(xr.moduli)) != 1:
            raise DescriptorError("matrix actions need a target Z_m^n")
        if any(len(m) != len(xr.moduli) ** 2 for m in images):
            raise DescriptorError("matrix size does not match the target's rank")
        cod = matrix_group(xr.moduli[0], images)
        ims = [cod.index[cod.realization.normalize(m)] for m in images]
    else:
        perms = [tuple(p) for p in images]
        if any(sorted(p) != list(range(X.order)) for p in perms):
            raise DescriptorError("automorphism images must be permutations of the target's ids")
        cod = enumerate_group(AutomorphismsOf(X), perms)
        ims = [cod.index[p] for p in perms]
    return hom(B, cod, ims)


def load_abelian(d: Any) -> FgAbelianGroup:
    if not isinstance(d, dict):
        raise DescriptorError("abelian group descriptor must be an object")
    if "moduli" in d:
        moduli = _int_list(d["moduli"], "moduli")
        if any(m < 0 for m in moduli):
            raise DescriptorError("moduli must be non-negative")
        return FgAbelianGroup.from_moduli(moduli)
    n = _require(d, "n", int)
    rels = [_int_list(r, "relation") for r in d.get("relations", [])]
    if any(len(r) != n for r in rels):
        raise DescriptorError("relations must have length n")
    return FgAbelianGroup(n, rels)


def load_span(d: Any) -> tuple[AbelianHom, AbelianHom]:
    S = load_abelian(_require(d, "source", dict))
    L = load_abelian(_require(d, "left", dict))
    R = load_abelian(_require(d, "right", dict))
    out = []
    for key, cod in (("f", L), ("g", R)):
        rows = [_int_list(r, key) for r in _require(d, key, list)]
        try:
            out.append(AbelianHom(S, cod, rows))
        except ValueError as e:
            raise DescriptorError(f"{key}: {e}") from e
    return out[0], out[1]


def read_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise DescriptorError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise DescriptorError(f"{path}: invalid JSON ({e})") from e


def file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]
