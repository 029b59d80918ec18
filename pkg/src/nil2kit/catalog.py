"""Constructors for the concrete groups used throughout the toolkit."""
from __future__ import annotations

import json
from importlib import resources
from typing import Sequence

from .groups import (
    DEFAULT_BUDGET,
    CyclicProduct,
    FiniteGroup,
    MatrixGroup,
    enumerate_group,
)


def cyclic_product(moduli: Sequence[int], name: str | None = None, budget: int = DEFAULT_BUDGET) -> FiniteGroup:
    real = CyclicProduct(moduli)
    label = name or ("Z" + "xZ".join(str(m) for m in real.moduli) if real.moduli else "1")
    return enumerate_group(real, real.unit_vectors(), budget=budget, name=label)


def matrix_group(modulus: int, generators: Sequence, name: str | None = None, budget: int = DEFAULT_BUDGET) -> FiniteGroup:
    """Group generated by square matrices over Z_modulus (nested rows or flat row-major)."""
    if not generators:
        raise ValueError("matrix_group needs at least one generator")
    first = generators[0]
    if isinstance(first[0], (list, tuple)):
        dim = len(first)
    else:
        dim = int(round(len(first) ** 0.5))
    real = MatrixGroup(modulus, dim)
    gens = [real.normalize(g) for g in generators]
    return enumerate_group(real, gens, budget=budget, name=name)


def elementary(dim: int, i: int, j: int, t: int = 1) -> list[list[int]]:
    """Identity plus t at (i, j), 1-based indices."""
    m = [[int(r == c) for c in range(dim)] for r in range(dim)]
    m[i - 1][j - 1] += t
    return m


def unitriangular(dim: int, p: int) -> FiniteGroup:
    """Upper unitriangular dim x dim matrices over Z_p, generated by E + E_{i,i+1}."""
    gens = [elementary(dim, i, i + 1) for i in range(1, dim)]
    return matrix_group(p, gens, name=f"UT{dim}(Z{p})")


def symmetric3() -> FiniteGroup:
    """S3 realized as GL_2(Z_2)."""
    return matrix_group(2, [[[0, 1], [1, 0]], [[1, 1], [0, 1]]], name="S3")


def dihedral8() -> FiniteGroup:
    """Symmetries of the square, as integer matrices reduced mod 3."""
    return matrix_group(3, [[[0, -1], [1, 0]], [[1, 0], [0, -1]]], name="D4")


def quaternion8() -> FiniteGroup:
    """Q8 inside SL_2(Z_3)."""
    return matrix_group(3, [[[1, 1], [1, 2]], [[2, 1], [1, 1]]], name="Q8")


def alternating4() -> FiniteGroup:
    """A4 as 4x4 permutation matrices of two 3-cycles."""
    c1 = [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    c2 = [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]]
    return matrix_group(2, [c1, c2], name="A4")


def trivial_group() -> FiniteGroup:
    return cyclic_product([], name="1")


def small_groups() -> list[FiniteGroup]:
    """One representative of every isomorphism type of order <= 8."""
    return [
        trivial_group(),
        cyclic_product([2]),
        cyclic_product([3]),
        cyclic_product([4]),
        cyclic_product([2, 2]),
        cyclic_product([5]),
        cyclic_product([6]),
        symmetric3(),
        cyclic_product([7]),
        cyclic_product([8]),
        cyclic_product([4, 2]),
        cyclic_product([2, 2, 2]),
        dihedral8(),
        quaternion8(),
    ]


def load_catalog(path=None) -> list[FiniteGroup]:
    """Load a list of group descriptors; defaults to the bundled catalog fixture."""
    from .descriptors import load_group

    if path is None:
        text = resources.files("nil2kit").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    groups = []
    for entry in data["groups"]:
        G = load_group(entry)
        G.name = entry.get("name", G.name)
        groups.append(G)
    return groups
