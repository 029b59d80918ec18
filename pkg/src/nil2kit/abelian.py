"""Finitely generated abelian groups Z^n / L with exact integer linear algebra.

Matrices are plain lists of rows of Python ints, so entries never overflow.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Sequence

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def matvec(A: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def transpose(A: Matrix, rows: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(rows or 0)] if rows else []
    return [list(c) for c in zip(*A)]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [list(map(int, r)) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def smith_normal_form(M: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U M V = D, U and V unimodular, D diagonal.

    The diagonal is non-negative and each entry divides the next (zeros last).
    Pivot rule: smallest non-zero absolute value in the remaining block (first in
    row-major order on ties); clear the pivot column with row operations, then
    the pivot row with column operations.
    """
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    A = [list(map(int, row)) for row in M]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                return U, A, V
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean &= A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean &= A[t][j] == 0
            if not clean:
                continue
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_kernel(A: Matrix, ncols: int) -> Matrix:
    """Basis (as columns, returned as a list of vectors) of {v in Z^ncols : A v = 0}."""
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    _, D, V = smith_normal_form(A, ncols)
    rank = sum(1 for d in diagonal(D) if d)
    return [[V[i][j] for i in range(ncols)] for j in range(rank, ncols)]


class FgAbelianGroup:
    """Z^n modulo the lattice spanned by ``relations`` (a list of length-n vectors)."""

    def __init__(self, n: int, relations: Sequence[Sequence[int]] = ()):
        self.n = int(n)
        rels = [list(map(int, r)) for r in relations]
        if any(len(r) != self.n for r in rels):
            raise ValueError("relation vectors must have length n")
        self.relations = [r for r in rels if any(r)]

    @classmethod
    def from_moduli(cls, moduli: Sequence[int]) -> "FgAbelianGroup":
        """Z/m1 x ... x Z/mk; a modulus of 0 gives a free factor."""
        n = len(moduli)
        return cls(n, [[m if i == j else 0 for i in range(n)] for j, m in enumerate(moduli) if m])

    def __repr__(self) -> str:
        return f"FgAbelianGroup({self.describe()})"

    @property
    def matrix(self) -> Matrix:
        """n x k matrix whose columns are the relations."""
        return transpose(self.relations) if self.relations else [[] for _ in range(self.n)]

    @cached_property
    def _snf(self):
        U, D, V = smith_normal_form(self.matrix, len(self.relations))
        d = diagonal(D) if self.relations else []
        d = d + [0] * (self.n - len(d))
        return U, d

    @property
    def diagonal(self) -> list[int]:
        return list(self._snf[1])

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Non-unit diagonal entries of the Smith form; 0 marks a free factor."""
        return tuple(d for d in self._snf[1] if d != 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self._snf[1] if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self._snf[1] if d > 1)

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.torsion)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def canonical(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates in Z/d1 x ... x Z^r; equal iff the classes of v are equal."""
        U, d = self._snf
        w = matvec(U, v) if self.n else []
        return tuple(x % di if di else x for x, di in zip(w, d) if di != 1)

    def contains(self, v: Sequence[int]) -> bool:
        """v lies in the relation lattice (i.e. is zero in the quotient)."""
        return not any(self.canonical(v))

    def zero(self) -> tuple[int, ...]:
        return self.canonical([0] * self.n)

    def describe(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank, "order": self.order}


@dataclass(eq=False)
class AbelianHom:
    """Map Z^n -> Z^m by ``matrix`` (m rows, n columns) that descends to the quotients."""

    dom: FgAbelianGroup
    cod: FgAbelianGroup
    matrix: Matrix
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.matrix = [list(map(int, r)) for r in self.matrix] if self.cod.n else []
        if self.cod.n and any(len(r) != self.dom.n for r in self.matrix):
            raise ValueError("matrix shape does not match dom/cod ranks")
        if len(self.matrix) != self.cod.n:
            raise ValueError("matrix shape does not match dom/cod ranks")
        if self.check:
            for r in self.dom.relations:
                if not self.cod.contains(self(r)):
                    raise ValueError(f"matrix does not respect relation {r}")

    def __call__(self, v: Sequence[int]) -> list[int]:
        if not self.cod.n:
            return []
        return matvec(self.matrix, v)

    def compose(self, inner: "AbelianHom") -> "AbelianHom":
        """self o inner"""
        if not self.cod.n:
            mat: Matrix = []
        else:
            mat = [[sum(self.matrix[i][k] * inner.matrix[k][j] for k in range(inner.cod.n)) for j in range(inner.dom.n)] for i in range(self.cod.n)]
        return AbelianHom(inner.dom, self.cod, mat, check=False)

    def equals(self, other: "AbelianHom") -> bool:
        """Equal as maps of quotients."""
        for j in range(self.dom.n):
            e = [int(i == j) for i in range(self.dom.n)]
            diff = [a - b for a, b in zip(self(e), other(e))]
            if not self.cod.contains(diff):
                return False
        return True


def identity_hom(G: FgAbelianGroup) -> AbelianHom:
    return AbelianHom(G, G, identity_matrix(G.n), check=False)


def is_injective(h: AbelianHom) -> bool:
    """Kernel of the induced map on quotients is trivial.

    Solves M v = R_cod y over Z (Smith form of [M | -R_cod]) and checks that
    every solution's v-part already lies in the domain lattice.
    """
    n = h.dom.n
    if n == 0:
        return True
    rc = h.cod.relations
    m = h.cod.n
    if m == 0:
        return h.dom.is_trivial()
    A = [list(h.matrix[i]) + [-r[i] for r in rc] for i in range(m)]
    for vec in integer_kernel(A, n + len(rc)):
        if not h.dom.contains(vec[:n]):
            return False
    return True


def _block_relations(groups: Sequence[FgAbelianGroup]) -> tuple[int, list[list[int]], list[int]]:
    offsets = []
    total = 0
    for G in groups:
        offsets.append(total)
        total += G.n
    rels = []
    for G, off in zip(groups, offsets):
        for r in G.relations:
            v = [0] * total
            v[off: off + G.n] = r
            rels.append(v)
    return total, rels, offsets


def _injection(G: FgAbelianGroup, target: FgAbelianGroup, offset: int) -> AbelianHom:
    mat = [[int(i == offset + j) for j in range(G.n)] for i in range(target.n)]
    return AbelianHom(G, target, mat, check=False)


def pushout(f: AbelianHom, g: AbelianHom) -> tuple[FgAbelianGroup, AbelianHom, AbelianHom]:
    """(B + B') / <(f(s), -g(s))> for a span B <-f- S -g-> B'; returns (P, leg_B, leg_B')."""
    if f.dom is not g.dom:
        raise ValueError("pushout needs a span with a common source")
    Bl, Br = f.cod, g.cod
    total, rels, offs = _block_relations([Bl, Br])
    for j in range(f.dom.n):
        e = [int(i == j) for i in range(f.dom.n)]
        rels.append(f(e) + [-a for a in g(e)])
    P = FgAbelianGroup(total, rels)
    return P, _injection(Bl, P, offs[0]), _injection(Br, P, offs[1])


@dataclass(eq=False)
class ThinDiagram:
    """Objects plus at most one arrow per ordered pair of indices."""

    objects: list[FgAbelianGroup]
    arrows: dict[tuple[int, int], AbelianHom] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), h in self.arrows.items():
            if h.dom is not self.objects[i] or h.cod is not self.objects[j]:
                raise ValueError(f"arrow {i}->{j} does not match the objects")

    def check_thin(self) -> bool:
        """Parallel composites agree: h_jk o h_ij = h_ik whenever all three exist."""
        for (i, j), hij in self.arrows.items():
            for (j2, k), hjk in self.arrows.items():
                if j2 == j and (i, k) in self.arrows:
                    if not hjk.compose(hij).equals(self.arrows[(i, k)]):
                        return False
        return True


def colimit(D: ThinDiagram) -> tuple[FgAbelianGroup, list[AbelianHom]]:
    """(direct sum of objects) / <leg_j(h(m)) - leg_i(m)> over arrows h: i -> j."""
    total, rels, offs = _block_relations(D.objects)
    for (i, j), h in sorted(D.arrows.items()):
        Gi = D.objects[i]
        for s in range(Gi.n):
            e = [int(t == s) for t in range(Gi.n)]
            v = [0] * total
            for t, a in enumerate(h(e)):
                v[offs[j] + t] += a
            v[offs[i] + s] -= 1
            rels.append(v)
    T = FgAbelianGroup(total, rels)
    return T, [_injection(G, T, off) for G, off in zip(D.objects, offs)]


def direct_sum(groups: Sequence[FgAbelianGroup]) -> tuple[FgAbelianGroup, list[AbelianHom]]:
    return colimit(ThinDiagram(list(groups)))


@dataclass(eq=False)
class AbelianCoordinates:
    """A finite abelian group (given by ids) identified with Z^r / L."""

    group: FgAbelianGroup
    generators: tuple[int, ...]
    coords: dict[int, tuple[int, ...]]   # element id -> exponent vector

    def element(self, v: Sequence[int]) -> int:
        key = self.group.canonical(v)
        return self._back[key]

    @cached_property
    def _back(self) -> dict[tuple[int, ...], int]:
        return {self.group.canonical(v): g for g, v in self.coords.items()}


def from_finite_abelian(G, generators: Sequence[int], members: Sequence[int] | None = None) -> AbelianCoordinates:
    """Coordinates of the abelian subgroup of ``G`` generated by ``generators``.

    Walks the Cayley graph breadth-first; every edge h -> h*s contributes the
    relation v(h) + e_s - v(h*s), and these generate the full relation lattice.
    """
    gens = tuple(generators)
    r = len(gens)
    coords = {0: (0,) * r}
    queue = deque([0])
    rels: dict[tuple[int, ...], None] = {}
    while queue:
        h = queue.popleft()
        vh = coords[h]
        for s, g in enumerate(gens):
            k = G.mul(h, g)
            step = tuple(a + (1 if t == s else 0) for t, a in enumerate(vh))
            if k in coords:
                diff = [a - b for a, b in zip(step, coords[k])]
                if any(diff):
                    rels[tuple(diff)] = None
            else:
                coords[k] = step
                queue.append(k)
    A = FgAbelianGroup(r, list(rels))
    if members is not None and set(coords) != set(members):
        raise ValueError("generators do not generate the given members")
    if A.order != len(coords):
        raise ValueError("subgroup is not abelian")
    return AbelianCoordinates(A, gens, coords)
