from itertools import combinations, product
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from nil2kit.abelian import (
    AbelianHom,
    FgAbelianGroup,
    ThinDiagram,
    colimit,
    determinant,
    diagonal,
    direct_sum,
    from_finite_abelian,
    identity_hom,
    integer_kernel,
    is_injective,
    matmul,
    pushout,
    smith_normal_form,
)
from nil2kit.catalog import cyclic_product

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def determinantal_divisors(M):
    """Invariant factors from gcds of k x k minors (exact determinants via sympy)."""
    m, n = len(M), len(M[0])
    ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(sympy.Matrix([[M[r][c] for c in cols] for r in rows]).det()))
        if g == 0:
            break
        ds.append(g)
    return [ds[i] // ds[i - 1] for i in range(1, len(ds))]


@given(matrices)
def test_snf_is_exact_and_unimodular(M):
    n = len(M[0])
    U, D, V = smith_normal_form(M, n)
    assert matmul(matmul(U, M), V) == D
    assert abs(int(sympy.Matrix(U).det())) == 1
    assert abs(int(sympy.Matrix(V).det())) == 1
    d = diagonal(D)
    assert all(D[i][j] == 0 for i in range(len(M)) for j in range(n) if i != j)
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz) and d[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices)
def test_snf_matches_gcd_of_minors(M):
    U, D, V = smith_normal_form(M, len(M[0]))
    assert [x for x in diagonal(D) if x] == determinantal_divisors(M)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_matches_sympy(M):
    assert determinant(M) == int(sympy.Matrix(M).det())


def test_small_snf_examples():
    assert diagonal(smith_normal_form([[2], [-3]])[1]) == [1]
    assert FgAbelianGroup(2, [[4, 0], [0, 6]]).invariant_factors == (2, 12)
    assert FgAbelianGroup(3, [[2, 0, 0]]).invariant_factors == (2, 0, 0)
    assert FgAbelianGroup(1, [[1]]).is_trivial()


def test_integer_kernel():
    A = [[2, 4, 6]]
    K = integer_kernel(A, 3)
    assert len(K) == 2
    assert all(sum(a * b for a, b in zip(A[0], v)) == 0 for v in K)


def brute_injective(h: AbelianHom, moduli):
    for v in product(*(range(m) for m in moduli)):
        if any(v) and h.cod.contains(h(list(v))):
            return False
    return True


@pytest.mark.parametrize("src, dst, mat", [
    ([2], [4], [[2]]),
    ([4], [4], [[2]]),
    ([2, 2], [2, 2, 2], [[1, 0], [0, 1], [1, 1]]),
    ([2, 2], [4, 2], [[2, 0], [0, 1]]),
    ([2, 2], [4, 2], [[2, 2], [1, 1]]),
    ([6], [2, 3], [[1], [1]]),
    ([6], [2, 3], [[0], [1]]),
])
def test_injectivity_against_brute_force(src, dst, mat):
    h = AbelianHom(FgAbelianGroup.from_moduli(src), FgAbelianGroup.from_moduli(dst), mat)
    assert is_injective(h) == brute_injective(h, src)


def test_injectivity_on_infinite_groups():
    Z = FgAbelianGroup(1)
    assert not is_injective(AbelianHom(Z, Z, [[0]]))
    assert is_injective(AbelianHom(Z, Z, [[5]]))
    Z2 = FgAbelianGroup.from_moduli([2])
    assert not is_injective(AbelianHom(Z, Z2, [[1]]))


def test_relations_are_respected():
    with pytest.raises(ValueError):
        AbelianHom(FgAbelianGroup.from_moduli([2]), FgAbelianGroup.from_moduli([3]), [[1]])


def test_pushout_of_integers():
    Z = FgAbelianGroup(1)
    P, jl, jr = pushout(AbelianHom(Z, Z, [[2]]), AbelianHom(Z, Z, [[3]]))
    assert P.invariant_factors == (0,)
    assert is_injective(jl) and is_injective(jr)
    assert P.canonical(jl([2])) == P.canonical(jr([3]))


def test_colimit_of_span_matches_pushout():
    S = FgAbelianGroup.from_moduli([2])
    L = FgAbelianGroup.from_moduli([4])
    R = FgAbelianGroup.from_moduli([2, 2])
    f = AbelianHom(S, L, [[2]])
    g = AbelianHom(S, R, [[1], [0]])
    P, _, _ = pushout(f, g)
    T, legs = colimit(ThinDiagram([S, L, R], {(0, 1): f, (0, 2): g}))
    assert T.invariant_factors == P.invariant_factors == (2, 4)
    assert legs[1].compose(f).equals(legs[0]) and legs[2].compose(g).equals(legs[0])


def test_direct_sum_and_identity():
    G, inj = direct_sum([FgAbelianGroup.from_moduli([2]), FgAbelianGroup.from_moduli([3])])
    assert G.invariant_factors == (6,)
    assert identity_hom(G).equals(identity_hom(G))


def test_thinness_check_detects_disagreeing_composites():
    Z = FgAbelianGroup(1)
    ok = ThinDiagram([Z, Z, Z], {(0, 1): AbelianHom(Z, Z, [[1]]), (1, 2): AbelianHom(Z, Z, [[1]]), (0, 2): AbelianHom(Z, Z, [[1]])})
    bad = ThinDiagram([Z, Z, Z], {(0, 1): AbelianHom(Z, Z, [[1]]), (1, 2): AbelianHom(Z, Z, [[1]]), (0, 2): AbelianHom(Z, Z, [[2]])})
    assert ok.check_thin() and not bad.check_thin()


@pytest.mark.parametrize("moduli", [[2, 2], [4, 2], [6], [2, 2, 2], [3, 3]])
def test_coordinates_of_finite_abelian_groups(moduli):
    G = cyclic_product(moduli)
    C = from_finite_abelian(G, G.generators)
    assert C.group.order == G.order
    for g in G:
        assert C.element(C.coords[g]) == g
