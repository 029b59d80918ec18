"""The acceptance criteria as runnable checks, plus the verify-paper report."""
from __future__ import annotations

import random
import time
from importlib import resources
from itertools import product

import numpy as np

from . import __version__
from .abelian import AbelianHom, FgAbelianGroup, determinant, diagonal, is_injective, matmul, pushout, smith_normal_form
from .actions import (
    action_from_hom,
    check_acting_morphism,
    conjugation_action,
    displacement,
    semidirect,
    validate_nil2_action,
)
from .automorphisms import aut_group, central_auts, inner_auts, inner_perm, lemma_check
from .catalog import alternating4, cyclic_product, load_catalog, symmetric3, unitriangular
from .descriptors import action_hom, load_group, read_json
from .freenil2 import FreeNil2Group, comparison_map, lacc_counterexample
from .groups import CyclicProduct, FiniteGroup, check_group_axioms, format_class, hom, homomorphisms, lower_central_series, nilpotency_class
from .weakrep import build_T, tau_injectivity_check

FIXTURES = ("catalog.json", "z5_actor.json", "z5_target.json", "z5_action.json")

# seconds allowed per criterion
LIMITS = {1: 1, 2: 60, 3: 60, 4: 60, 5: 300, 6: 300, 7: 300, 8: 1, 9: 120}

NAMES = {
    1: "central automorphisms of Z2xZ2",
    2: "Z5^3 example end to end",
    3: "conjugation is an acting morphism",
    4: "lemma equivalence",
    5: "action conditions iff class-2 pair group",
    6: "amalgamation in abelian groups",
    7: "weak representation",
    8: "LACC counterexample",
    9: "property suites",
}


def fixture_path(name: str) -> str:
    return str(resources.files("nil2kit").joinpath("data", name))


def fixture(name: str):
    return read_json(fixture_path(name))


def _verdict(check: str, ok: bool, **detail) -> dict:
    out = {"check": check, "pass": bool(ok)}
    out.update(detail)
    return out


# ---------------------------------------------------------------------------


def criterion_1() -> list[dict]:
    X = cyclic_product([2, 2])
    A = aut_group(X)
    C = central_auts(X)
    cls = format_class(nilpotency_class(C.group))
    return [
        _verdict("|Aut_c(Z2xZ2)| = 6", C.order == 6, value=C.order),
        _verdict("Aut_c = Aut", C.order == A.order and C.in_aut.order == A.order, aut_order=A.order),
        _verdict("Aut_c(Z2xZ2) not nilpotent", cls == "not nilpotent", value=cls),
    ]


def z5_example():
    B = load_group(fixture("z5_actor.json"))
    X = load_group(fixture("z5_target.json"))
    phi = action_hom(fixture("z5_action.json"), B, X)
    return B, X, phi


def criterion_2() -> list[dict]:
    B, X, phi = z5_example()   # hom() verifies phi on every Cayley edge
    out = [_verdict("phi: B -> GL3(Z5) is a homomorphism", True, order_B=B.order)]
    report = check_acting_morphism(phi, X)
    out.append(_verdict(
        "acting-morphism condition fails",
        not report.valid and report.condition == "act_mor",
        condition=report.condition,
        witness=list(report.witness or ()),
        readable=report.readable,
    ))
    xi = action_from_hom(phi, X)
    x, a = B.generators[0], B.generators[1]
    v = X.index[(0, 1, 1)]
    d = displacement(xi, a, v)
    moved = xi(x, d)
    out.append(_verdict(
        "(a*(0,1,1))(0,1,1)^-1 = (0,1,0) and x moves it to (1,1,0)",
        X.elements[d] == (0, 1, 0) and X.elements[moved] == (1, 1, 0),
        displacement=list(X.elements[d]),
        image=list(X.elements[moved]),
    ))
    G = semidirect(xi)
    orders = [S.order for S in lower_central_series(G)]
    c = nilpotency_class(G)
    out.append(_verdict("B|xZ5^3 has order 15625 and class 3", G.order == 15625 and c == 3, order=G.order, lcs=orders, nilpotency_class=c))
    return out


def criterion_3(catalog: list[FiniteGroup] | None = None) -> list[dict]:
    catalog = catalog if catalog is not None else load_catalog()
    out = []
    for X in catalog:
        c = nilpotency_class(X)
        if c is None or c > 2:
            continue
        inn = inner_auts(X)
        C = central_auts(X)
        composite = hom(X, C.group, [C.id_of(inner_perm(X, g)) for g in X.generators])
        report = check_acting_morphism(composite, X)
        S = semidirect(conjugation_action(X))
        cs = nilpotency_class(S)
        out.append(_verdict(
            f"conjugation on {X.name}",
            bool(report) and cs is not None and cs <= 2,
            inn_order=inn.subgroup.order,
            semidirect_class=cs,
            **({} if report else {"witness": report.to_json()}),
        ))
    return out


def lemma_groups() -> list[FiniteGroup]:
    return load_catalog() + [alternating4(), unitriangular(4, 2), unitriangular(3, 5), symmetric3()]


def criterion_4() -> list[dict]:
    out = []
    for X in lemma_groups():
        inn_central, class2 = lemma_check(X)
        out.append(_verdict(f"lemma on {X.name}", inn_central == class2, inn_central=inn_central, class_le_2=class2))
    nonnil = sum(1 for X in lemma_groups() if nilpotency_class(X) is None)
    out.append(_verdict(">= 10 groups, some not nilpotent", len(out) >= 10 and nonnil > 0, groups=len(out), not_nilpotent=nonnil))
    return out


def pair_group_is_class2(B: FiniteGroup, X: FiniteGroup, act: np.ndarray) -> bool:
    """Independent oracle: build (b,x)(b',x') = (bb', x (b*x')) on B x X and test it directly."""
    nb, nx = B.order, X.order
    Bt, Xt = B.table, X.table
    n = nb * nx
    b = np.repeat(np.arange(nb), nx)
    x = np.tile(np.arange(nx), nb)
    bb = Bt[b[:, None], b[None, :]]
    xx = Xt[x[:, None], act[b[:, None], x[None, :]]]
    T = bb * nx + xx
    ar = np.arange(n)
    if not np.array_equal(T[0], ar) or not np.array_equal(T[:, 0], ar):
        return False
    if not np.array_equal(T[T[:, :, None], ar[None, None, :]], T[ar[:, None, None], T[None, :, :]]):
        return False
    inv = np.argmax(T == 0, axis=1)
    if not np.all(T[ar, inv] == 0):
        return False
    comm = T[T[T, inv[:, None]], inv[None, :]]   # g h g^-1 h^-1
    values = np.unique(comm)
    return bool(np.all(T[values, :] == T[:, values].T))


def criterion_5(max_order: int = 8) -> list[dict]:
    groups = [G for G in load_catalog() if G.order <= max_order]
    total = 0
    agree = 0
    mismatch = None
    positives = 0
    for X in groups:
        A = aut_group(X)
        for B in groups:
            for phi in homomorphisms(B, A):
                xi = action_from_hom(phi, X)
                lib = bool(validate_nil2_action(xi, cross_check=False))
                oracle = pair_group_is_class2(B, X, xi.table)
                total += 1
                positives += lib
                if lib == oracle:
                    agree += 1
                elif mismatch is None:
                    mismatch = {"B": B.name, "X": X.name, "images": list(phi.images), "library": lib, "oracle": oracle}
    return [_verdict(
        "conditions hold iff the pair group has class <= 2",
        agree == total and total > 0,
        homomorphisms=total,
        nil2_actions=positives,
        **({"mismatch": mismatch} if mismatch else {}),
    )]


def injective_homs(S: tuple[FgAbelianGroup, list[int]], L: tuple[FgAbelianGroup, list[int]]) -> list[AbelianHom]:
    (Sg, _), (Lg, lm) = S, L
    elems = [list(v) for v in product(*(range(m) for m in lm))]
    out = []
    for cols in product(elems, repeat=Sg.n):
        mat = [[c[r] for c in cols] for r in range(Lg.n)]
        try:
            h = AbelianHom(Sg, Lg, mat)
        except ValueError:
            continue
        if is_injective(h):
            out.append(h)
    return out


def criterion_6() -> list[dict]:
    abel = []
    for G in load_catalog():
        if isinstance(G.realization, CyclicProduct) and G.order <= 64:
            moduli = list(G.realization.moduli)
            abel.append((G.name, (FgAbelianGroup.from_moduli(moduli), moduli)))
    spans = 0
    legs_ok = 0
    order_ok = 0
    first_bad = None
    for sname, S in abel:
        monos = {lname: injective_homs(S, L) for lname, L in abel}
        for (lname, L), (rname, R) in product(abel, repeat=2):
            for f in monos[lname]:
                for g in monos[rname]:
                    P, jl, jr = pushout(f, g)
                    spans += 1
                    ok = is_injective(jl) and is_injective(jr)
                    expected = L[0].order * R[0].order // S[0].order
                    legs_ok += ok
                    order_ok += P.order == expected
                    if (not ok or P.order != expected) and first_bad is None:
                        first_bad = {"S": sname, "L": lname, "R": rname, "f": f.matrix, "g": g.matrix}
    Z = FgAbelianGroup(1)
    P, jl, jr = pushout(AbelianHom(Z, Z, [[2]]), AbelianHom(Z, Z, [[3]]))
    zspan = P.invariant_factors == (0,) and is_injective(jl) and is_injective(jr)
    return [
        _verdict("pushout legs injective for every span of monos", legs_ok == spans and spans > 0, spans=spans,
                 **({"first_failure": first_bad} if first_bad else {})),
        _verdict("|P| = |L||R|/|S| for every span of monos", order_ok == spans),
        _verdict("Z <-2- Z -3-> Z gives P = Z with injective legs", zspan,
                 invariant_factors=list(P.invariant_factors), legs=[P.canonical(jl([1])), P.canonical(jr([1]))]),
    ]


def criterion_7() -> list[dict]:
    catalog = load_catalog()
    out = []
    for moduli in ([2, 2], [4]):
        X = cyclic_product(moduli)
        wr = build_T(X)
        rep = tau_injectivity_check(X, catalog, wr)
        out.append(_verdict(
            f"tau injective and natural for X = {X.name}",
            rep["pass"],
            T=wr.T.describe(),
            admissible_subgroups=len(wr.subgroups),
            naturality_squares=rep["naturality_squares"],
            per_B={r["B"]: r["injective"] for r in rep["per_B"]},
            skipped=rep["skipped_not_class_2"],
        ))
    return out


def criterion_8() -> list[dict]:
    rep = lacc_counterexample()
    fx, fxy = rep["flat_b_x"], rep["flat_b_xy"]
    out = [
        _verdict("flat(b;x) = Z x Z", fx["abelianization_rank"] == 2 and fx["commutator_rank"] == 0, isomorphism_type=fx["isomorphism_type"]),
        _verdict(
            "flat(b;x,y) = H3 x Z x Z",
            (fxy["abelianization_rank"], fxy["commutator_rank"], fxy["center_rank"], fxy["isomorphism_type"]) == (4, 1, 3, "H3 x Z^2"),
            isomorphism_type=fxy["isomorphism_type"],
        ),
    ]
    out += rep["verdicts"]
    return out


def criterion_9(seed: int = 0, samples: int = 10**5, snf_cases: int = 1000) -> list[dict]:
    rng = random.Random(seed)
    out = []
    B, X, phi = z5_example()
    big = semidirect(action_from_hom(phi, X))
    failures = {G.name: check_group_axioms(G, samples=samples, seed=seed) for G in load_catalog() + [big]}
    bad = {k: v for k, v in failures.items() if v}
    out.append(_verdict("group axioms", not bad, groups=len(failures), samples=samples, **({"failures": bad} if bad else {})))

    D, C, cmp_phi, *_ = comparison_map()
    F3 = FreeNil2Group(["g1", "g2", "g3"])
    laws = {"associativity": 0, "bilinearity": 0, "class_2": 0, "inverse": 0, "hom": 0}
    per_group = samples // 3 + 1
    for G in (F3, D, C):
        for _ in range(per_group):
            p, q, r = (G.random_element(rng, 6) for _ in range(3))
            if G.mul(G.mul(p, q), r) != G.mul(p, G.mul(q, r)):
                laws["associativity"] += 1
            if G.commutator(p, G.mul(q, r)) != G.mul(G.commutator(p, q), G.commutator(p, r)):
                laws["bilinearity"] += 1
            if not G.is_identity(G.commutator(G.commutator(p, q), r)):
                laws["class_2"] += 1
            if not G.is_identity(G.mul(p, G.inv(p))):
                laws["inverse"] += 1
    for _ in range(per_group):
        p, q = D.random_element(rng, 6), D.random_element(rng, 6)
        if cmp_phi(D.mul(p, q)) != C.mul(cmp_phi(p), cmp_phi(q)):
            laws["hom"] += 1
    sign = all(
        F3.commutator(F3.generator(i), F3.generator(j)) == F3.element(e={(i, j): 1})
        for i in range(3) for j in range(i + 1, 3)
    )
    out.append(_verdict("collection laws", not any(laws.values()) and sign, samples=3 * per_group, violations=laws))

    snf_bad = 0
    for _ in range(snf_cases):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        M = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        U, Dm, V = smith_normal_form(M, n)
        d = diagonal(Dm)
        ok = (
            matmul(matmul(U, M), V) == Dm
            and abs(determinant(U)) == 1
            and abs(determinant(V)) == 1
            and all(Dm[i][j] == 0 for i in range(m) for j in range(n) if i != j)
            and all(x >= 0 for x in d)
            and all((d[i + 1] % d[i] == 0) if d[i] else d[i + 1] == 0 for i in range(len(d) - 1))
        )
        snf_bad += not ok
    out.append(_verdict("Smith normal form exact", snf_bad == 0, matrices=snf_cases, failures=snf_bad))
    return out


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def run_criterion(n: int, seed: int = 0) -> dict:
    start = time.perf_counter()
    verdicts = CRITERIA[n](seed=seed) if n == 9 else CRITERIA[n]()
    seconds = time.perf_counter() - start
    ok = all(v["pass"] for v in verdicts) and seconds < LIMITS[n]
    return {"criterion": n, "name": NAMES[n], "pass": ok, "seconds": round(seconds, 3), "limit": LIMITS[n], "verdicts": verdicts}


def run_all(seed: int = 0, only: list[int] | None = None) -> dict:
    from .descriptors import file_digest

    results = [run_criterion(n, seed) for n in (only or sorted(CRITERIA))]
    return {
        "command": "verify-paper",
        "version": __version__,
        "seed": seed,
        "inputs": {name: file_digest(fixture_path(name)) for name in FIXTURES},
        "verdicts": results,
        "timings": {str(r["criterion"]): r["seconds"] for r in results},
        "pass": all(r["pass"] for r in results),
    }
