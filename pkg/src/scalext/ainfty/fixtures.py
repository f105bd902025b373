"""Small DG algebras and modules used as positive and negative controls.

Everything here is assembled from structure constants by the same code paths
as user input, then checked with the square-zero and Leibniz validators.

F1  {1, t, e, te}, |e| = -1, de = t: a DG algebra with cohomology k + k.te.
F2  a, b, c, u, v with du = ab, dv = bc: cohomology with trivial products
    but a nonzero triple Massey product <a, b, c> = [uc + av].
F3  k[eps] with M = k[1] + k (eps acting by zero) and N = cone(eps: B -> B):
    H(M) and H(N) agree as H(B)-modules but M and N are not equivalent.
F4  upper triangular 2x2 matrices acting on the cohomology of a four
    dimensional complex through the column module.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import random

from ..fields import QQ
from ..hochschild import GradedAlgebra
from ..linalg import Echelon, Matrix, solve
from .algebra import AInftyAlgebra, Cohomology, cohomology_algebra, differential_of
from .core import GradedSpace
from .modules import AInftyModule


@dataclass
class Fixture:
    name: str
    summary: str
    data: dict = dc_field(default_factory=dict)


def tensor_algebras(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    """Graded tensor product with the Koszul sign in both product and differential."""
    nb = B.dim
    idx = lambda i, j: i * nb + j
    names = [f"{a}|{b}" for a in A.names for b in B.names]
    degrees = [A.degrees[i] + B.degrees[j] for i in range(A.dim) for j in range(nb)]
    mult = {}
    for (i, i2), o in A.mult.items():
        for (j, j2), o2 in B.mult.items():
            s = -1 if (B.degrees[j] * A.degrees[i2]) % 2 else 1
            mult[(idx(i, j), idx(i2, j2))] = {idx(k, l): s * c * c2 for k, c in o.items() for l, c2 in o2.items()}
    diff = {}
    for i in range(A.dim):
        for j in range(nb):
            out = {}
            for k, c in (A.differential or {}).get(i, {}).items():
                out[idx(k, j)] = out.get(idx(k, j), 0) + c
            s = -1 if A.degrees[i] % 2 else 1
            for l, c in (B.differential or {}).get(j, {}).items():
                out[idx(i, l)] = out.get(idx(i, l), 0) + s * c
            out = {k: v for k, v in out.items() if v}
            if out:
                diff[idx(i, j)] = out
    unit = {idx(i, j): c * c2 for i, c in A.unit.items() for j, c2 in B.unit.items()}
    return GradedAlgebra(names, degrees, mult, unit, A.field, diff)


def contractible_pair(field=QQ, degree=0):
    """{1, x, y} with |y| = degree, |x| = degree - 1, dx = y and xy = yx = 0."""
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}
    return GradedAlgebra(["1", "x", "y"], [0, degree - 1, degree], mult, {0: 1}, field, {1: {2: 1}})


def _from_table(names, degrees, products, differential, field=QQ):
    idx = {n: i for i, n in enumerate(names)}
    mult = {(0, i): {i: 1} for i in range(len(names))}
    mult.update({(i, 0): {i: 1} for i in range(len(names))})
    for (x, y), z in products.items():
        mult[(idx[x], idx[y])] = {idx[z]: 1}
    diff = {idx[x]: {idx[y]: 1} for x, y in differential.items()}
    G = GradedAlgebra(names, degrees, mult, {0: 1}, field, diff)
    G.validate()
    return G


def f1_algebra(field=QQ) -> GradedAlgebra:
    return _from_table(["1", "t", "e", "te"], [0, 0, -1, -1],
                       {("t", "e"): "te", ("e", "t"): "te"}, {"e": "t"}, field)


def f2_algebra(field=QQ) -> GradedAlgebra:
    return _from_table(["1", "a", "b", "c", "u", "v", "ab", "bc", "uc", "av"],
                       [0, 1, 1, 1, 1, 1, 2, 2, 2, 2],
                       {("a", "b"): "ab", ("b", "c"): "bc", ("u", "c"): "uc", ("a", "v"): "av"},
                       {"u": "ab", "v": "bc"}, field)


def cohomology_projection(A: AInftyAlgebra):
    """A chain map A -> H(A) that is the identity on the chosen representatives."""
    d = differential_of(A)
    coh = Cohomology(A.space, d)
    F = A.field
    bydeg = A.space.by_degree()
    out = {}
    for deg, cols in bydeg.items():
        reps = [(k, r) for k, r in enumerate(coh.reps) if coh.degrees[k] == deg]
        # basis of this degree: representatives, boundaries, then any complement
        ech = Echelon(F, A.space.dim)
        full = []
        candidates = [r for _, r in reps] + [d[i] for i in bydeg.get(deg - 1, []) if d.get(i)]
        candidates += [{i: F.one()} for i in cols]
        for v in candidates:
            if ech.add(v) is not None:
                full.append(v)
        M = Matrix(F, [[v.get(i, F.zero()) for v in full] for i in cols], len(full))
        for i in cols:
            sol = solve(M, [F.one() if j == i else F.zero() for j in cols])
            row = {k: sol[t] for t, (k, _) in enumerate(reps) if sol[t]}
            if row:
                out[i] = row
    return out, coh


def formal_model(A: AInftyAlgebra):
    """H(A) as a strict graded algebra with zero differential."""
    HA, coh = cohomology_algebra(A, Cohomology(A.space, differential_of(A)))
    return AInftyAlgebra.from_dg(HA), HA, coh


def F1(field=QQ) -> Fixture:
    G = f1_algebra(field)
    A = AInftyAlgebra.from_dg(G)
    H, HA, _ = formal_model(A)
    proj, _ = cohomology_projection(A)
    return Fixture("F1", "DG algebra {1,t,e,te} with de = t, projected onto its cohomology",
                   {"algebra": A, "graded": G, "target": H, "target_graded": HA, "phi": proj})


def F2(field=QQ) -> Fixture:
    G = f2_algebra(field)
    A = AInftyAlgebra.from_dg(G)
    H, HA, coh = formal_model(A)
    phi = {i: dict(r) for i, r in enumerate(coh.reps)}
    return Fixture("F2", "formal cohomology of a DG algebra with a nonzero Massey product, included at chain level",
                   {"algebra": H, "graded": HA, "target": A, "target_graded": G, "phi": phi})


def F2_module(field=QQ, massey_acts=True) -> Fixture:
    """M = k x0 + k x2 over the F2 algebra; both degree-2 classes send x0 to x2.

    The Massey class [uc + av] then acts by 2 x0 -> x2 (or by zero when
    ``massey_acts`` is false, where the second class acts by -1).
    """
    G = f2_algebra(field)
    A = AInftyAlgebra.from_dg(G)
    HA, coh = cohomology_algebra(A)
    space = GradedSpace(["x0", "x2"], [0, 2], field)
    top = [k for k in range(coh.dim) if coh.degrees[k] == 2]
    unit = next(k for k in range(coh.dim) if coh.degrees[k] == 0)
    action = {(unit, 0): {0: 1}, (unit, 1): {1: 1}, (top[0], 0): {1: 1},
              (top[1], 0): {1: 1 if massey_acts else -1}}
    return Fixture("F2-module", "two-dimensional module on which the Massey class acts",
                   {"algebra": A, "space": space, "d": {}, "action": action, "cohomology": HA})


def F3(field=QQ) -> Fixture:
    D = GradedAlgebra.dual_numbers(field)
    B = AInftyAlgebra.from_dg(D)
    Ms = GradedSpace(["m1", "m0"], [-1, 0], field)
    M = AInftyModule.strict(B, Ms, {}, {(0, 0): {0: 1}, (0, 1): {1: 1}})
    Ns = GradedSpace(["u", "eu", "v", "ev"], [-1, -1, 0, 0], field)
    N = AInftyModule.strict(B, Ns, {0: {3: 1}},
                            {(0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
                             (1, 0): {1: 1}, (1, 2): {3: 1}})
    f1 = {0: {1: 1}, 1: {2: 1}}
    return Fixture("F3", "k[eps]: split module k[1]+k mapped to cone(eps)",
                   {"algebra": B, "graded": D, "M": M, "N": N, "f1": f1})


def F3_faithful(field=QQ) -> Fixture:
    """k[eps] acting on B + cone(id_B), whose cohomology is B in degree 0."""
    D = GradedAlgebra.dual_numbers(field)
    B = AInftyAlgebra.from_dg(D)
    space = GradedSpace(["1", "e", "p", "ep", "q", "eq"], [0, 0, -1, -1, 0, 0], field)
    d = {2: {4: 1}, 3: {5: 1}}
    action = {}
    for base in (0, 2, 4):
        action[(0, base)] = {base: 1}
        action[(0, base + 1)] = {base + 1: 1}
        action[(1, base)] = {base + 1: 1}
    M = AInftyModule.strict(B, space, d, action)
    return Fixture("F3-faithful", "k[eps] on B + cone(id); Hom between cohomologies sits in degree 0",
                   {"algebra": B, "graded": D, "M": M, "N": M})


def F4(field=QQ) -> Fixture:
    T = GradedAlgebra.unital_basis(GradedAlgebra.upper_triangular(field))
    B = AInftyAlgebra.from_dg(T)
    space = GradedSpace(["m1", "m2", "p", "q"], [0, 0, -1, 0], field)
    d = {2: {3: 1}}
    # basis of T is (1, E11, E12); column module on (m1, m2)
    action = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {0: 1}, (2, 1): {0: 1}}
    return Fixture("F4", "upper triangular 2x2 matrices acting on a complex through the column module",
                   {"algebra": B, "graded": T, "space": space, "d": d, "action": action})


def matrix_thickening(n=2, field=QQ, seed=0) -> Fixture:
    """M_n(k) -> M_n(k) (x) {1, x, y}, a -> a(x)1 + rho(a)(x)y with random rho.

    The target's cohomology is M_n(k), which has Hochschild dimension 0.
    """
    Mn = GradedAlgebra.matrix_algebra(n, field)
    C = tensor_algebras(Mn, contractible_pair(field, 0))
    rng = random.Random(seed)
    phi = {}
    for i in range(Mn.dim):
        row = {3 * i: 1}
        for j in range(Mn.dim):
            c = rng.randint(-2, 2)
            if c:
                row[3 * j + 2] = c
        phi[i] = row
    return Fixture("matrix", "matrix algebra into a thickened copy of itself",
                   {"algebra": AInftyAlgebra.from_dg(Mn), "graded": Mn,
                    "target": AInftyAlgebra.from_dg(C), "target_graded": C, "phi": phi})


def all_algebra_fixtures(field=QQ):
    return [F1(field), F2(field), matrix_thickening(2, field)]
