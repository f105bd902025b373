import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalext.ainfty import (
    AInftyAlgebra,
    AInftyModule,
    GradedSpace,
    TaylorMap,
    add_b3_repair,
    bar_square,
    coderivation_square,
    homotopy_holds,
    lift_algebra_morphism,
    lift_module_morphism,
    lift_module_structure,
    module_morphism_holds,
    module_square_violations,
    morphism_defect,
    morphism_equation_holds,
    nullhomotopy,
    shift_signs,
    unshift_signs,
)
from scalext.ainfty.core import _add, module_keys
from scalext.ainfty.fixtures import (
    F1,
    F2,
    F2_module,
    F3,
    F3_faithful,
    F4,
    contractible_pair,
    f1_algebra,
    matrix_thickening,
    tensor_algebras,
)
from scalext.ainfty.modules import homotopy_image
from scalext.ainfty.morphisms import _CohomologyPair, strict_identity
from scalext.errors import ArityBudgetExceeded, DefectAtLowerArity, DegreeMismatch, ObstructionNonzero
from scalext.hochschild import GradedAlgebra, HochschildComplex, hh_condition

from oracles import _acc, _linear, apply_coderivation, bar_defect, bar_square_oracle

ONE = Fraction(1)


# -- sign conventions -------------------------------------------------------------------

def test_differential_shifts_with_a_minus_sign():
    V = GradedSpace(["a", "b"], [0, 1])
    b = shift_signs(TaylorMap(V, V, {1: {(0,): {1: ONE}}}, None, "m"))
    assert b[1] == {(0,): {1: -1}}


def test_degree_zero_product_keeps_its_sign():
    B = GradedAlgebra.matrix_algebra(2)
    A = AInftyAlgebra.from_dg(B)
    m2 = {k: dict(v) for k, v in A.m_components()[2].items()}
    assert A.b[2] == m2
    assert A.b[2][(0, 0)] == {0: 1}


def test_degree_one_product_sign():
    # b_2(sa, sb) = (-1)^|a| s m_2(a, b)
    V = GradedSpace(["a", "b", "ab"], [1, 0, 1])
    m = {2: {(0, 1): {2: ONE}, (1, 0): {0: ONE}}}
    b = shift_signs(TaylorMap(V, V, m, None, "m"))
    assert b[2][(0, 1)] == {2: -1}
    assert b[2][(1, 0)] == {0: 1}


def test_wrong_degree_is_rejected():
    V = GradedSpace(["a", "b"], [0, 0])
    with pytest.raises(DegreeMismatch):
        shift_signs(TaylorMap(V, V, {1: {(0,): {1: ONE}}}, None, "m"))


@st.composite
def m_picture_maps(draw):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    degs = [rng.randint(-2, 2) for _ in range(rng.randint(1, 4))]
    V = GradedSpace([f"v{i}" for i in range(len(degs))], degs)
    comps = {}
    for n in (1, 2, 3):
        comp = {}
        for key in product(range(V.dim), repeat=n):
            for o in range(V.dim):
                if degs[o] - sum(degs[x] for x in key) == 2 - n and rng.random() < 0.5:
                    comp.setdefault(key, {})[o] = Fraction(rng.randint(-3, 3) or 1)
        comps[n] = comp
    return TaylorMap(V, V, comps, None, "m")


@settings(max_examples=50)
@given(m_picture_maps())
def test_shift_round_trip(m):
    back = unshift_signs(shift_signs(m))
    assert {n: c for n, c in back.components.items() if c} == {n: c for n, c in m.components.items() if c}


# -- b o b = 0 -------------------------------------------------------------------------

@pytest.mark.parametrize("B", [GradedAlgebra.matrix_algebra(2), GradedAlgebra.upper_triangular(),
                               GradedAlgebra.truncated_polynomial(3, degree=1), GradedAlgebra.dual_numbers()],
                         ids=["M2", "T2", "k[t]/t^3", "dual"])
def test_associative_algebras_square_to_zero(B):
    assert coderivation_square(AInftyAlgebra.from_dg(B), 5) == []


def test_dg_fixtures_square_to_zero():
    for G in (f1_algebra(), F2().data["target_graded"], matrix_thickening().data["target_graded"]):
        assert coderivation_square(AInftyAlgebra.from_dg(G), 5) == []


def test_leibniz_violation_detected_at_arity_two():
    G = f1_algebra()
    bad = GradedAlgebra(G.names, G.degrees, {k: dict(v) for k, v in G.mult.items()}, G.unit, G.field,
                        {2: {1: 1}, 3: {0: 1}})
    arities = [v.arity for v in coderivation_square(AInftyAlgebra.from_dg(bad), 3)]
    assert arities and arities[0] == 2


def test_square_budget():
    with pytest.raises(ArityBudgetExceeded):
        coderivation_square(AInftyAlgebra.from_dg(f1_algebra()), 9, budget=6)


def _perturb_by_commutator(A, H):
    """b_2 + [b_1, H] for a degree-0 arity-2 component H; Leibniz survives, associativity need not."""
    sd, n = A.sdeg, A.space.dim
    b1 = {1: A.b[1]}

    def Hw(w):
        return {(o,): c for o, c in H.get(w, {}).items()} if len(w) == 2 else {}

    b2 = {k: dict(v) for k, v in A.b[2].items()}
    for w in product(range(n), repeat=2):
        r = _linear(lambda x: apply_coderivation(b1, sd, x), Hw(w))
        for x, c in _linear(Hw, apply_coderivation(b1, sd, w)).items():
            _acc(r, x, -c)
        for x, c in r.items():
            if len(x) == 1:
                _acc(b2.setdefault(w, {}), x[0], c)
    return {1: A.b[1], 2: {k: v for k, v in b2.items() if v}}


def test_b3_repairs_homotopy_associative_product():
    G = tensor_algebras(contractible_pair(degree=0), GradedAlgebra.dual_numbers())
    A = AInftyAlgebra.from_dg(G)
    b = _perturb_by_commutator(A, {(5, 0): {2: ONE}, (5, 1): {2: ONE}})
    broken = AInftyAlgebra(A.space, b, A.unit)
    assert [v.arity for v in coderivation_square(broken, 3)] == [3]
    repaired = add_b3_repair(A.space, b)
    assert repaired is not None and repaired[3]
    fixed = AInftyAlgebra(A.space, repaired, A.unit)
    assert coderivation_square(fixed, 3) == []
    assert coderivation_square(fixed, 4) == []


def _random_dg_algebras():
    cp0, cp1 = contractible_pair(degree=0), contractible_pair(degree=1)
    D = GradedAlgebra.dual_numbers()
    return [f1_algebra(), cp0, cp1, tensor_algebras(cp0, D), tensor_algebras(D, cp1),
            GradedAlgebra.truncated_polynomial(3, degree=1), tensor_algebras(GradedAlgebra.truncated_polynomial(2, degree=1), cp0)]


def _leibniz_and_associator(G):
    """Unsuspended defects computed straight from the structure constants."""
    F = G.field
    deg = G.degrees

    def m2(u, v):
        return G.mul(u, v)

    def dv(u):
        return G.d(u)

    leib, assoc = {}, {}
    for a, b in product(range(G.dim), repeat=2):
        ea, eb = {a: F.one()}, {b: F.one()}
        lhs = dv(m2(ea, eb))
        rhs = m2(dv(ea), eb)
        sign = -1 if deg[a] % 2 else 1
        for k, c in m2(ea, dv(eb)).items():
            _acc(rhs, k, sign * c)
        r = dict(lhs)
        for k, c in rhs.items():
            _acc(r, k, -c)
        if r:
            leib[(a, b)] = r
    for a, b, c in product(range(G.dim), repeat=3):
        ea, eb, ec = {a: F.one()}, {b: F.one()}, {c: F.one()}
        r = m2(m2(ea, eb), ec)
        for k, x in m2(ea, m2(eb, ec)).items():
            _acc(r, k, -x)
        if r:
            assoc[(a, b, c)] = r
    return leib, assoc


@settings(max_examples=40)
@given(st.integers(0, 6), st.integers(0, 10 ** 6), st.booleans())
def test_low_arity_equations_are_leibniz_and_associativity(which, seed, tamper):
    G = _random_dg_algebras()[which]
    if tamper:
        rng = random.Random(seed)
        mult = {k: dict(v) for k, v in G.mult.items()}
        diff = {k: dict(v) for k, v in (G.differential or {}).items()}
        i, j = rng.randrange(G.dim), rng.randrange(G.dim)
        # one extra structure constant of the right degree, if there is one
        for o in range(G.dim):
            if G.degrees[o] == G.degrees[i] + G.degrees[j] and rng.random() < 0.5:
                mult.setdefault((i, j), {})[o] = mult.get((i, j), {}).get(o, 0) + rng.choice([-1, 1])
                break
        G = GradedAlgebra(G.names, G.degrees, mult, G.unit, G.field, diff)
    A = AInftyAlgebra.from_dg(G)
    leib, assoc = _leibniz_and_associator(G)
    r2, r3 = bar_square(A.b, A.sdeg, 2), bar_square(A.b, A.sdeg, 3)
    keys2 = {k for k, row in r2.items() if any(row.values())}
    keys3 = {k for k, row in r3.items() if any(row.values())}
    assert keys2 == set(leib)
    # without b_3 the arity-3 equation is exactly associativity, entry by entry up to sign
    assert keys3 == set(assoc)
    for k in keys3:
        assert {o for o, c in r3[k].items() if c} == set(assoc[k])


@given(st.integers(0, 6), st.integers(1, 3))
def test_bar_square_matches_materialized_bar(which, arity):
    A = AInftyAlgebra.from_dg(_random_dg_algebras()[which])
    ours = {k: v for k, v in bar_square(A.b, A.sdeg, arity).items() if v}
    assert ours == bar_square_oracle(A.b, A.sdeg, arity, A.space.dim)


# -- morphisms -------------------------------------------------------------------------

def test_strict_map_has_no_defect():
    B = GradedAlgebra.matrix_algebra(2)
    A = AInftyAlgebra.from_dg(B)
    psi = TaylorMap(A.space, A.space, {1: {(i,): r for i, r in strict_identity(A).items()}}, 0)
    for n in (1, 2, 3):
        assert not any(morphism_defect(A, A, psi, n)[n + 1].values())


def test_defect_from_first_component_only():
    fx = F1().data
    A, C = fx["algebra"], fx["target"]
    psi1 = {1: {(i,): r for i, r in fx["phi"].items()}}
    D = morphism_defect(A, C, TaylorMap(A.space, C.space, psi1, 0), 1)[2]
    assert {k: v for k, v in D.items() if v} == bar_defect(A.b, A.sdeg, C.b, C.sdeg, psi1, 2, A.space.dim)
    assert {k: v for k, v in D.items() if v} == {(1, 2): {0: -1}, (2, 1): {0: 1}}


def test_wrong_second_component_is_caught_at_arity_two():
    fx = F1().data
    A, C = fx["algebra"], fx["target"]
    psi = lift_algebra_morphism(A, C, fx["phi"], 2).map.components
    bad = dict(psi)
    bad[2] = {k: dict(v) for k, v in psi[2].items()}
    bad[2].setdefault((1, 2), {})[0] = bad[2].get((1, 2), {}).get(0, 0) + 1
    with pytest.raises(DefectAtLowerArity, match="arity 2"):
        morphism_defect(A, C, TaylorMap(A.space, C.space, bad, 0), 2)


@pytest.mark.parametrize("make", [F1, F2, matrix_thickening], ids=["F1", "F2", "matrix"])
@pytest.mark.parametrize("gauge", [None, 1, 2])
def test_third_defect_matches_materialized_bar(make, gauge):
    fx = make().data
    A, C = fx["algebra"], fx["target"]
    psi = lift_algebra_morphism(A, C, fx["phi"], 2, gauge_seed=gauge).map
    ours = {k: v for k, v in morphism_defect(A, C, psi, 2)[3].items() if v}
    low = {k: v for k, v in psi.components.items() if k <= 2}
    assert ours == bar_defect(A.b, A.sdeg, C.b, C.sdeg, low, 3, A.space.dim)


@pytest.mark.parametrize("G", [f1_algebra(), GradedAlgebra.matrix_algebra(2)], ids=["F1", "M2"])
def test_identity_lifts_strictly(G):
    A = AInftyAlgebra.from_dg(G)
    res = lift_algebra_morphism(A, A, strict_identity(A), 5)
    assert res.ok
    assert all(not c for n, c in res.map.components.items() if n > 1)


def test_separable_target_lifts_to_arity_five():
    fx = matrix_thickening().data
    pair = _CohomologyPair(fx["algebra"], fx["target"], {(i,): r for i, r in fx["phi"].items()})
    assert hh_condition(pair.HA, pair.bimodule, "lift_object", 5).holds
    res = lift_algebra_morphism(fx["algebra"], fx["target"], fx["phi"], 5)
    assert res.ok and res.verified_to == 5
    assert morphism_equation_holds(fx["algebra"], fx["target"], res.map, 5)


def test_massey_fixture_is_obstructed_at_arity_three():
    fx = F2().data
    res = lift_algebra_morphism(fx["algebra"], fx["target"], fx["phi"], 5)
    ob = res.obstruction
    assert not res.ok and ob.arity == 3 and ob.internal_degree == -1
    assert ob.closed and not ob.exact
    coef, aug = ob.system_ranks
    assert aug == coef + 1
    # re-check the class in the normalized complex as well
    pair = _CohomologyPair(fx["algebra"], fx["target"], {(i,): r for i, r in fx["phi"].items()})
    hc = HochschildComplex(pair.HA, pair.bimodule, normalized=False)
    basis, index = hc.basis(3, -1)
    vec = {index[(args, t)]: c for (args, t), c in ob.cochain.items()}
    assert hc.is_cocycle(vec, 3, -1) and not hc.is_coboundary(vec, 3, -1)
    assert not hh_condition(pair.HA, pair.bimodule, "lift_object", 3).holds


@pytest.mark.parametrize("seeds", [(1, 2), (3, 4)])
def test_gauge_choices_give_valid_lifts(seeds):
    fx = F1().data
    A, C = fx["algebra"], fx["target"]
    maps = [lift_algebra_morphism(A, C, fx["phi"], 4, gauge_seed=s).map for s in seeds]
    for psi in maps:
        assert morphism_equation_holds(A, C, psi, 4)


# -- modules ---------------------------------------------------------------------------

def _ground_modules():
    k = AInftyAlgebra.from_dg(GradedAlgebra.ground())
    V = GradedSpace(["a", "b"], [0, 1])
    M = AInftyModule.strict(k, V, {}, {(0, 0): {0: 1}, (0, 1): {1: 1}})
    W = GradedSpace(["c"], [1])
    N = AInftyModule.strict(k, W, {}, {(0, 0): {0: 1}})
    return M, N


def test_chain_maps_over_the_ground_field_lift_strictly():
    M, N = _ground_modules()
    res = lift_module_morphism(M, N, {1: {0: ONE}}, 4)
    assert res.ok
    assert all(not c for k, c in res.map.components.items() if k > 0)


def test_central_multiplication_lifts_strictly():
    B = AInftyAlgebra.from_dg(GradedAlgebra.dual_numbers())
    R = AInftyModule.regular(B)
    res = lift_module_morphism(R, R, {0: {1: ONE}}, 4)
    assert res.ok
    assert all(not c for k, c in res.map.components.items() if k > 0)
    assert module_morphism_holds(R, R, res.map.components, 4)


def test_split_module_into_cone_is_obstructed():
    fx = F3().data
    res = lift_module_morphism(fx["M"], fx["N"], fx["f1"], 4)
    ob = res.obstruction
    assert not res.ok and ob.arity == 2
    assert ob.closed and not ob.exact


def _null_homotopic(M, arity, seed):
    rng = random.Random(seed)
    h0 = {}
    for k in range(arity - 1):
        comp = {}
        for key, o in module_keys(M.algebra.sdeg, M.space.degrees, M.space.degrees, k, -1, ()):
            c = rng.randint(-2, 2)
            if c:
                _add(comp, key, o, Fraction(c))
        h0[k] = comp
    return {k: homotopy_image(M, M, h0, k) for k in range(arity)}


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_nullhomotopy_recovers_a_homotopy(seed):
    M = F3_faithful().data["M"]
    g = _null_homotopic(M, 4, seed)
    h = nullhomotopy(M, M, g, 4)
    assert homotopy_holds(M, M, g, h.components, 4)


def test_nullhomotopy_of_zero_is_zero():
    M = F3_faithful().data["M"]
    h = nullhomotopy(M, M, {}, 4)
    assert all(not c for c in h.components.values())


def test_nullhomotopy_refuses_without_faithfulness():
    fx = F3().data
    M = fx["M"]
    with pytest.raises(ObstructionNonzero):
        nullhomotopy(M, M, {}, 3)


def test_truncated_polynomial_acts_strictly():
    G = GradedAlgebra.truncated_polynomial(3)
    B = AInftyAlgebra.from_dg(G)
    # k[t]/t^3 on a copy of itself placed in two adjacent degrees, t acting the same on both
    V = GradedSpace(["p0", "p1", "p2", "q0", "q1", "q2"], [-1, -1, -1, 0, 0, 0])
    d = {0: {3: 1}, 1: {4: 1}, 2: {5: 1}}
    action = {}
    for a, x in product(range(3), repeat=2):
        if a + x < 3:
            action[(a, x)] = {a + x: 1}
            action[(a, x + 3)] = {a + x + 3: 1}
    res = lift_module_structure(B, V, d, _cohomology_action(B, V, d, action), 4)
    assert res.ok
    assert module_square_violations(res.module, 4) == []


def _cohomology_action(B, V, d, action):
    from scalext.ainfty.algebra import Cohomology, differential_of
    cohB = Cohomology(B.space, differential_of(B))
    cohM = Cohomology(V, d)
    out = {}
    for i, rb in enumerate(cohB.reps):
        for j, rm in enumerate(cohM.reps):
            img = {}
            for b, cb in rb.items():
                for m, cm in rm.items():
                    for o, c in action.get((b, m), {}).items():
                        _acc(img, o, cb * cm * c)
            proj = cohM.project(img)
            if proj:
                out[(i, j)] = proj
    return out


def test_triangular_algebra_structure_lifts():
    fx = F4().data
    res = lift_module_structure(fx["algebra"], fx["space"], fx["d"], fx["action"], 5)
    assert res.ok
    assert module_square_violations(res.module, 5) == []


def test_massey_module_is_obstructed():
    fx = F2_module().data
    res = lift_module_structure(fx["algebra"], fx["space"], fx["d"], fx["action"], 4)
    assert not res.ok
    assert res.obstruction.closed and not res.obstruction.exact
