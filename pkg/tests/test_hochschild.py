import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scalext.errors import ArityBudgetExceeded, NonCommutingOperators, NotADerivation
from scalext.fields import GF, QQ, FunctionField
from scalext.hochschild import (
    GradedAlgebra,
    GradedBimodule,
    GradedModule,
    HochschildComplex,
    KoszulBimodule,
    bar_hh,
    derivation_check,
    ext_via_bar,
    hh_condition,
    inner_certificate,
    is_inner,
    koszul_hh,
    koszul_ranks,
    symmetric_rank_law,
)
from scalext.linalg import Matrix

from oracles import brute_hh, ext_dual_numbers_from_k

k = GradedAlgebra.ground(QQ)
D = GradedAlgebra.dual_numbers(QQ)
T = GradedAlgebra.upper_triangular(QQ)
M2 = GradedAlgebra.matrix_algebra(2, QQ)
kD = GradedBimodule.from_augmentation(D, [1, 0])


def test_ground_field():
    kk = GradedBimodule.regular(k)
    assert bar_hh(k, kk, 0).rank == 1
    assert [bar_hh(k, kk, n).rank for n in (1, 2, 3)] == [0, 0, 0]


def test_center_of_matrix_algebra():
    R = GradedBimodule.regular(M2)
    assert bar_hh(M2, R, 0).rank == 1


def test_matrix_algebra_is_separable():
    R = GradedBimodule.regular(M2)
    ranks = [bar_hh(M2, R, n).rank for n in (1, 2, 3)]
    assert ranks == [0, 0, 0]
    assert [brute_hh(M2, R, n) for n in (0, 1, 2)] == [1, 0, 0]


@pytest.mark.parametrize("name,B,M", [
    ("dual-trivial", D, kD),
    ("dual-regular", D, GradedBimodule.regular(D)),
    ("triangular-regular", T, GradedBimodule.regular(T)),
])
def test_bar_matches_brute_force(name, B, M):
    for n in range(3):
        rep = bar_hh(B, M, n)
        assert rep.d_squared_zero
        assert rep.rank == brute_hh(B, M, n)


def test_normalized_and_full_complexes_agree():
    U = GradedAlgebra.unital_basis(M2)
    for B, M in ((D, kD), (U, GradedBimodule.regular(U))):
        for n in range(3):
            a = HochschildComplex(B, M, normalized=True).report(n, 0).rank
            b = HochschildComplex(B, M, normalized=False).report(n, 0).rank
            assert a == b


def test_d_squared_on_graded_algebra():
    G = GradedAlgebra.truncated_polynomial(3, QQ, degree=1)
    C = HochschildComplex(G, GradedBimodule.regular(G))
    for n in range(3):
        for j in range(-3, 2):
            assert C.d_squared_zero(n, j)


def test_arity_budget():
    with pytest.raises(ArityBudgetExceeded):
        bar_hh(D, kD, 9, budget=4)


def test_small_characteristic_is_refused():
    F = GF(3)
    B = GradedAlgebra.dual_numbers(F)
    with pytest.raises(ValueError):
        bar_hh(B, GradedBimodule.from_augmentation(B, [1, 0]), 4)


def test_cocycle_basis_is_closed():
    rep = bar_hh(D, kD, 2, 0)
    C = HochschildComplex(D, kD)
    for v in rep.cocycle_basis():
        assert C.is_cocycle(v, 2, 0)


L3 = FunctionField(QQ, "x", "y", "z")


def test_koszul_hkr_ranks():
    assert koszul_ranks(KoszulBimodule.symmetric(L3, 1)) == [1, 3, 3, 1]
    assert [symmetric_rank_law(1, 3, n) for n in range(4)] == [1, 3, 3, 1]


def test_koszul_invertible_operator():
    L1 = FunctionField(QQ, "x")
    M = KoszulBimodule(L1, 1, [Matrix.identity(L1, 1)])
    assert koszul_ranks(M) == [0, 0]


def test_koszul_degree_out_of_range():
    with pytest.raises(ValueError):
        koszul_hh(KoszulBimodule.symmetric(L3, 1), 4)


def test_noncommuting_operators():
    L2 = FunctionField(QQ, "x", "y")
    with pytest.raises(NonCommutingOperators):
        KoszulBimodule(L2, 2, [[[0, 1], [0, 0]], [[0, 0], [1, 0]]])


@pytest.mark.parametrize("d,dim", [(1, 2), (2, 1), (3, 2), (4, 1)])
def test_symmetric_rank_law(d, dim):
    L = FunctionField(QQ, *"xyzw"[:d])
    assert koszul_ranks(KoszulBimodule.symmetric(L, dim)) == [symmetric_rank_law(dim, d, n) for n in range(d + 1)]


def _commuting_bimodule(rng, L, dim):
    # polynomials in one nilpotent-plus-scalar matrix commute
    N = Matrix(L, [[L.random_polynomial(rng, 1, 2, 3) if c > r else L.zero() for c in range(dim)]
                   for r in range(dim)])
    deltas = []
    for _ in range(L.ngens):
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        deltas.append(N.scale(L(a)) + (N @ N).scale(L(b)))
    return KoszulBimodule(L, dim, deltas)


@given(st.integers(0, 10 ** 6))
def test_koszul_euler_characteristic_vanishes(seed):
    rng = random.Random(seed)
    L = FunctionField(QQ, "x", "y")
    M = _commuting_bimodule(rng, L, 3)
    ranks = koszul_ranks(M)
    assert sum((-1) ** n * r for n, r in enumerate(ranks)) == 0


L2 = FunctionField(QQ, "x", "y")
NIL = KoszulBimodule(L2, 2, [[[0, 1], [0, 0]], [[0, 0], [0, 0]]])


def test_derivation_check_examples():
    z, o = L2.zero(), L2.one()
    assert derivation_check([[z, z], [z, z]], NIL)
    sym = KoszulBimodule.symmetric(L2, 2)
    assert derivation_check([[o, z], [L2.gens()[0], o]], sym)
    assert not derivation_check([[z, z], [z, o]], NIL)


def test_is_inner_examples():
    z, o = L2.zero(), L2.one()
    sym = KoszulBimodule.symmetric(L2, 2)
    assert is_inner([[o, z], [z, z]], sym) is None
    m = is_inner([[z, z], [z, z]], NIL)
    assert m is not None and not any(m)
    with pytest.raises(NotADerivation):
        is_inner([[z, z], [z, o]], NIL)
    cert = inner_certificate([[o, z], [z, z]], sym)
    assert cert["augmented_rank"] == cert["coboundary_rank"] + 1


@given(st.integers(0, 10 ** 6))
def test_is_inner_round_trip(seed):
    rng = random.Random(seed)
    M = _commuting_bimodule(rng, L2, 3)
    m0 = [L2.random_polynomial(rng, 1, 2, 3) for _ in range(3)]
    e = [D.apply(m0) for D in M.deltas]
    assert derivation_check(e, M)
    m = is_inner(e, M)
    assert m is not None
    assert [D.apply(m) for D in M.deltas] == e


def test_condition_ground_field_all_modes():
    E = GradedBimodule.regular(k)
    for mode in ("lift_object", "lift_morphism", "faithful"):
        assert hh_condition(k, E, mode, max_n=4).holds


def test_condition_dual_numbers_shifted_coefficients():
    E = GradedBimodule.from_augmentation(D, [1, 0], degree=-1)
    rep = hh_condition(D, E, "lift_object", max_n=4)
    assert not rep.holds
    assert rep.rows[0] == (3, -1, 1)


def test_condition_degree_bookkeeping():
    rep = hh_condition(D, kD, "lift_object", max_n=5)
    assert rep.holds
    assert [(n, j) for n, j, _ in rep.rows] == [(3, -1), (4, -2), (5, -3)]


def test_condition_rejects_unknown_mode():
    with pytest.raises(ValueError):
        hh_condition(k, GradedBimodule.regular(k), "sideways")


def test_ext_over_ground_field():
    V = GradedModule(k, ["a", "b"], [0, 0], {(0, 0): {0: 1}, (0, 1): {1: 1}})
    W = GradedModule(k, ["c", "d", "e"], [0, 0, 0], {(0, i): {i: 1} for i in range(3)})
    assert ext_via_bar(k, V, W, 0) == 6
    assert [ext_via_bar(k, V, W, n) for n in (1, 2)] == [0, 0]


@pytest.mark.parametrize("N", [GradedModule.from_augmentation(D, [1, 0]), GradedModule.regular(D)],
                         ids=["trivial", "regular"])
def test_ext_dual_numbers_against_periodic_resolution(N):
    kmod = GradedModule.from_augmentation(D, [1, 0])
    oracle = ext_dual_numbers_from_k(N)
    assert [ext_via_bar(D, kmod, N, p) for p in range(5)] == [oracle(p) for p in range(5)]


def test_ext_dual_numbers_all_ones():
    kmod = GradedModule.from_augmentation(D, [1, 0])
    assert [ext_via_bar(D, kmod, kmod, p) for p in range(5)] == [1] * 5


def test_ext_matrix_algebra_semisimple():
    col = GradedModule.column(M2, 2)
    assert ext_via_bar(M2, col, col, 0) == 1
    assert [ext_via_bar(M2, col, col, p) for p in (1, 2, 3)] == [0, 0, 0]


def test_corner_identity_on_triangular_modules():
    S1 = GradedModule.from_augmentation(T, [1, 0, 0])
    S2 = GradedModule.from_augmentation(T, [0, 0, 1])
    for M, N in ((S1, S2), (S2, S1), (S1, S1)):
        E = GradedBimodule.hom(M, N)
        for p in range(4):
            assert bar_hh(T, E, p, 0).rank == ext_via_bar(T, M, N, p)
