import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.domains import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from scalext.errors import PoleAtPoint, ShapeMismatch
from scalext.fields import GF, QQ, FunctionField, evaluate
from scalext.linalg import Matrix, Quotient, cokernel_basis, image_basis, kernel_basis, rank, rref, solve

from strategies import KXY, elements

KX = FunctionField(QQ, "x")
KXYZ = FunctionField(QQ, "x", "y", "z")


def test_rank_examples():
    assert rank(Matrix.identity(QQ, 3)) == 3
    assert rank(Matrix.zeros(QQ, 4, 2)) == 0
    x = KX.gens()[0]
    assert rank(Matrix(KX, [[x, 1], [x * x, x]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 2)).dim == 0
    K = kernel_basis(Matrix(QQ, [[1, -1]]))
    assert K.vectors == ((1, 1),)
    x = KX.gens()[0]
    K = kernel_basis(Matrix(KX, [[x, -1]]))
    assert K.dim == 1
    # echelon-normalized: pivot 1, so the vector is (1, x)
    assert K.vectors[0] == (KX(1), x)


def test_solve_examples():
    b = [Fraction(3), Fraction(-1), Fraction(7, 2)]
    assert solve(Matrix.identity(QQ, 3), b) == b
    assert solve(Matrix.zeros(QQ, 2, 2), [1, 0]) is None
    assert solve(Matrix(QQ, [[1, 1]]), [2]) == [2, 0]
    with pytest.raises(ShapeMismatch):
        solve(Matrix(QQ, [[1, 1]]), [1, 2])


def test_cokernel_examples():
    assert cokernel_basis(Matrix.identity(QQ, 3)).dim == 0
    assert cokernel_basis(Matrix.zeros(QQ, 3, 2)).dim == 3
    x = KX.gens()[0]
    C = cokernel_basis(Matrix(KX, [[x], [1]]))
    assert C.dim == 1
    q = Quotient(Matrix(KX, [[x], [1]]))
    assert q.in_image([x * x, x])
    assert not q.in_image(q.lift([1]))


def test_rref_is_reduced():
    M = Matrix(QQ, [[2, 4, 1], [1, 2, 3], [3, 6, 4]])
    R, piv = rref(M)
    assert piv == [0, 2]
    assert R.rows[0] == [1, 2, 0] and R.rows[1] == [0, 0, 1]


def _random_matrix(rng, K, r, c, density=0.6):
    def entry():
        if rng.random() > density:
            return K.zero()
        return K.random_element(rng, degree=1, terms=2, bound=3)
    return Matrix(K, [[entry() for _ in range(c)] for _ in range(r)], c)


def _low_rank(rng, K, r, c, k):
    A = _random_matrix(rng, K, r, k, 1.0)
    B = _random_matrix(rng, K, k, c, 1.0)
    return A @ B


@pytest.mark.parametrize("K", [QQ, GF(5), KX, KXY], ids=repr)
def test_rank_nullity_on_random_matrices(K):
    rng = random.Random(repr(K))
    count = 500 if not K.is_function_field else 80
    for t in range(count):
        r, c = rng.randint(0, 5), rng.randint(0, 5)
        M = _low_rank(rng, K, r, c, rng.randint(0, 3)) if t % 2 else _random_matrix(rng, K, r, c)
        ker = kernel_basis(M)
        assert rank(M) + ker.dim == c
        assert rank(M) == rank(M.T)
        for v in ker:
            assert not any(M.apply(list(v)))
        piv = ker.pivots()
        assert piv == sorted(piv)
        for v, p in zip(ker.vectors, piv):
            assert v[p] == K.one()
        assert cokernel_basis(M).dim == r - rank(M)
        assert image_basis(M).dim == rank(M)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_sympy_over_rationals(rows):
    assert rank(Matrix(QQ, rows)) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_sympy_over_f5(rows):
    dm = DomainMatrix([[SymGF(5)(v) for v in r] for r in rows], (len(rows), 4), SymGF(5))
    assert rank(Matrix(GF(5), rows)) == dm.rank()


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_returns_preimage_iff_in_image(rows, b):
    M = Matrix(QQ, rows)
    v = solve(M, b)
    aug = sympy.Matrix([r + [bi] for r, bi in zip(rows, b)])
    consistent = aug.rank() == sympy.Matrix(rows).rank()
    assert (v is not None) == consistent
    if v is not None:
        assert M.apply(v) == [Fraction(x) for x in b]


@given(st.lists(st.lists(elements(KXY), min_size=3, max_size=3), min_size=2, max_size=3),
       st.lists(elements(KXY), min_size=3, max_size=3))
def test_kernel_vectors_combinations_vanish(rows, coeffs):
    M = Matrix(KXY, rows)
    ker = kernel_basis(M)
    v = [KXY.zero()] * 3
    for c, w in zip(coeffs, ker):
        v = [a + c * b for a, b in zip(v, w)]
    assert not any(M.apply(v))


def test_rank_matches_specialization_over_three_variables():
    rng = random.Random(3)
    for t in range(30):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = _low_rank(rng, KXYZ, r, c, rng.randint(1, 3)) if t % 2 else _random_matrix(rng, KXYZ, r, c)
        generic = rank(M)
        seen = False
        for _ in range(20):
            pt = [rng.randint(-50, 50) for _ in range(3)]
            try:
                S = Matrix(QQ, [[evaluate(a, pt) for a in row] for row in M.rows], c)
            except PoleAtPoint:
                continue
            # specialization can only drop rank; a random point should not
            assert rank(S) <= generic
            if rank(S) == generic:
                seen = True
                break
        assert seen, f"no specialization reached rank {generic}"
