import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scalext.errors import DivisibleVector, NotInFundamentalRegion, ShapeMismatch, ZeroVector
from scalext.quiver import (
    BUILTIN,
    Quiver,
    codim_vector,
    euler_form,
    find_indivisible_negative,
    in_fundamental_region,
    is_indivisible,
    moduli_dimension,
    random_quiver,
    symmetric_form,
)

THREE = BUILTIN["threeloop"]()
K4 = BUILTIN["kronecker4"]()
A2 = BUILTIN["a2"]()
JORDAN = BUILTIN["jordan"]()


def test_euler_form_examples():
    assert euler_form(THREE, (1,), (1,)) == -2
    assert euler_form(K4, (1, 1), (1, 1)) == -2
    assert euler_form(A2, (1, 0), (0, 1)) == -1
    assert euler_form(A2, (0, 1), (1, 0)) == 0
    with pytest.raises(ShapeMismatch):
        euler_form(A2, (1,), (1, 0))


def test_symmetric_form_examples():
    assert symmetric_form(K4, (1, 1), (1, 1)) == -4
    assert symmetric_form(THREE, (1,), (1,)) == -4
    assert symmetric_form(JORDAN, (1,), (1,)) == 0


def test_fundamental_region_examples():
    assert in_fundamental_region(THREE, (1,))
    assert not in_fundamental_region(A2, (1, 1))
    assert in_fundamental_region(JORDAN, (1,))
    with pytest.raises(ZeroVector):
        in_fundamental_region(A2, (0, 0))


def test_disconnected_support_is_excluded():
    Q = Quiver([1, 2], [("a", 1, 1), ("b", 1, 1), ("c", 2, 2), ("d", 2, 2)])
    assert in_fundamental_region(Q, (1, 0))
    assert not in_fundamental_region(Q, (1, 1))


def test_search_examples():
    assert tuple(find_indivisible_negative(THREE, 4, 3)) == (1,)
    assert tuple(find_indivisible_negative(K4, 4, 3)) == (1, 1)
    assert find_indivisible_negative(A2, 1, 10) is None


def test_codim_examples():
    assert tuple(codim_vector(A2, (1, 1))) == (1, 0)
    assert tuple(codim_vector(THREE, (1,))) == (-2,)
    assert tuple(codim_vector(K4, (1, 1))) == (1, -3)


def test_moduli_dimension_examples():
    assert moduli_dimension(K4, (1, 1)) == 3
    assert moduli_dimension(THREE, (1,)) == 3
    assert moduli_dimension(JORDAN, (1,)) == 1
    with pytest.raises(NotInFundamentalRegion):
        moduli_dimension(A2, (1, 1))
    with pytest.raises(DivisibleVector):
        moduli_dimension(K4, (2, 2))


@st.composite
def quiver_and_vectors(draw, count=3):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    Q = random_quiver(rng, 5, 8)
    vecs = [tuple(draw(st.integers(-3, 3)) for _ in range(Q.n)) for _ in range(count)]
    return (Q, *vecs)


@given(quiver_and_vectors(), st.integers(-3, 3))
def test_euler_form_is_bilinear(data, c):
    Q, a, b, e = data
    ab = tuple(x + y for x, y in zip(a, b))
    ca = tuple(c * x for x in a)
    assert euler_form(Q, ab, e) == euler_form(Q, a, e) + euler_form(Q, b, e)
    assert euler_form(Q, e, ab) == euler_form(Q, e, a) + euler_form(Q, e, b)
    assert euler_form(Q, ca, e) == c * euler_form(Q, a, e)


@given(quiver_and_vectors(count=2))
def test_symmetric_form_symmetric_and_even(data):
    Q, a, b = data
    assert symmetric_form(Q, a, b) == symmetric_form(Q, b, a)
    assert symmetric_form(Q, a, a) % 2 == 0


@given(quiver_and_vectors(count=2))
def test_codim_vector_pairs_to_euler_form(data):
    Q, a, b = data
    a = tuple(abs(x) for x in a)
    assert sum(x * y for x, y in zip(codim_vector(Q, a), b)) == euler_form(Q, a, b)


@given(st.integers(0, 10 ** 6), st.integers(1, 8))
def test_search_output_rechecks(seed, N):
    Q = random_quiver(random.Random(seed), 4, 8)
    a = find_indivisible_negative(Q, N, 2)
    if a is not None:
        assert is_indivisible(a)
        assert in_fundamental_region(Q, a)
        assert symmetric_form(Q, a, a) <= -N
