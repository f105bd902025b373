"""Hypothesis strategies for exact field elements."""
from fractions import Fraction

from hypothesis import strategies as st

from scalext.fields import GF, QQ, FunctionField

KXY = FunctionField(QQ, "x", "y")
KX7 = FunctionField(GF(7), "x")

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def rationals(draw):
    return Fraction(draw(small_ints), draw(st.integers(min_value=1, max_value=6)))


@st.composite
def polynomials(draw, K, max_terms=3, max_deg=2):
    out = K.zero()
    gens = K.gens()
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        term = K(draw(small_ints))
        for g in gens:
            term = term * g ** draw(st.integers(min_value=0, max_value=max_deg))
        out = out + term
    return out


@st.composite
def ratfuncs(draw, K):
    num = draw(polynomials(K))
    den = draw(polynomials(K))
    if not den:
        return num
    return num / den


def elements(K):
    if K.is_function_field:
        return ratfuncs(K)
    if K == QQ:
        return rationals()
    return st.integers(min_value=0, max_value=K.p - 1).map(K)
