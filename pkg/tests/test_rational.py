from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from grcpkit.exceptions import FloatRejected, ParseError
from grcpkit.rational import RationalMatrix, determinant, nullspace, rref, to_fraction

fractions_st = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def matrices(min_n=1, max_n=6, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        m = n if square else draw(st.integers(min_n, max_n))
        return RationalMatrix(draw(st.lists(st.lists(fractions_st, min_size=m, max_size=m), min_size=n, max_size=n)))

    return build()


def to_sympy(a: RationalMatrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in a.rows])


class TestToFraction:
    @pytest.mark.parametrize("value,expected", [(3, Fraction(3)), ("1/2", Fraction(1, 2)), (" -4/6 ", Fraction(-2, 3))])
    def test_accepts_exact(self, value, expected):
        assert to_fraction(value) == expected

    def test_numpy_integer(self):
        assert to_fraction(np.int64(7)) == 7

    @pytest.mark.parametrize("value", [0.5, "0.5", "1e3", float("nan"), "inf"])
    def test_rejects_floats(self, value):
        with pytest.raises(FloatRejected):
            to_fraction(value)

    def test_garbage(self):
        with pytest.raises(ParseError):
            to_fraction("1/0")
        with pytest.raises(ParseError):
            to_fraction("abc")

    def test_bool(self):
        with pytest.raises(TypeError):
            to_fraction(True)


class TestMatrix:
    def test_basic_arithmetic(self):
        a = RationalMatrix([[1, 2], [3, 4]])
        b = RationalMatrix.identity(2)
        assert a @ b == a
        assert (a - a) == RationalMatrix.zeros(2)
        assert a.T == RationalMatrix([[1, 3], [2, 4]])
        assert a.trace() == 5
        assert a.matvec([1, 1]) == (3, 7)
        assert a.vecmat([1, 1]) == (4, 6)
        assert a.scale(Fraction(1, 2))[1, 1] == 2

    def test_ragged(self):
        with pytest.raises(ValueError):
            RationalMatrix([[1, 2], [3]])

    def test_empty_determinant(self):
        assert determinant(RationalMatrix([], ncols=0)) == 1

    def test_non_square_determinant(self):
        with pytest.raises(ValueError):
            RationalMatrix([[1, 2]]).det()

    def test_pivot_swap(self):
        assert RationalMatrix([[0, 1], [1, 0]]).det() == -1
        assert RationalMatrix([[0, 0], [1, 0]]).det() == 0

    @settings(max_examples=80, deadline=None)
    @given(matrices())
    def test_det_matches_sympy(self, a):
        assert a.det() == Fraction(str(to_sympy(a).det()))

    @settings(max_examples=60, deadline=None)
    @given(matrices(square=False))
    def test_nullspace_matches_sympy_dimension_and_span(self, a):
        basis = nullspace(a)
        ref = to_sympy(a).nullspace()
        assert len(basis) == len(ref)
        for v in basis:
            assert all(x == 0 for x in a.matvec(v))
        if basis:
            # same subspace: stacking the oracle basis does not raise the rank
            ours = RationalMatrix(basis)
            both = RationalMatrix(list(basis) + [[Fraction(str(x)) for x in r] for r in ref])
            assert ours.rank() == both.rank() == len(basis)

    @settings(max_examples=60, deadline=None)
    @given(matrices(square=False))
    def test_rref_is_reduced(self, a):
        rows, pivots = rref(a.rows, a.ncols)
        assert len(rows) == len(pivots) == to_sympy(a).rank()
        for r, p in zip(rows, pivots):
            assert r[p] == 1
            assert all(x == 0 for x in r[:p])
            assert all(other[p] == 0 for other in rows if other is not r)
        assert list(pivots) == sorted(pivots)

    def test_nullspace_is_canonical(self):
        a = RationalMatrix([[1, 1, 0], [2, 2, 0]])
        b = RationalMatrix([[3, 3, 0]])
        assert nullspace(a) == nullspace(b)
