from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from secantzeta.exactnum import (
    PolySpec,
    Surd,
    bernoulli_poly,
    euler_poly,
    format_rational,
    parse_rational,
    poly_eval,
    rational_arith,
    sqrt_decompose,
    sqrt_of_fraction,
    surd_arith,
)

small_fractions = st.fractions(
    min_value=-8, max_value=8, max_denominator=12
)
squarefree_d = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 13])


@st.composite
def surd_tuples(draw, count=1):
    """Tuples of surds sharing one radicand (the field Q(sqrt(d)))."""
    d = draw(squarefree_d)
    return tuple(
        Surd(draw(small_fractions), draw(small_fractions), d) for _ in range(count)
    )


class TestRationalArith:
    def test_sub_matches_plain_fraction_arithmetic(self):
        assert rational_arith(F(2, 3), F(1, 6), "sub") == F(1, 2)

    def test_sub_sixtieths(self):
        assert rational_arith(F(67, 60), F(37, 60), "sub") == F(1, 2)

    def test_add_twelfths(self):
        assert rational_arith(F(1, 12), F(5, 12), "add") == F(1, 2)

    def test_mul_div_roundtrip(self):
        x = rational_arith(F(3, 7), F(14, 9), "mul")
        assert rational_arith(x, F(14, 9), "div") == F(3, 7)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            rational_arith(F(1), F(0), "div")

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            rational_arith(F(1), F(1), "pow")


class TestSqrtDecompose:
    @pytest.mark.parametrize("n,expected", [(8, (2, 2)), (48, (3, 4)), (7, (7, 1)),
                                            (1, (1, 1)), (36, (1, 6)), (360, (10, 6))])
    def test_examples(self, n, expected):
        assert sqrt_decompose(n) == expected

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            sqrt_decompose(0)

    @given(st.integers(min_value=1, max_value=10_000))
    def test_reconstruction_and_squarefreeness(self, n):
        d, m = sqrt_decompose(n)
        assert m * m * d == n
        for f in range(2, 40):
            if f * f > d:
                break
            assert d % (f * f) != 0


class TestSurd:
    def test_conjugate_product_root_two(self):
        assert Surd.make(1, 1, 2) * Surd.make(1, -1, 2) == F(-1)

    def test_unit_norm(self):
        assert Surd.make(3, 2, 2) * Surd.make(3, -2, 2) == F(1)

    def test_add_cancels_rational_part(self):
        s = Surd.make(F(1, 2), F(1, 2), 3) + Surd.make(F(-1, 2), F(1, 2), 3)
        assert s == Surd.make(0, 1, 3)

    def test_radicand_canonicalization(self):
        # sqrt(8) = 2 sqrt(2)
        assert Surd.make(0, 1, 8) == Surd.make(0, 2, 2)
        assert Surd.make(0, 1, 8).d == 2

    def test_sqrt_one_folds_to_rational(self):
        s = Surd.make(F(1, 3), F(2, 3), 1)
        assert s.is_rational and s.as_fraction() == F(1)

    def test_mixed_radicands_rejected(self):
        with pytest.raises(ValueError):
            Surd.make(0, 1, 2) + Surd.make(0, 1, 3)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Surd.make(1, 1, 2) / Surd.make(0, 0, 1)

    def test_division_by_conjugate(self):
        x = Surd.make(1, 0, 1) / Surd.make(1, 1, 2)
        assert x == Surd.make(-1, 1, 2)

    def test_floor(self):
        assert Surd.make(0, 1, 2).floor() == 1
        assert Surd.make(0, -1, 2).floor() == -2
        assert Surd.make(3, 2, 2).floor() == 5
        assert Surd.make(F(7, 2), 0, 1).floor() == 3

    def test_sign_and_comparisons(self):
        assert Surd.make(1, -1, 2).sign() == -1
        assert Surd.make(2, -1, 2).sign() == 1
        assert Surd.make(-1, 1, 2) > 0
        assert Surd.make(0, 1, 2) < F(3, 2)
        assert abs(Surd.make(1, -1, 2)) == Surd.make(-1, 1, 2)

    def test_float_conversion(self):
        assert float(Surd.make(1, 1, 2)) == pytest.approx(2.414213562373095)

    def test_equality_with_fraction(self):
        assert Surd.make(F(3, 4), 0, 5) == F(3, 4)
        assert hash(Surd.make(F(3, 4), 0, 5)) == hash(F(3, 4))

    def test_surd_arith_dispatch(self):
        x, y = Surd.make(3, 2, 2), Surd.make(3, -2, 2)
        assert surd_arith(x, y, "mul") == F(1)
        assert surd_arith(x, y, "add") == F(6)

    @given(surd_tuples(1))
    def test_conjugate_product_is_rational(self, t):
        (s,) = t
        assert (s * s.conjugate()).is_rational

    @given(surd_tuples(2))
    def test_commutativity(self, t):
        x, y = t
        assert x + y == y + x
        assert x * y == y * x

    @given(surd_tuples(3))
    def test_associativity(self, t):
        x, y, z = t
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)

    @given(surd_tuples(2))
    def test_division_inverts_multiplication(self, t):
        x, y = t
        if y == 0:
            return
        assert (x / y) * y == x

    @given(surd_tuples(1))
    def test_float_consistent_with_sign(self, t):
        (s,) = t
        if abs(float(s)) > 1e-9:
            assert (float(s) > 0) == (s.sign() > 0)


class TestPolynomials:
    def test_bernoulli_one_root(self):
        assert poly_eval(PolySpec("bernoulli", 1), F(1, 2)) == 0

    def test_euler_one_quarter(self):
        assert euler_poly(1, F(1, 4)) == F(-1, 4)

    def test_euler_two_quarter(self):
        # plain polynomial value x^2 - x at 1/4; the half-line alternating
        # cube sum that appears next to it in the pole analysis is 1/4
        assert euler_poly(2, F(1, 4)) == F(-3, 16)

    @pytest.mark.parametrize("deg,x,val", [
        (0, F(7, 3), F(1)),
        (1, F(0), F(-1, 2)),
        (2, F(0), F(1, 6)),
        (2, F(1, 2), F(-1, 12)),
        (3, F(1, 4), F(3, 64)),
    ])
    def test_bernoulli_table(self, deg, x, val):
        assert bernoulli_poly(deg, x) == val

    def test_unsupported_degrees(self):
        with pytest.raises(ValueError):
            PolySpec("bernoulli", 4)
        with pytest.raises(ValueError):
            PolySpec("euler", 3)
        with pytest.raises(ValueError):
            PolySpec("legendre", 1)

    @given(small_fractions, st.sampled_from([1, 2, 3]))
    def test_difference_identity(self, x, n):
        # B_n(x+1) - B_n(x) = n x^(n-1)
        lhs = bernoulli_poly(n, x + 1) - bernoulli_poly(n, x)
        assert lhs == n * x ** (n - 1)


class TestSerialization:
    def test_format_integer(self):
        assert format_rational(F(1)) == "1"
        assert format_rational(F(-3)) == "-3"

    def test_format_fraction(self):
        assert format_rational(F(-5, 6)) == "-5/6"

    def test_parse_roundtrip(self):
        assert parse_rational("19/24") == F(19, 24)
        assert parse_rational("-7") == F(-7)

    def test_surd_str(self):
        assert str(Surd.make(F(-1, 2), F(-1, 4), 2)) == "-1/2-1/4*sqrt(2)"
        assert str(Surd.make(0, F(1, 6), 6)) == "0+1/6*sqrt(6)"
        assert str(Surd.make(F(5, 2), 0, 1)) == "5/2"

    def test_sqrt_of_fraction(self):
        assert sqrt_of_fraction(F(1, 2)) == Surd.make(0, F(1, 2), 2)
        assert sqrt_of_fraction(F(9, 4)) == F(3, 2)
        with pytest.raises(ValueError):
            sqrt_of_fraction(F(-1, 2))
