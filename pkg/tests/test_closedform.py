import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from secantzeta import closedform as cf
from secantzeta.exactnum import Surd, sqrt_of_fraction

# All populated cells of the psi table at sqrt(p/q): (K, p) -> (n, value)
# with the point being 1/sqrt(n).
PSI_SQRT_TABLE = {
    (1, -2): (3, F(-5, 3)), (1, -1): (2, F(-5, 6)), (1, 1): (6, F(3, 2)),
    (1, 2): (5, F(37, 15)),
    (2, -4): (15, F(-7, 5)), (2, -2): (14, F(-17, 42)), (2, -1): (12, F(1, 12)),
    (2, 1): (20, F(67, 60)), (2, 2): (18, F(29, 18)), (2, 4): (17, F(133, 51)),
    (3, -6): (35, F(-143, 105)), (3, -3): (34, F(-37, 102)), (3, -2): (33, F(-1, 33)),
    (3, -1): (30, F(3, 10)), (3, 1): (42, F(41, 42)), (3, 2): (39, F(17, 13)),
    (3, 3): (38, F(187, 114)), (3, 6): (37, F(293, 111)),
}

# f at (1/2)sqrt(p/q): (K, p) -> (n, value) with the point 1/sqrt(n)
F_HALF_TABLE = {
    (1, -2): (12, F(1, 2)), (1, -1): (8, F(1)), (1, 1): (24, F(1, 3)),
    (1, 2): (20, F(1, 2)),
    (2, -4): (60, F(1, 2)), (2, -2): (56, F(1, 2)), (2, -1): (48, F(2, 3)),
    (2, 1): (80, F(2, 5)), (2, 2): (72, F(1, 2)), (2, 4): (68, F(1, 2)),
}

# psi at the same points
PSI_HALF_TABLE = {
    (1, -2): (12, F(1, 12)), (1, -1): (8, F(19, 24)), (1, 1): (24, F(17, 24)),
    (1, 2): (20, F(67, 60)),
    (2, -4): (60, F(3, 20)), (2, -2): (56, F(67, 168)), (2, -1): (48, F(33, 48)),
    (2, 1): (80, F(163, 240)), (2, 2): (72, F(65, 72)), (2, 4): (68, F(235, 204)),
}


def inv_sqrt(n: int) -> Surd:
    return sqrt_of_fraction(F(1, n))


class TestClassify:
    def test_f_antiperiodic_shift(self):
        pc = cf.classify(F(7, 6), "f")
        assert pc.canonical == F(1, 6) and pc.sign == -1 and pc.singular

    def test_f_antisymmetry(self):
        pc = cf.classify(F(3, 4), "f")
        assert pc.canonical == F(1, 4) and pc.sign == -1 and not pc.singular

    def test_psi_periodic(self):
        pc = cf.classify(F(5, 2), "psi")
        assert pc.canonical == F(1, 2) and pc.singular

    def test_psi_evenness(self):
        pc = cf.classify(F(-3, 7), "psi")
        assert pc.canonical == F(3, 7) and not pc.singular
        assert cf.classify(F(-3, 10), "psi").singular  # even denominator

    def test_f_integer(self):
        pc = cf.classify(F(1), "f")
        assert pc.canonical == 0 and pc.sign == -1

    def test_inverse_sqrt_detection(self):
        pc = cf.classify(inv_sqrt(8), "f")
        assert pc.form == "inverse_sqrt" and pc.sqrt_n == 8

    def test_surd_reduction(self):
        # seed point of the (K=1, p=-1) psi orbit: -1 - sqrt(2)/2
        r0, _ = cf.psi_orbit_seed(1, -1)
        pc = cf.classify(r0, "psi")
        assert pc.canonical == Surd.make(1, F(-1, 2), 2)
        assert 0 < float(pc.canonical) < 1

    def test_consecutive_sqrt_lands_in_range(self):
        for p in (1, 2, 3):
            r, _ = cf.f_consecutive_sqrt(p)
            pc = cf.classify(r, "f")
            assert pc.canonical == r and pc.sign == 1
            assert 0 < float(r) < 0.5

    @given(st.fractions(min_value=-4, max_value=4, max_denominator=40))
    def test_canonical_ranges(self, r):
        pc_psi = cf.classify(r, "psi")
        pc_f = cf.classify(r, "f")
        assert 0 <= pc_psi.canonical <= 1
        assert 0 <= pc_f.canonical <= F(1, 2)
        assert pc_psi.sign == 1 and pc_f.sign in (-1, 1)

    @given(st.fractions(min_value=-4, max_value=4, max_denominator=40))
    def test_f_singularity_rule(self, r):
        pc = cf.classify(r, "f")
        assert pc.singular == (pc.canonical.denominator % 4 == 2)


class TestRepresent:
    def test_psi_example(self):
        rep = cf.represent(2, "psi_sqrt")
        assert (rep.K, rep.p, rep.q) == (1, -1, -2)

    def test_f_example(self):
        rep = cf.represent(8, "f_sqrt")
        assert (rep.K, rep.p, rep.q) == (1, -1, -2)

    def test_not_representable(self):
        assert cf.represent(32, "f_sqrt") is None

    @pytest.mark.parametrize("n,expected_K", [(12, 1), (48, 2), (80, 2)])
    def test_smallest_K(self, n, expected_K):
        assert cf.represent(n, "f_sqrt").K == expected_K

    @given(st.integers(min_value=1, max_value=400))
    def test_witness_invariants(self, n):
        for target, factor in (("psi_sqrt", 1), ("f_sqrt", 4)):
            rep = cf.represent(n, target)
            if rep is not None:
                assert rep.q == 2 * rep.K * (2 * rep.p * rep.K + 1)
                assert n * rep.p == factor * rep.q

    @given(st.integers(min_value=2, max_value=400))
    def test_all_witnesses_agree_on_value(self, n):
        # every (K, p) with q/p = n must give the same psi value
        values = set()
        for K in range(1, math.isqrt(n) + 2):
            den = n - 4 * K * K
            if den != 0 and (2 * K) % den == 0 and 2 * K // den != 0:
                p = 2 * K // den
                values.add(cf.psi_sqrt_family(K, p)[1])
        assert len(values) <= 1


class TestSqrtFamilies:
    @pytest.mark.parametrize("Kp,expected", sorted(PSI_SQRT_TABLE.items()))
    def test_psi_sqrt_cells(self, Kp, expected):
        n, value = expected
        r, v = cf.psi_sqrt_family(*Kp)
        assert r == inv_sqrt(n)
        assert v == value

    @pytest.mark.parametrize("Kp,expected", sorted(F_HALF_TABLE.items()))
    def test_f_half_cells(self, Kp, expected):
        n, value = expected
        r, v = cf.f_half_sqrt_family(*Kp)
        assert r == inv_sqrt(n)
        assert v == value

    @pytest.mark.parametrize("Kp,expected", sorted(PSI_HALF_TABLE.items()))
    def test_psi_half_cells(self, Kp, expected):
        n, value = expected
        r, v = cf.psi_half_sqrt_family(*Kp)
        assert r == inv_sqrt(n)
        assert v == value

    def test_psi_orbit_seed_values(self):
        r0, v = cf.psi_orbit_seed(1, 1)
        assert r0 == Surd.make(1, F(1, 2), 6)  # 1 + sqrt(3/2)
        assert v == F(7, 6)
        _, v = cf.psi_orbit_seed(1, -1)
        assert v == F(1, 6)

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=-6, max_value=6))
    def test_psi_orbit_seed_even_p_reduction(self, K, j):
        # p = 2j reduces the seed value to 2/3 + j/K
        if j == 0:
            return
        _, v = cf.psi_orbit_seed(K, 2 * j)
        assert v == F(2, 3) + F(j, K)

    def test_f_orbit_seed(self):
        _, v = cf.f_orbit_seed(1, 2)
        assert v == F(1, 2)
        _, v = cf.f_orbit_seed(2, 4)
        assert v == F(1, 2)
        _, v = cf.f_orbit_seed(1, -1)
        assert v == Surd.make(0, F(-1, 2), 2)  # -2 s_K = -1/sqrt(2)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            cf.psi_sqrt_family(0, 1)
        with pytest.raises(ValueError):
            cf.psi_sqrt_family(1, 0)


class TestUnitFraction:
    @pytest.mark.parametrize("q,expected", [
        (3, F(5, 6)), (4, F(1, 2)), (5, F(3, 10)), (1, F(-1, 2)),
        (7, F(9, 14)), (8, F(1, 2)), (9, F(7, 18)),
    ])
    def test_values(self, q, expected):
        ev = cf.f_unit_fraction(q)
        assert ev.is_finite and ev.value == expected

    @pytest.mark.parametrize("q", [2, 6, 10, 98])
    def test_singular(self, q):
        assert cf.f_unit_fraction(q).is_singular

    def test_mod4_formula_first_hundred(self):
        for q in range(1, 101):
            ev = cf.f_unit_fraction(q)
            m = q % 4
            if m == 2:
                assert ev.is_singular
            else:
                expected = {0: F(1, 2), 1: F(1, 2) - F(1, q), 3: F(1, 2) + F(1, q)}[m]
                assert ev.value == expected

    def test_scaling_consistency(self):
        # f(1/q) - 1/2 = (f(1/l) - 1/2) l/q for q = 4K + l
        for q in range(5, 101):
            l = q % 4
            if l in (0, 2):
                continue
            lhs = cf.f_unit_fraction(q).value - F(1, 2)
            rhs = (cf.f_unit_fraction(l).value - F(1, 2)) * F(l, q)
            assert lhs == rhs


class TestNearHalfFamily:
    @pytest.mark.parametrize("Kl,expected", [
        ((1, 1), (F(1, 3), F(5, 6))),
        ((1, 2), (F(3, 8), F(1))),
        ((2, 1), (F(2, 5), F(13, 10))),
    ])
    def test_values(self, Kl, expected):
        assert cf.f_near_half_family(*Kl) == expected

    def test_rejects_bad_l(self):
        with pytest.raises(ValueError):
            cf.f_near_half_family(1, 3)


class TestConsecutiveSqrt:
    def test_p1(self):
        r, v = cf.f_consecutive_sqrt(1)
        assert r == Surd.make(-2, 1, 6) and v == F(5, 2)

    def test_p2(self):
        r, v = cf.f_consecutive_sqrt(2)
        assert r == Surd.make(-4, 2, 5) and v == F(9, 2)


class TestInverseSqrtEvaluation:
    @pytest.mark.parametrize("n,expected", [
        (8, F(1)), (12, F(1, 2)), (9, F(5, 6)), (24, F(1, 3)), (1, F(-1, 2)),
        (16, F(1, 2)), (25, F(3, 10)), (48, F(2, 3)), (80, F(2, 5)),
    ])
    def test_f_values(self, n, expected):
        ev = cf.f_at_inverse_sqrt(n)
        assert ev.value.is_finite and ev.value.value == expected

    @pytest.mark.parametrize("n,expected", [
        (6, F(3, 2)), (2, F(-5, 6)), (5, F(37, 15)), (48, F(33, 48)),
        (8, F(19, 24)), (20, F(67, 60)), (1, F(-1, 3)),
    ])
    def test_psi_values(self, n, expected):
        ev = cf.psi_at_inverse_sqrt(n)
        assert ev.value.is_finite and ev.value.value == expected

    @pytest.mark.parametrize("n", [4, 36, 100])
    def test_singular(self, n):
        assert cf.psi_at_inverse_sqrt(n).value.is_singular
        assert cf.f_at_inverse_sqrt(n).value.is_singular

    def test_not_representable(self):
        assert cf.f_at_inverse_sqrt(32).value.kind == "not_representable"
        assert cf.psi_at_inverse_sqrt(7).value.kind == "not_representable"

    def test_predicted_zero_family_has_no_route(self):
        # observed: the conjectured zeros 16p(p+1) stay outside every exact route
        for p in (1, 2, 3):
            n = 16 * p * (p + 1)
            assert cf.f_at_inverse_sqrt(n).value.kind == "not_representable"

    def test_cross_route_agreement(self):
        # f(1/sqrt(4n)) = psi(1/sqrt(4n)) - psi(1/sqrt(n))/4 whenever all finite
        checked = 0
        for n in range(1, 301):
            f4 = cf.f_at_inverse_sqrt(4 * n)
            p4 = cf.psi_at_inverse_sqrt(4 * n)
            p1 = cf.psi_at_inverse_sqrt(n)
            if f4.value.is_finite and p4.value.is_finite and p1.value.is_finite:
                assert f4.value.value == p4.value.value - p1.value.value / 4
                checked += 1
        assert checked >= 10

    def test_witness_and_route_reported(self):
        ev = cf.f_at_inverse_sqrt(8)
        assert ev.route == "half_sqrt_family"
        assert (ev.witness.K, ev.witness.p, ev.witness.q) == (1, -1, -2)


class TestRationalEvaluation:
    @pytest.mark.parametrize("r,expected", [
        (F(1, 3), F(5, 6)), (F(3, 8), F(1)), (F(2, 5), F(13, 10)),
        (F(3, 4), F(-1, 2)), (F(0), F(1, 2)), (F(1), F(-1, 2)),
        (F(5, 8), F(-1)),
    ])
    def test_f_values(self, r, expected):
        ev = cf.f_at_rational(r)
        assert ev.value.is_finite and ev.value.value == expected

    def test_f_singular(self):
        assert cf.f_at_rational(F(7, 6)).value.is_singular
        assert cf.f_at_rational(F(1, 2)).value.is_singular

    def test_f_unknown(self):
        assert cf.f_at_rational(F(2, 9)).value.kind == "not_representable"

    @pytest.mark.parametrize("r,expected", [
        (F(0), F(2, 3)), (F(2), F(2, 3)), (F(1), F(-1, 3)), (F(-3), F(-1, 3)),
    ])
    def test_psi_values(self, r, expected):
        ev = cf.psi_at_rational(r)
        assert ev.value.is_finite and ev.value.value == expected

    def test_psi_singular(self):
        assert cf.psi_at_rational(F(5, 2)).value.is_singular
        assert cf.psi_at_rational(F(1, 4)).value.is_singular

    def test_near_half_and_unit_fraction_routes_agree(self):
        # 1/3 = 1/2 - 1/6 sits in both families
        assert cf.f_at_rational(F(1, 3)).value.value == cf.f_unit_fraction(3).value
