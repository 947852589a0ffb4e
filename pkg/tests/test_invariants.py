from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from bncalc.invariants import (
    SheafClass,
    alpha,
    beta,
    beta_properties_check,
    bogomolov_ok,
    bound_data,
    euler_line_twist,
    euler_pairing,
    hilbert_poly,
    make_class,
    moduli_dim,
    section_bound_max,
)
from tests.reference import beta_via_resolution, euler_pairing_ch, line_class

classes = st.builds(
    SheafClass,
    st.integers(1, 12),
    st.integers(-30, 30),
    st.integers(-60, 60),
)


def slopes(max_r=12, lo=-1):
    """``(r, mu)`` with ``r*mu`` integral and ``mu >= lo``."""
    return st.integers(1, max_r).flatmap(
        lambda r: st.tuples(st.just(r), st.integers(lo * r, 8 * r).map(lambda c: Fraction(c, r)))
    )


class TestMakeClass:
    def test_tangent_twist(self):
        v = make_class(2, 1, 3)
        assert v.slope == Fraction(1, 2)
        # P(1/2) - 3/2 = 15/8 - 12/8
        assert v.discriminant == Fraction(3, 8)

    def test_structure_sheaf(self):
        v = make_class(1, 0, 1)
        assert v.slope == 0 and v.discriminant == 0

    def test_slope(self):
        assert make_class(8, 6, 12).slope == Fraction(3, 4)

    @pytest.mark.parametrize("r", [0, -1])
    def test_rejects_nonpositive_rank(self, r):
        with pytest.raises(ValueError):
            make_class(r, 0, 0)

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            SheafClass(2, 1.0, 3)

    @given(classes, st.integers(-5, 5))
    def test_twist_keeps_discriminant(self, v, m):
        w = v.twist(m)
        assert w.discriminant == v.discriminant
        assert w.slope == v.slope + m

    @pytest.mark.parametrize("n", range(-3, 6))
    def test_hilbert_poly_is_chi_of_line_bundles(self, n):
        assert hilbert_poly(n) == Fraction((n + 1) * (n + 2), 2)
        if n >= 0:
            assert hilbert_poly(n) == comb(n + 2, 2)


class TestAlphaBeta:
    def test_alpha_examples(self):
        assert alpha(Fraction(1, 2)) == 1
        assert alpha(Fraction(7, 3)) == 3
        for k in range(-1, 8):
            assert alpha(k) == k + 1

    def test_alpha_rejects_below_minus_one(self):
        with pytest.raises(ValueError):
            alpha(Fraction(-3, 2))

    def test_beta_examples(self):
        assert beta(2, Fraction(1, 2)) == 3
        assert beta(8, Fraction(3, 4)) == 14
        # Steiner count (a+r) h0(O(alpha-1)) - a h0(O(alpha-2)) with alpha=1, a=6, r=8
        assert beta(8, Fraction(3, 4)) == 14 * 1 - 6 * 0

    def test_beta_rejects_nonintegral_c1(self):
        with pytest.raises(ValueError):
            beta(2, Fraction(1, 3))

    @pytest.mark.parametrize("r", range(1, 13))
    @pytest.mark.parametrize("k", range(-1, 7))
    def test_beta_integer_slopes(self, r, k):
        assert beta(r, k) == r * comb(k + 2, 2)

    @given(slopes(lo=0))
    def test_beta_matches_resolution_count(self, rm):
        r, mu = rm
        assert beta(r, mu) == beta_via_resolution(r, int(r * mu))

    @given(slopes(lo=0))
    def test_shift_identity(self, rm):
        r, mu = rm
        assert beta(r, mu - 1) == beta(r, mu) - r * (mu + 1)

    @given(slopes(lo=0), st.data())
    def test_strictly_increasing(self, rm, data):
        r, mu = rm
        if mu == 0:
            return
        smaller = data.draw(st.integers(0, r * mu - 1).map(lambda c: Fraction(c, r)))
        assert beta(r, smaller) < beta(r, mu)

    @pytest.mark.parametrize("r, mu", [(3, Fraction(5, 3)), (1, 2), (8, Fraction(3, 4))])
    def test_properties_check(self, r, mu):
        assert beta_properties_check(r, mu)

    def test_properties_check_details(self):
        assert beta(1, 1) == 3 == beta(1, 2) - 1 * 3
        assert beta(8, Fraction(-1, 4)) == 0 == 14 - 8 * Fraction(7, 4)

    def test_bound_data(self):
        bd = bound_data(2, Fraction(1, 2), h0=2)
        assert (bd.alpha, bd.beta, bd.deficiency) == (1, 3, 1)


class TestSectionBound:
    @pytest.mark.parametrize("k", range(-1, 8))
    def test_rank_one(self, k):
        assert section_bound_max(1, k) == comb(k + 2, 2)

    def test_negative_slope(self):
        assert section_bound_max(2, Fraction(-1, 2)) == 0

    def test_two_copies_of_O1(self):
        assert section_bound_max(2, 1) == 6 == 2 * comb(3, 2)

    def test_rejects_below_minus_one(self):
        with pytest.raises(ValueError):
            section_bound_max(1, -2)


class TestEulerPairing:
    def test_structure_sheaf(self):
        assert euler_pairing(make_class(1, 0, 1), make_class(1, 0, 1)) == 1

    def test_tangent_twist_is_exceptional(self):
        v = make_class(2, 1, 3)
        assert euler_pairing(v, v) == 1
        assert moduli_dim(v) == 0

    def test_rank_three(self):
        v = make_class(3, 2, 3)
        # Delta = 20/9 - 1 = 11/9; chi(v,v) = 9 (1 - 22/9)
        assert euler_pairing(v, v) == -13
        assert moduli_dim(v) == 14 == v.rank**2 * (2 * v.discriminant - 1) + 1

    @given(classes, classes)
    def test_matches_hirzebruch_riemann_roch(self, v, w):
        assert euler_pairing(v, w) == euler_pairing_ch(
            (v.rank, v.c1, v.chi), (w.rank, w.c1, w.chi)
        )

    @given(classes)
    def test_moduli_dim_formula(self, v):
        assert moduli_dim(v) == v.rank**2 * (2 * v.discriminant - 1) + 1

    @given(classes)
    def test_chi_of_twist(self, v):
        o = make_class(1, 0, 1)
        for m in range(-2, 3):
            assert euler_pairing(o, v.twist(m)) == v.twist(m).chi


class TestLineTwist:
    def test_examples(self):
        assert euler_line_twist(make_class(8, 6, 12), 2) == -14
        assert euler_line_twist(make_class(1, 0, 1), 1) == 0
        assert euler_line_twist(make_class(3, 2, 3), 3) == -8

    @pytest.mark.parametrize("r", range(1, 13))
    @pytest.mark.parametrize("b", range(-2, 13))
    def test_matches_hrr_with_line_class(self, r, b):
        for c1 in range(-r, 2 * r + 1):
            v = make_class(r, c1, 0)
            assert euler_line_twist(v, b) == euler_pairing_ch((r, c1, 0), line_class(b))
            assert euler_line_twist(v, b) == -(r * (v.slope + b - 1))


class TestBogomolov:
    def test_examples(self):
        assert bogomolov_ok(make_class(2, 1, 3))
        assert bogomolov_ok(make_class(1, 0, 1))
        assert not bogomolov_ok(make_class(2, 0, 4))
        assert make_class(2, 0, 4).discriminant == -1
