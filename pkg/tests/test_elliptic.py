"""Jacobi elliptic functions: oracles, frozen references, invariants."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mystint import (
    DomainError,
    JacobiTriple,
    PoleProximityError,
    agm,
    complete_K,
    jacobi_complex,
    jacobi_real,
    modulus_data,
    sn_over_cd,
)
from conftest import hypergeometric_K, sn_by_inversion

# Reference values from an independent multiprecision evaluation (mpmath,
# 40 digits), inputs taken as the exact binary64 doubles used below.
K_REF = {
    0.5: 1.6857503548125960429,
    0.8: 1.9953027776647294737,
    0.95: 2.5900112308745008116,
}
KP_REF = {
    0.5: 2.1565156474996432354,
    0.8: 1.7507538029157524831,
    0.95: 1.6113380585863063012,
}
# sn, cn, dn at u = 1.1, k = 0.7, same source.
TRIPLE_REF = (0.84957437989477305917, 0.52746883607129988056, 0.8039461753021416294)
# k = 0.6, u = 0.3 K + 0.4i K'.
COMPLEX_REF = {
    "sn": 0.71977315354296555588 + 0.71965262148150818052j,
    "cn": 1.1044413124221226157 - 0.46900331506363495557j,
    "dn": 1.0166517455156524054 - 0.18342091092395967496j,
    "sncd": 0.46726620953459752415 + 0.74133775909374750322j,
}
# k = 0.85, u = -0.55 K + 0.35i K'.
COMPLEX_REF_2 = {
    "sn": -0.95307296317663665224 + 0.19578996548298776536j,
    "cn": 0.51243480028220077644 + 0.36414802909630591662j,
    "dn": 0.64435465813389158315 + 0.20923265138224786664j,
}


class TestAgm:
    def test_fixed_point(self):
        assert agm(1.0, 1.0) == 1.0
        assert agm(3.0, 3.0) == 3.0

    def test_known_value(self):
        # Gauss's constant: agm(1, sqrt(2)) = sqrt(2) pi / (2 * lemniscate const)
        assert agm(1.0, math.sqrt(2.0)) == pytest.approx(1.1981402347355922074, rel=1e-15)

    @given(st.floats(0.01, 100.0), st.floats(0.01, 100.0), st.floats(0.5, 2.0))
    def test_scaling(self, a, b, c):
        assert agm(c * a, c * b) == pytest.approx(c * agm(a, b), rel=1e-14)

    @given(st.floats(0.01, 100.0), st.floats(0.01, 100.0))
    def test_symmetry_and_mean_bounds(self, a, b):
        m = agm(a, b)
        assert m == agm(b, a)
        assert min(a, b) <= m * (1 + 1e-15)
        assert m <= max(a, b) * (1 + 1e-15)

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(DomainError):
            agm(bad, 1.0)


class TestCompleteK:
    @pytest.mark.parametrize("k", [0.1, 0.3, 0.5, 0.7, 0.9, 0.95])
    def test_matches_hypergeometric_series(self, k):
        assert complete_K(k) == pytest.approx(hypergeometric_K(k), rel=1e-15)

    @pytest.mark.parametrize("k", sorted(K_REF))
    def test_frozen_values(self, k):
        assert complete_K(k) == pytest.approx(K_REF[k], rel=4e-16)
        assert modulus_data(k).K_prime == pytest.approx(KP_REF[k], rel=4e-16)

    def test_rejects_bad_modulus(self):
        for bad in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(DomainError):
                complete_K(bad)


class TestModulusData:
    def test_pythagorean_modulus(self):
        md = modulus_data(0.8)
        assert md.k_prime == pytest.approx(0.6, rel=1e-15)

    @pytest.mark.parametrize("k", [0.2, 0.5, 0.9])
    def test_complementary_quarter_period(self, k):
        md = modulus_data(k)
        assert md.K_prime == pytest.approx(complete_K(md.k_prime), rel=1e-15)


class TestJacobiReal:
    def test_frozen_triple(self):
        tr = jacobi_real(1.1, 0.7)
        assert tr.sn == pytest.approx(TRIPLE_REF[0], rel=2e-15)
        assert tr.cn == pytest.approx(TRIPLE_REF[1], rel=2e-15)
        assert tr.dn == pytest.approx(TRIPLE_REF[2], rel=2e-15)

    @pytest.mark.parametrize("k", [0.3, 0.6, 0.9])
    @pytest.mark.parametrize("frac", [0.15, 0.4, 0.75])
    def test_against_integral_inversion(self, k, frac):
        u = frac * complete_K(k)
        assert jacobi_real(u, k).sn == pytest.approx(sn_by_inversion(u, k), abs=1e-12)

    def test_against_scipy_on_a_grid(self):
        from scipy.special import ellipj

        for k in (0.2, 0.5, 0.8, 0.95):
            for u in (-5.0, -1.7, -0.3, 0.6, 2.2, 7.5):
                sn, cn, dn, _ = ellipj(u, k * k)
                tr = jacobi_real(u, k)
                assert tr.sn == pytest.approx(sn, abs=5e-13)
                assert tr.cn == pytest.approx(cn, abs=5e-13)
                assert tr.dn == pytest.approx(dn, abs=5e-13)

    def test_origin(self):
        tr = jacobi_real(0.0, 0.5)
        assert (tr.sn, tr.cn, tr.dn) == (0.0, 1.0, 1.0)

    @pytest.mark.parametrize("k", [0.2, 0.6, 0.9])
    def test_quarter_period_values(self, k):
        md = modulus_data(k)
        tr = jacobi_real(md.K, k)
        assert tr.sn == pytest.approx(1.0, abs=2e-16)
        assert tr.cn == pytest.approx(0.0, abs=4e-16)
        assert tr.dn == pytest.approx(md.k_prime, rel=2e-15)

    @pytest.mark.parametrize("k", [0.3, 0.7, 0.95])
    def test_half_quarter_period_closed_form(self, k):
        # sn(K/2) = 1 / sqrt(1 + k'), a consequence of the half-argument rules
        md = modulus_data(k)
        want = 1.0 / math.sqrt(1.0 + md.k_prime)
        assert jacobi_real(0.5 * md.K, k).sn == pytest.approx(want, rel=2e-15)

    @given(st.floats(-6.0, 6.0), st.floats(0.05, 0.95))
    def test_pythagorean_identities(self, u, k):
        tr = jacobi_real(u, k)
        assert tr.sn**2 + tr.cn**2 == pytest.approx(1.0, abs=5e-14)
        assert tr.dn**2 + (k * tr.sn) ** 2 == pytest.approx(1.0, abs=5e-14)

    @given(st.floats(-6.0, 6.0), st.floats(0.05, 0.95))
    def test_parity(self, u, k):
        plus = jacobi_real(u, k)
        minus = jacobi_real(-u, k)
        assert minus.sn == pytest.approx(-plus.sn, abs=2e-15)
        assert minus.cn == pytest.approx(plus.cn, abs=2e-15)
        assert minus.dn == pytest.approx(plus.dn, abs=2e-15)

    def test_dn_stays_positive(self):
        # dn >= k' > 0 on the real line
        for k in (0.5, 0.99):
            kp = modulus_data(k).k_prime
            for u in (0.1, 1.0, 3.0, 9.7):
                assert jacobi_real(u, k).dn >= kp - 1e-14

    def test_rejects_nonfinite_argument(self):
        with pytest.raises(DomainError):
            jacobi_real(math.inf, 0.5)


class TestJacobiComplex:
    def test_frozen_point_k06(self):
        md = modulus_data(0.6)
        u = 0.3 * md.K + 0.4j * md.K_prime
        tr = jacobi_complex(u, 0.6)
        assert tr.sn == pytest.approx(COMPLEX_REF["sn"], rel=1e-13)
        assert tr.cn == pytest.approx(COMPLEX_REF["cn"], rel=1e-13)
        assert tr.dn == pytest.approx(COMPLEX_REF["dn"], rel=1e-13)

    def test_frozen_point_k085(self):
        md = modulus_data(0.85)
        u = -0.55 * md.K + 0.35j * md.K_prime
        tr = jacobi_complex(u, 0.85)
        assert tr.sn == pytest.approx(COMPLEX_REF_2["sn"], rel=1e-13)
        assert tr.cn == pytest.approx(COMPLEX_REF_2["cn"], rel=1e-13)
        assert tr.dn == pytest.approx(COMPLEX_REF_2["dn"], rel=1e-13)

    def test_real_axis_agrees_with_real_route(self):
        for k in (0.3, 0.8):
            for u in (-1.2, 0.4, 1.6):
                tr_c = jacobi_complex(complex(u, 0.0), k)
                tr_r = jacobi_real(u, k)
                assert tr_c.sn == pytest.approx(tr_r.sn, abs=1e-15)
                assert tr_c.cn == pytest.approx(tr_r.cn, abs=1e-15)
                assert tr_c.dn == pytest.approx(tr_r.dn, abs=1e-15)

    @pytest.mark.parametrize("k", [0.4, 0.75])
    @pytest.mark.parametrize("y", [0.3, 0.9])
    def test_imaginary_axis_rotation(self, k, y):
        # sn(iy; k) = i sn(y; k') / cn(y; k'), and cn(iy; k) = 1 / cn(y; k')
        kp = modulus_data(k).k_prime
        tr = jacobi_complex(complex(0.0, y), k)
        ref = jacobi_real(y, kp)
        assert tr.sn == pytest.approx(1j * ref.sn / ref.cn, rel=1e-14)
        assert tr.cn == pytest.approx(1.0 / ref.cn, rel=1e-14)
        assert tr.dn == pytest.approx(ref.dn / ref.cn, rel=1e-14)

    @given(
        st.floats(-0.9, 0.9), st.floats(-0.9, 0.9),
        st.floats(0.1, 0.9),
    )
    def test_pythagorean_identities_complex(self, a, b, k):
        md = modulus_data(k)
        u = a * md.K + 1j * b * md.K_prime
        tr = jacobi_complex(u, k)
        assert abs(tr.sn**2 + tr.cn**2 - 1.0) <= 1e-11 * (1 + abs(tr.sn) ** 2)
        assert abs(tr.dn**2 + (k * tr.sn) ** 2 - 1.0) <= 1e-11 * (1 + abs(tr.sn) ** 2)

    def test_rejects_points_outside_rectangle(self):
        md = modulus_data(0.5)
        with pytest.raises(DomainError):
            jacobi_complex(complex(md.K, 0.1), 0.5)
        with pytest.raises(DomainError):
            jacobi_complex(complex(0.1, md.K_prime), 0.5)
        with pytest.raises(DomainError):
            jacobi_complex(complex(0.0, -md.K_prime * 0.9999999), 0.5)

    def test_margin_is_adjustable(self):
        md = modulus_data(0.5)
        u = complex(0.9995 * md.K, 0.0)
        with pytest.raises(DomainError):
            jacobi_complex(u, 0.5)  # default margin excludes it
        tr = jacobi_complex(u, 0.5, margin=1e-5)
        assert abs(tr.sn**2 + tr.cn**2 - 1.0) < 1e-10


class TestSnOverCd:
    def test_matches_triple_ratio(self):
        md = modulus_data(0.6)
        u = 0.2 * md.K + 0.3j * md.K_prime
        tr = jacobi_complex(u, 0.6)
        assert sn_over_cd(u, 0.6) == pytest.approx(tr.sn * tr.dn / tr.cn, rel=1e-15)

    def test_frozen_value(self):
        md = modulus_data(0.6)
        u = 0.3 * md.K + 0.4j * md.K_prime
        assert sn_over_cd(u, 0.6) == pytest.approx(COMPLEX_REF["sncd"], rel=1e-13)

    def test_real_input_gives_real_output(self):
        val = sn_over_cd(0.7, 0.4)
        assert isinstance(val, float)

    def test_odd_in_u(self):
        md = modulus_data(0.7)
        u = 0.35 * md.K + 0.2j * md.K_prime
        assert sn_over_cd(-u, 0.7) == pytest.approx(-sn_over_cd(u, 0.7), rel=1e-15)


def test_triple_cd_property():
    tr = JacobiTriple(sn=0.6, cn=0.8, dn=0.9)
    assert tr.cd == pytest.approx(0.8 / 0.9)
