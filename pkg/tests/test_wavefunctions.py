"""Wavefunction normalization, factorization and special-value tests."""

import math

import numpy as np
import pytest
from scipy.special import lpmv

from ringcoulomb import quadrature, spectrum, wavefunctions as wf

CONSTS = spectrum.PhysicalConstants()


def hydrogen_state():
    return wf.bound_state(spectrum.PotentialParams(a=1.0), CONSTS,
                          spectrum.QuantumNumbers(0, 0, 0))


def jacobi_weighted_norm(n: int, mp: float) -> float:
    """Closed-form integral of (1-x^2)^m' [P_n^(m',m')]^2 over (-1, 1)."""
    return math.exp(
        (2.0 * mp + 1.0) * math.log(2.0)
        + 2.0 * math.lgamma(n + mp + 1.0)
        - math.log(2.0 * n + 2.0 * mp + 1.0)
        - math.lgamma(n + 1.0)
        - math.lgamma(n + 2.0 * mp + 1.0))


class TestNormalizationConstant:
    def test_hydrogen_value(self):
        assert wf.normalization_C(0, 0.0, 1.0) == pytest.approx(2.0, rel=1e-14)

    def test_scaled_decay(self):
        assert wf.normalization_C(0, 0.0, 2.0) == pytest.approx(math.sqrt(32.0),
                                                                rel=1e-14)

    def test_epsilon_scaling_law(self):
        rng = np.random.default_rng(2)
        for _ in range(40):
            N = int(rng.integers(0, 5))
            L = rng.uniform(-0.4, 3.0)
            eps = rng.uniform(0.2, 4.0)
            want = eps ** (L + 1.5) * wf.normalization_C(N, L, 1.0)
            assert wf.normalization_C(N, L, eps) == pytest.approx(want, rel=1e-12)

    def test_input_guards(self):
        with pytest.raises(ValueError):
            wf.normalization_C(-1, 0.0, 1.0)
        with pytest.raises(ValueError):
            wf.normalization_C(0, -1.0, 1.0)
        with pytest.raises(ValueError):
            wf.normalization_C(0, 0.0, 0.0)


class TestRadial:
    def test_hydrogen_ground_state_shape(self):
        state = hydrogen_state().radial
        r = np.linspace(0.0, 8.0, 50)
        assert np.allclose(wf.radial_R(state, r), 2.0 * np.exp(-r), rtol=1e-12)

    def test_origin_vanishes_for_positive_power(self):
        state = wf.RadialState(N=0, L=1.0, epsilon=1.0, D=3,
                               C=wf.normalization_C(0, 1.0, 1.0))
        assert wf.radial_R(state, 0.0) == 0.0

    def test_unit_norm_random_states(self):
        rng = np.random.default_rng(8)
        for _ in range(12):
            N = int(rng.integers(0, 5))
            L = rng.uniform(-0.45, 3.0)
            D = int(rng.integers(2, 7))
            eps = rng.uniform(0.3, 3.0)
            state = wf.RadialState(N=N, L=L, epsilon=eps, D=D,
                                   C=wf.normalization_C(N, L, eps))
            res = wf.radial_norm_integral(state)
            assert res.value == pytest.approx(1.0, abs=1e-8)


class TestAngular:
    def test_isotropic_ground_state(self):
        state = wf.angular_state(0, 0.0, 3)
        theta = np.linspace(0.0, math.pi, 20)
        assert np.allclose(wf.angular_H(state, theta), math.sqrt(0.5), rtol=1e-14)
        assert not state.adjusted

    def test_poles_vanish_for_positive_m_prime(self):
        state = wf.angular_state(1, 1.3, 3)
        assert wf.angular_H(state, 0.0) == 0.0
        assert wf.angular_H(state, math.pi) == 0.0

    def test_printed_prefactor_misnormalization_is_recorded(self):
        # the textbook constant normalizes only the lowest cases; n=1, m'=1
        # comes out at 4/9 and must be flagged and corrected
        state = wf.angular_state(1, 1.0, 3)
        assert state.adjusted
        assert state.printed_integral == pytest.approx(4.0 / 9.0, abs=1e-10)
        state = wf.angular_state(0, 2.0, 3)
        assert state.printed_integral == pytest.approx(1.0 / 9.0, abs=1e-10)

    def test_printed_prefactor_against_jacobi_norm(self):
        for n in range(4):
            for mp in (0.0, 0.5, 1.0, 1.7, 2.0, 3.1):
                state = wf.angular_state(n, mp, 3)
                want = (state.printed_norm ** 2) * jacobi_weighted_norm(n, mp)
                assert state.printed_integral == pytest.approx(want, rel=1e-9)

    def test_every_state_is_unit_normalized(self):
        rng = np.random.default_rng(13)
        for _ in range(12):
            n = int(rng.integers(0, 5))
            mp = rng.uniform(0.0, 3.5)
            D = int(rng.integers(2, 7))
            state = wf.angular_state(n, mp, D)
            assert wf.angular_norm_integral(state).value == pytest.approx(1.0,
                                                                          abs=1e-8)

    def test_matches_normalized_associated_legendre(self):
        # beta = 0, D = 3, integer m: compare with the classical
        # Theta_lm = sqrt((2l+1)(l-m)!/(2(l+m)!)) P_l^m(cos) up to a sign
        theta = np.linspace(0.15, math.pi - 0.15, 80)
        for ell in range(5):
            for m in range(ell + 1):
                n = ell - m
                state = wf.angular_state(n, float(m), 3)
                got = wf.angular_H(state, theta)
                norm = math.sqrt((2 * ell + 1) * math.factorial(ell - m)
                                 / (2.0 * math.factorial(ell + m)))
                want = norm * lpmv(m, ell, np.cos(theta))
                sign = math.copysign(1.0, got[0] * want[0])
                assert np.allclose(got, sign * want, atol=1e-10)

    def test_high_dimension_fallback_is_numeric(self):
        # l' - m' <= -1 makes the printed constant meaningless; the state
        # must still come out unit-normalized
        state = wf.angular_state(0, 2.0, 10)
        assert state.adjusted and math.isnan(state.printed_norm)
        assert wf.angular_norm_integral(state).value == pytest.approx(1.0, abs=1e-8)


class TestAzimuthal:
    def test_constant_mode(self):
        val = wf.azimuthal_Phi(0, 1.234)
        assert val == pytest.approx(1.0 / math.sqrt(2.0 * math.pi))

    def test_periodicity(self):
        for m in range(4):
            for phi in (0.0, 0.7, 3.1):
                a = wf.azimuthal_Phi(m, phi)
                b = wf.azimuthal_Phi(m, phi + 2.0 * math.pi)
                assert abs(a - b) <= 1e-15

    def test_unit_measure(self):
        # |Phi|^2 is constant 1/(2 pi); its integral over a period is one
        dens = abs(wf.azimuthal_Phi(3, 0.42)) ** 2
        assert dens * 2.0 * math.pi == pytest.approx(1.0, rel=1e-15)

    def test_sign_flag(self):
        plus = wf.azimuthal_Phi(2, 0.9, +1)
        minus = wf.azimuthal_Phi(2, 0.9, -1)
        assert plus == pytest.approx(minus.conjugate())
        with pytest.raises(ValueError):
            wf.azimuthal_Phi(2, 0.9, 0)


class TestTotalPsi:
    def test_hydrogen_origin_density(self):
        state = hydrogen_state()
        val = abs(state.psi(0.0, 0.4, 1.1)) ** 2
        assert val == pytest.approx(1.0 / math.pi, rel=1e-12)

    def test_factorizes_into_three_parts(self):
        params = spectrum.PotentialParams(a=1.4, b=0.3, c=0.2, beta=1.5, D=4)
        q = spectrum.QuantumNumbers(1, 2, 1)
        state = wf.bound_state(params, CONSTS, q)
        rng = np.random.default_rng(19)
        for _ in range(100):
            r = rng.uniform(0.05, 12.0)
            theta = rng.uniform(0.05, math.pi - 0.05)
            phi = rng.uniform(0.0, 2.0 * math.pi)
            combined = state.psi(r, theta, phi)
            product = (wf.radial_R(state.radial, r)
                       * wf.angular_H(state.angular, theta)
                       * wf.azimuthal_Phi(q.m, phi))
            assert abs(combined - product) <= 1e-12 * abs(product)

    def test_total_psi_wrapper(self):
        params = spectrum.PotentialParams(a=1.0)
        q = spectrum.QuantumNumbers(0, 0, 0)
        point = wf.EvalPoint(r=1.0, theta=0.5, phi=0.25)
        direct = wf.total_psi(params, CONSTS, q, point)
        state = wf.bound_state(params, CONSTS, q)
        assert direct == state.psi(1.0, 0.5, 0.25)

    def test_full_space_unit_norm(self):
        rng = np.random.default_rng(29)
        cases = [
            (spectrum.PotentialParams(a=1.0), spectrum.QuantumNumbers(0, 0, 0)),
            (spectrum.PotentialParams(a=1.6, b=0.4, c=0.0, beta=1.2, D=3),
             spectrum.QuantumNumbers(1, 1, 1)),
            (spectrum.PotentialParams(a=2.2, b=0.1, c=-0.3, beta=0.6, D=5),
             spectrum.QuantumNumbers(0, 2, 1)),
        ]
        nodes, weights = np.polynomial.legendre.leggauss(120)
        theta = 0.5 * math.pi * (nodes + 1.0)
        w_theta = 0.5 * math.pi * weights
        for params, q in cases:
            state = wf.bound_state(params, CONSTS, q)
            envelope = 2.0 * state.radial.L + 2.0 + 2.0 * q.N
            r_max = quadrature.decay_cutoff(envelope, 2.0 * state.radial.epsilon)

            def theta_integrated(r_values):
                out = np.empty_like(r_values)
                for i, r in enumerate(r_values):
                    out[i] = float(np.dot(w_theta, state.density(float(r), theta)))
                return out

            res = quadrature.integrate(theta_integrated, 0.0, r_max, tol=1e-9)
            assert res.value * 2.0 * math.pi == pytest.approx(1.0, abs=1e-6)

    def test_eval_point_validation(self):
        with pytest.raises(ValueError):
            wf.EvalPoint(r=-1.0, theta=0.5, phi=0.0)
        with pytest.raises(ValueError):
            wf.EvalPoint(r=1.0, theta=4.0, phi=0.0)
        with pytest.raises(ValueError):
            wf.EvalPoint(r=1.0, theta=0.5, phi=-0.1)
