"""Normalized radial, angular, azimuthal and total wavefunctions.

The radial factor is

    R(r) = C * r**(L - (D-3)/2) * exp(-eps*r) * L_N^(2L+1)(2*eps*r)

normalized against the r**(D-1) measure, with

    C = sqrt((2*eps)**(2L+3) * N! / (2 (N+L+1) (N+2L+1)!))

where factorials of non-integer argument are read as Gamma(x+1) and computed
in the log domain.  The angular factor is

    H(theta) = norm * sin(theta)**m' * P_n^(m',m')(cos(theta))

whose textbook prefactor sqrt((2l'+1)(l'-m')! / (2 (l'+m')!)) only
normalizes the m' in {0, 1} family; every constructed state is therefore
checked by quadrature against the sin(theta) measure and renormalized when
the analytic constant is off by more than NORM_CHECK_TOL, with the
discrepancy recorded on the state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature, spectrum
from .special import jacobi, laguerre, sin_power

#: relative misnormalization above which the analytic angular prefactor is
#: replaced by the quadrature value
NORM_CHECK_TOL = 1e-6


def normalization_C(N: int, L: float, epsilon: float) -> float:
    """Radial normalization constant, computed via log-Gamma."""
    if N < 0:
        raise ValueError("N must be a nonnegative integer")
    if L <= -1.0:
        raise ValueError("L must exceed -1")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    log_c2 = ((2.0 * L + 3.0) * math.log(2.0 * epsilon)
              + math.lgamma(N + 1.0)
              - math.log(2.0)
              - math.log(N + L + 1.0)
              - math.lgamma(N + 2.0 * L + 2.0))
    return math.exp(0.5 * log_c2)


@dataclass(frozen=True)
class RadialState:
    N: int
    L: float
    epsilon: float
    D: int
    C: float


def radial_state(params: spectrum.PotentialParams, consts: spectrum.PhysicalConstants,
                 q: spectrum.QuantumNumbers) -> RadialState:
    entry = spectrum.energy(params, consts, q)
    L = entry.eff.L
    return RadialState(N=q.N, L=L, epsilon=entry.epsilon, D=params.D,
                       C=normalization_C(q.N, L, entry.epsilon))


def radial_R(state: RadialState, r):
    """Radial wavefunction; r may be a scalar or ndarray.

    The power-law prefactor r**(L - (D-3)/2) makes R(0) = 0 for positive
    exponent, C * L_N(0) at zero exponent, and divergent (still normalizable)
    for exponent in (-1/2, 0).
    """
    r = np.asarray(r, dtype=float) if np.ndim(r) else float(r)
    expo = state.L - 0.5 * (state.D - 3)
    with np.errstate(divide="ignore"):
        power = np.power(r, expo)
    return (state.C * power * np.exp(-state.epsilon * r)
            * laguerre(state.N, 2.0 * state.L + 1.0, 2.0 * state.epsilon * r))


def radial_norm_integral(state: RadialState, *, tol=1e-10) -> quadrature.QuadResult:
    """Quadrature of R^2 r^(D-1) over (0, r_max) with the decay-rule cutoff."""
    envelope_power = 2.0 * state.L + 2.0 + 2.0 * state.N
    r_max = quadrature.decay_cutoff(envelope_power, 2.0 * state.epsilon)

    def integrand(r):
        R = radial_R(state, r)
        return R * R * np.power(r, state.D - 1)

    return quadrature.integrate(integrand, 0.0, r_max, tol=tol)


@dataclass(frozen=True)
class AngularState:
    n: int
    m_prime: float
    ell_prime: float
    norm: float
    printed_norm: float     # the analytic prefactor, nan when undefined
    printed_integral: float  # what the sin-weighted norm would be with it
    adjusted: bool


def _angular_shape_integral(n: int, mp: float) -> float:
    """Quadrature of [sin^m' P_n^(m',m')(cos)]^2 sin(theta) over (0, pi)."""

    def integrand(theta):
        shape = sin_power(theta, mp) * jacobi(n, mp, mp, np.cos(theta))
        return shape * shape * np.sin(theta)

    return quadrature.integrate(integrand, 0.0, math.pi, tol=1e-12).value


def angular_state(n: int, mp: float, D: int = 3) -> AngularState:
    """Build the polar factor for Jacobi index n and effective index m'.

    The analytic prefactor is kept when it normalizes the state to within
    NORM_CHECK_TOL; otherwise the quadrature value replaces it and the
    state is flagged ``adjusted``.
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    if mp < 0:
        raise ValueError("m_prime must be nonnegative")
    lp = spectrum.ell_prime(n, mp, D)
    shape = _angular_shape_integral(n, mp)
    if lp - mp > -1.0:
        printed = math.exp(0.5 * (
            math.log(2.0 * lp + 1.0) + math.lgamma(lp - mp + 1.0)
            - math.log(2.0) - math.lgamma(lp + mp + 1.0)))
        printed_integral = printed * printed * shape
    else:
        # Gamma(l'-m'+1) is at a pole or negative; the printed constant is
        # meaningless here and only the quadrature value can normalize
        printed = math.nan
        printed_integral = math.nan
    if math.isfinite(printed_integral) and abs(printed_integral - 1.0) <= NORM_CHECK_TOL:
        norm = printed
        adjusted = False
    else:
        norm = 1.0 / math.sqrt(shape)
        adjusted = True
    return AngularState(n=n, m_prime=mp, ell_prime=lp, norm=norm,
                        printed_norm=printed, printed_integral=printed_integral,
                        adjusted=adjusted)


def angular_H(state: AngularState, theta):
    """Polar wavefunction H(theta); theta may be a scalar or ndarray."""
    theta = np.asarray(theta, dtype=float) if np.ndim(theta) else float(theta)
    return (state.norm * sin_power(theta, state.m_prime)
            * jacobi(state.n, state.m_prime, state.m_prime, np.cos(theta)))


def angular_norm_integral(state: AngularState, *, tol=1e-10) -> quadrature.QuadResult:
    def integrand(theta):
        H = angular_H(state, theta)
        return H * H * np.sin(theta)

    return quadrature.integrate(integrand, 0.0, math.pi, tol=tol)


def azimuthal_Phi(m: int, phi, sign: int = +1):
    """Azimuthal factor exp(+-i m phi) / sqrt(2 pi).

    The phase is reduced modulo 2 pi first, so the period boundary condition
    Phi(phi + 2 pi) = Phi(phi) holds to roundoff for any m.
    """
    if m < 0:
        raise ValueError("m must be a nonnegative integer")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    pref = 1.0 / math.sqrt(2.0 * math.pi)
    period = 2.0 * math.pi
    if np.ndim(phi):
        reduced = np.remainder(np.asarray(phi, dtype=float), period)
        return pref * np.exp(1j * sign * m * reduced)
    return pref * cmath.exp(1j * sign * m * math.remainder(phi, period))


@dataclass(frozen=True)
class EvalPoint:
    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError("phi must lie in [0, 2*pi)")


@dataclass(frozen=True)
class BoundState:
    """One fully assembled bound state, evaluable on grids."""

    params: spectrum.PotentialParams
    consts: spectrum.PhysicalConstants
    quantum: spectrum.QuantumNumbers
    entry: spectrum.SpectrumEntry
    radial: RadialState
    angular: AngularState

    def psi(self, r, theta, phi, sign: int = +1):
        """Total wavefunction through the combined prefactor.

        A single exp of summed log terms replaces the product of the three
        factor constants; any quadrature adjustment of the angular norm is
        folded in so that psi == R * H * Phi pointwise.
        """
        rad, ang = self.radial, self.angular
        log_pref = 0.5 * (
            (2.0 * rad.L + 3.0) * math.log(2.0 * rad.epsilon)
            + math.lgamma(rad.N + 1.0)
            - math.log(2.0)
            - math.log(rad.N + rad.L + 1.0)
            - math.lgamma(rad.N + 2.0 * rad.L + 2.0)
        ) + math.log(ang.norm) - 0.5 * math.log(2.0 * math.pi)
        expo = rad.L - 0.5 * (rad.D - 3)
        r = np.asarray(r, dtype=float) if np.ndim(r) else float(r)
        with np.errstate(divide="ignore"):
            power = np.power(r, expo)
        radial_part = (power * np.exp(-rad.epsilon * r)
                       * laguerre(rad.N, 2.0 * rad.L + 1.0, 2.0 * rad.epsilon * r))
        angular_part = (sin_power(theta, ang.m_prime)
                        * jacobi(ang.n, ang.m_prime, ang.m_prime, np.cos(theta)))
        if np.ndim(phi):
            azim = np.exp(1j * sign * self.quantum.m * np.asarray(phi, dtype=float))
        else:
            azim = cmath.exp(1j * sign * self.quantum.m * phi)
        return math.exp(log_pref) * radial_part * angular_part * azim

    def density(self, r, theta):
        """Probability density against dr dtheta dphi: |psi|^2 r^(D-1) sin(theta).

        Independent of phi and of the azimuthal sign.
        """
        amp = np.abs(self.psi(r, theta, 0.0))
        return amp * amp * np.power(r, self.params.D - 1) * np.sin(theta)


def bound_state(params: spectrum.PotentialParams, consts: spectrum.PhysicalConstants,
                q: spectrum.QuantumNumbers) -> BoundState:
    entry = spectrum.energy(params, consts, q)
    rad = RadialState(N=q.N, L=entry.eff.L, epsilon=entry.epsilon, D=params.D,
                      C=normalization_C(q.N, entry.eff.L, entry.epsilon))
    ang = angular_state(q.n, entry.eff.m_prime, params.D)
    return BoundState(params=params, consts=consts, quantum=q, entry=entry,
                      radial=rad, angular=ang)


def total_psi(params: spectrum.PotentialParams, consts: spectrum.PhysicalConstants,
              q: spectrum.QuantumNumbers, point: EvalPoint, sign: int = +1) -> complex:
    """Total wavefunction at one point; see :meth:`BoundState.psi`."""
    return bound_state(params, consts, q).psi(point.r, point.theta, point.phi, sign)
