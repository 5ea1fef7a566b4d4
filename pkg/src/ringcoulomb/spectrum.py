"""Closed-form bound states of a pseudo-Coulomb plus ring-shaped potential.

The potential, in D-dimensional spherical coordinates (r, theta, ...):

    V(r, theta) = -a/r + b/r^2 + beta * cos(theta)^2 / (r^2 sin(theta)^2) + c

Separation psi = R(r) H(theta) Phi(phi) pushes the ring strength beta into
effective, generally non-integer indices

    m'^2 = m^2 + 2 mu beta / hbar^2
    l'   = -(D-2)/2 + (1/2) sqrt((D-2)^2 + 4 (n+m')(n+m'+1))

and the angular eigenvalue coupling the two equations is

    Lambda = l'(l' + D - 2) - 2 mu beta / hbar^2 = (n+m')(n+m'+1) - 2 mu beta / hbar^2.

The radial equation then quantizes like a Coulomb problem with a modified
centrifugal term, giving

    E = c - (2 mu a^2 / hbar^2) / (2N + 1 + sqrt(4 gamma + 1))^2,
    gamma = nu_t + 2 mu b / hbar^2,   4 nu_t + 1 = (D-2)^2 + 4 Lambda,

equivalently the Coulombic form E = c - mu a^2 / (2 hbar^2 N'^2) with the
principal-like number N' = N + L + 1.  Everything here is a pure function of
immutable inputs; the finite-difference checks live in ``oracle``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class SpectrumError(Exception):
    """Base class for spectrum construction failures."""


class FallToCenter(SpectrumError):
    """4*gamma + 1 < 0: the inverse-square attraction swallows the barrier."""


class NoBoundState(SpectrumError):
    """a = 0 removes the Coulomb well; nothing binds below c."""


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced mass and action unit in any consistent unit system."""

    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.mu <= 0 or self.hbar <= 0:
            raise ValueError("mu and hbar must be positive")


@dataclass(frozen=True)
class PotentialParams:
    a: float
    b: float = 0.0
    c: float = 0.0
    beta: float = 0.0
    D: int = 3

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or self.beta < 0:
            raise ValueError("a, b and beta must be nonnegative")
        if not isinstance(self.D, int) or self.D < 2:
            raise ValueError("dimension D must be an integer >= 2")

    @property
    def domain_extension(self) -> bool:
        """True when c < 0, outside the all-positive parameter regime."""
        return self.c < 0


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial index N, polar (Jacobi) index n, magnetic index m; all >= 0."""

    N: int
    n: int
    m: int

    def __post_init__(self):
        for name in ("N", "n", "m"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError("%s must be a nonnegative integer" % name)


@dataclass(frozen=True)
class EffectiveIndices:
    """Derived real indices for one (N, n, m) state."""

    m_prime: float
    ell_prime: float
    Lambda: float      # separation constant l(l + D - 2)
    ell: float         # root of l(l+D-2) = Lambda with l >= -(D-2)/2; nan if complex
    M: float           # D + 2*ell
    nu_tilde: float    # (M-1)(M-3)/4 via the identity 4*nu_t + 1 = (D-2)^2 + 4*Lambda
    gamma: float
    alpha: float
    L: float           # radial power index
    N_prime: float     # N + L + 1

    @property
    def domain_extension(self) -> bool:
        return self.Lambda < 0


@dataclass(frozen=True)
class SpectrumEntry:
    """One bound state: energy, decay rate and all derived indices."""

    E: float
    epsilon: float
    quantum: QuantumNumbers
    eff: EffectiveIndices
    domain_extension: bool = False


def m_prime(m: int, beta: float, consts: PhysicalConstants) -> float:
    """Effective magnetic index absorbing the ring strength."""
    return math.sqrt(m * m + 2.0 * consts.mu * beta / consts.hbar**2)


def ell_prime(n: int, mp: float, D: int) -> float:
    """Effective orbital index; satisfies l'(l'+D-2) = (n+m')(n+m'+1)."""
    half = 0.5 * (D - 2)
    return -half + 0.5 * math.sqrt((D - 2) ** 2 + 4.0 * (n + mp) * (n + mp + 1.0))


def jacobi_index(lp: float, mp: float, D: int) -> float:
    """Inverse of :func:`ell_prime`: recovers the polar polynomial degree n."""
    return -0.5 * (1.0 + 2.0 * mp) + 0.5 * math.sqrt(
        (2.0 * lp + 1.0) ** 2 + 4.0 * lp * (D - 3))


def separation_constant(lp: float, D: int, beta: float, consts: PhysicalConstants) -> float:
    """Angular eigenvalue Lambda = l'(l'+D-2) - 2*mu*beta/hbar^2."""
    return lp * (lp + D - 2.0) - 2.0 * consts.mu * beta / consts.hbar**2


def radial_params(params: PotentialParams, consts: PhysicalConstants, Lambda: float):
    """Coulomb strength alpha and centrifugal strength gamma for a given Lambda.

    Returns ``(alpha, gamma, nu_tilde, M)``.  nu_tilde comes from the identity
    4*nu_t + 1 = (D-2)^2 + 4*Lambda, so it stays real even when the auxiliary
    index l solving l(l+D-2) = Lambda is complex (M is then nan).
    """
    mu, hbar = consts.mu, consts.hbar
    D = params.D
    nu_t = ((D - 2) ** 2 + 4.0 * Lambda - 1.0) / 4.0
    gamma = nu_t + 2.0 * mu * params.b / hbar**2
    alpha = 2.0 * mu * params.a / hbar**2
    if 4.0 * gamma + 1.0 < 0.0:
        raise FallToCenter("4*gamma + 1 = %r < 0" % (4.0 * gamma + 1.0))
    disc = 0.25 * (D - 2) ** 2 + Lambda
    ell = -0.5 * (D - 2) + math.sqrt(disc) if disc >= 0 else math.nan
    return alpha, gamma, nu_t, D + 2.0 * ell


def effective_indices(params: PotentialParams, consts: PhysicalConstants,
                      q: QuantumNumbers) -> EffectiveIndices:
    mu, hbar = consts.mu, consts.hbar
    D = params.D
    mp = m_prime(q.m, params.beta, consts)
    lp = ell_prime(q.n, mp, D)
    Lambda = separation_constant(lp, D, params.beta, consts)
    alpha, gamma, nu_t, M = radial_params(params, consts, Lambda)
    ell = 0.5 * (M - D)
    # radial power index; its radicand equals 4*gamma + 1 but is grouped
    # through l' and (b - beta), which is the independent arithmetic path
    # used by the Coulombic energy form
    rad = (D - 2) ** 2 + 4.0 * lp * (lp + D - 2.0) \
        + 8.0 * mu * (params.b - params.beta) / hbar**2
    if rad < 0.0:
        raise FallToCenter("radial power radicand %r < 0" % rad)
    L = 0.5 * (math.sqrt(rad) - 1.0)
    return EffectiveIndices(
        m_prime=mp, ell_prime=lp, Lambda=Lambda, ell=ell, M=M,
        nu_tilde=nu_t, gamma=gamma, alpha=alpha, L=L, N_prime=q.N + L + 1.0)


def energy(params: PotentialParams, consts: PhysicalConstants,
           q: QuantumNumbers) -> SpectrumEntry:
    """Bound-state energy E = c - (2 mu a^2/hbar^2) / (2N+1+sqrt(4 gamma+1))^2.

    The decay rate epsilon = alpha / (2N+1+sqrt(4 gamma+1)) is computed first
    and E = c - hbar^2 eps^2 / (2 mu) follows exactly from it.
    """
    if params.a == 0:
        raise NoBoundState("a = 0: the potential has no Coulomb well")
    eff = effective_indices(params, consts, q)
    den = 2 * q.N + 1 + math.sqrt(4.0 * eff.gamma + 1.0)
    eps = eff.alpha / den
    E = params.c - consts.hbar**2 * eps * eps / (2.0 * consts.mu)
    return SpectrumEntry(
        E=E, epsilon=eps, quantum=q, eff=eff,
        domain_extension=params.domain_extension or eff.domain_extension)


def energy_coulombic_form(params: PotentialParams, consts: PhysicalConstants,
                          q: QuantumNumbers) -> float:
    """Same spectrum in the 1/N'^2 form, E = c - mu a^2 / (2 hbar^2 N'^2).

    Uses the principal-like number N' = N + L + 1; the arithmetic path is
    independent of :func:`energy` up to the shared effective indices, which
    is what the form-equivalence check exercises.
    """
    if params.a == 0:
        raise NoBoundState("a = 0: the potential has no Coulomb well")
    eff = effective_indices(params, consts, q)
    return params.c - consts.mu * params.a**2 / (
        2.0 * consts.hbar**2 * eff.N_prime**2)


def epsilon_coulombic_form(params: PotentialParams, consts: PhysicalConstants,
                           q: QuantumNumbers) -> float:
    """Decay rate in the principal-number form eps = mu a / (hbar^2 N')."""
    eff = effective_indices(params, consts, q)
    return consts.mu * params.a / (consts.hbar**2 * eff.N_prime)


# ---------------------------------------------------------------------------
# published limiting cases; each has a general-path evaluation (the same
# energy() code on substituted parameters) and a literal transcription of
# the reduced formula, kept deliberately separate for dual-path checks
# ---------------------------------------------------------------------------

def kratzer_ring_params(De: float, re: float, beta: float, D: int = 3) -> PotentialParams:
    """Substitution a = 2*De*re, b = De*re^2, c = De (Kratzer-type well)."""
    return PotentialParams(a=2.0 * De * re, b=De * re * re, c=De, beta=beta, D=D)


def reduce_cheng_dai(De, re, beta, consts, q) -> SpectrumEntry:
    """Modified Kratzer plus ring term in three dimensions, general path."""
    return energy(kratzer_ring_params(De, re, beta, D=3), consts, q)


def cheng_dai_literal(De, re, beta, consts, q) -> float:
    """Literal reduced formula for the 3-D Kratzer-plus-ring case."""
    mu, hbar = consts.mu, consts.hbar
    mp = math.sqrt(q.m**2 + 2.0 * mu * beta / hbar**2)
    den = 2 * q.N + 1 + math.sqrt(
        (2 * q.n + 1) ** 2 + 4 * q.m**2 + 4 * (2 * q.n + 1) * mp
        + 8.0 * mu * De * re**2 / hbar**2)
    return De - (8.0 * mu * De**2 * re**2 / hbar**2) / den**2


def reduce_kratzer(De, re, consts, N: int, ell: int) -> SpectrumEntry:
    """Modified Kratzer well (no ring term), general path.

    Integer angular momentum ell maps onto (n=ell, m=0) at beta = 0.
    """
    return energy(kratzer_ring_params(De, re, 0.0, D=3), consts,
                  QuantumNumbers(N=N, n=ell, m=0))


def kratzer_literal(De, re, consts, N: int, ell: int) -> float:
    mu, hbar = consts.mu, consts.hbar
    den = 1 + 2 * N + math.sqrt(
        1 + 4 * ell * (ell + 1) + 8.0 * mu * De * re**2 / hbar**2)
    return De - (8.0 * mu * De**2 * re**2 / hbar**2) / den**2


def reduce_ddim(De, re, beta, consts, q, D: int) -> SpectrumEntry:
    """Kratzer-plus-ring substitution kept in arbitrary dimension, general path."""
    return energy(kratzer_ring_params(De, re, beta, D=D), consts, q)


def ddim_literal(De, re, beta, consts, q, D: int) -> float:
    mu, hbar = consts.mu, consts.hbar
    lp = ell_prime(q.n, m_prime(q.m, beta, consts), D)
    den = 2 * q.N + 1 + math.sqrt(
        (D - 2) ** 2 + 4.0 * lp * (lp + D - 2.0)
        + 8.0 * mu * (De * re**2 - beta) / hbar**2)
    return De - (8.0 * mu * De**2 * re**2 / hbar**2) / den**2


def reduce_coulomb_ring(Z, e_charge, beta, consts, q) -> SpectrumEntry:
    """Coulomb attraction Z*e^2/r plus ring term, general path (b = c = 0, D = 3)."""
    if Z <= 0:
        raise ValueError("Z must be positive")
    return energy(PotentialParams(a=Z * e_charge**2, b=0.0, c=0.0, beta=beta, D=3),
                  consts, q)


def coulomb_ring_literal(Z, e_charge, beta, consts, q) -> float:
    mu, hbar = consts.mu, consts.hbar
    mp = math.sqrt(q.m**2 + 2.0 * mu * beta / hbar**2)
    bracket = (q.n + mp) * (q.n + mp + 1.0) - 2.0 * mu * beta / hbar**2
    den = 2 * q.N + 1 + math.sqrt(1.0 + 4.0 * bracket)
    return -(2.0 * mu * Z**2 * e_charge**4 / hbar**2) / den**2
