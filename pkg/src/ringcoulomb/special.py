"""Recurrence-based special function kernels (no scipy.special at runtime)."""

import numpy as np


def laguerre(n, eta, x):
    """Generalized Laguerre polynomial L_n^(eta)(x) by the three-term recurrence.

    Stable upward in n for eta > -1; x may be a scalar or ndarray.
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    p_prev = x * 0.0 + 1.0
    if n == 0:
        return p_prev
    p = 1.0 + eta - x
    for k in range(2, n + 1):
        p, p_prev = ((2.0 * k - 1.0 + eta - x) * p - (k - 1.0 + eta) * p_prev) / k, p
    return p


def jacobi(n, aa, bb, x):
    """Jacobi polynomial P_n^(aa,bb)(x) by the three-term recurrence.

    Requires aa, bb > -1 so no recurrence coefficient vanishes.
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    p_prev = x * 0.0 + 1.0
    if n == 0:
        return p_prev
    p = (aa + 1.0) + (aa + bb + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        s = 2.0 * k + aa + bb
        c1 = 2.0 * k * (k + aa + bb) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + aa * aa - bb * bb)
        c3 = 2.0 * (k + aa - 1.0) * (k + bb - 1.0) * s
        p, p_prev = (c2 * p - c3 * p_prev) / c1, p
    return p


def sin_power(theta, power):
    """sin(theta)**power with the 0**0 = 1 convention at the poles.

    Evaluated as sin(pi - theta) on the upper half so that the representable
    endpoint theta = pi is an exact zero, like theta = 0.
    """
    s = np.where(theta > 0.5 * np.pi, np.sin(np.pi - theta), np.sin(theta))
    if np.ndim(theta) == 0:
        s = float(s)
    if power == 0:
        return s * 0.0 + 1.0
    with np.errstate(divide="ignore"):
        return np.power(s, power)
