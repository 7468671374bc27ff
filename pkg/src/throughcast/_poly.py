"""Lag-polynomial helpers shared by simulation, estimation and forecasting.

Coefficient conventions: an AR vector ``a`` stands for ``1 - a1 B - ... - ap B^p``
and an MA vector ``b`` for ``1 + b1 B + ... + bq B^q``.
"""
import numpy as np
from scipy.signal import lfilter


def is_stationary(coeffs):
    """True when ``1 - sum(a_i z^i)`` has every root strictly outside the unit circle.

    Uses the Schur-Cohn step-down recursion (reflection coefficients), which is
    cheaper than a root solve for the low orders used here.
    """
    a = [float(c) for c in coeffs]
    while a and a[-1] == 0.0:
        a.pop()
    while a:
        k = len(a)
        kappa = a[-1]
        if not np.isfinite(kappa) or abs(kappa) >= 1.0:
            return False
        denom = 1.0 - kappa * kappa
        a = [(a[j] + kappa * a[k - 2 - j]) / denom for j in range(k - 1)]
    return True


def is_invertible(coeffs):
    """True when ``1 + sum(b_i z^i)`` has every root strictly outside the unit circle."""
    return is_stationary([-c for c in coeffs])


def ar_poly(coeffs, lag=1):
    """Full polynomial array for ``1 - sum(a_i B^(i*lag))`` (index = power of B)."""
    out = np.zeros(len(coeffs) * lag + 1)
    out[0] = 1.0
    for i, c in enumerate(coeffs, start=1):
        out[i * lag] = -c
    return out


def ma_poly(coeffs, lag=1):
    """Full polynomial array for ``1 + sum(b_i B^(i*lag))``."""
    out = np.zeros(len(coeffs) * lag + 1)
    out[0] = 1.0
    for i, c in enumerate(coeffs, start=1):
        out[i * lag] = c
    return out


def difference_poly(d, D=0, m=0):
    """``(1 - B)^d (1 - B^m)^D`` as a polynomial array."""
    out = np.array([1.0])
    for _ in range(d):
        out = np.convolve(out, [1.0, -1.0])
    if D:
        seasonal = np.zeros(m + 1)
        seasonal[0], seasonal[m] = 1.0, -1.0
        for _ in range(D):
            out = np.convolve(out, seasonal)
    return out


def psi_weights(ar_full, ma_full, n):
    """First ``n`` MA(infinity) weights of ``ma_full(B) / ar_full(B)``.

    Both arguments are polynomial arrays with a leading 1; the weights are the
    impulse response of the rational filter, so ``psi[0] == 1``.
    """
    impulse = np.zeros(n)
    impulse[0] = 1.0
    return lfilter(ma_full, ar_full, impulse)
