"""Shared oracles: finite differences and brute-force quadrature."""

from __future__ import annotations

import numpy as np
from scipy.integrate import simpson


def central_diff(f, x, eps=1e-5):
    """Central finite-difference gradient of scalar f at vector x."""
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        xp = x.copy()
        xm = x.copy()
        xp.flat[i] += eps
        xm.flat[i] -= eps
        g.flat[i] = (f(xp) - f(xm)) / (2.0 * eps)
    return g


def rel_err(a, b, floor=1e-10):
    """Relative error between two gradient arrays, guarded against zeros."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    denom = max(np.linalg.norm(a.ravel()), np.linalg.norm(b.ravel()), floor)
    return np.linalg.norm((a - b).ravel()) / denom


def gaussian_product_integral_1d(mu_a, sa, mu_b, sb, n=8001):
    """Numerical integral of exp(-(x-mu_a)^2/(2 sa^2)) exp(-(x-mu_b)^2/(2 sb^2))."""
    span = 12.0 * max(sa, sb)
    lo = min(mu_a, mu_b) - span
    hi = max(mu_a, mu_b) + span
    xs = np.linspace(lo, hi, n)
    y = np.exp(-((xs - mu_a) ** 2) / (2 * sa * sa)) * np.exp(-((xs - mu_b) ** 2) / (2 * sb * sb))
    return simpson(y, x=xs)


def quadrature_exp_factor(mu_a, sa, mu_b, sb):
    """Exponential factor of the squared normalized Gaussian-product integral.

    The product of two isotropic Gaussians separates per axis, so the
    d-dimensional integral is a product of 1D integrals. Dividing by the
    coincident-mean integral cancels amplitude and prefactor, leaving the
    pure exponential; squaring matches the squared-integral convention.
    """
    mu_a = np.atleast_1d(np.asarray(mu_a, dtype=float))
    mu_b = np.atleast_1d(np.asarray(mu_b, dtype=float))
    ratio = 1.0
    for ax in range(mu_a.size):
        num = gaussian_product_integral_1d(mu_a[ax], sa, mu_b[ax], sb)
        den = gaussian_product_integral_1d(mu_a[ax], sa, mu_a[ax], sb)
        ratio *= num / den
    return ratio * ratio
