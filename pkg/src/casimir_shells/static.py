r"""Zero-frequency (n = 0) mutual free energy for arbitrary static permittivity.

The static mode eigenvalues are :math:`A_l \sigma_l` with

.. math::
    A_l = \frac{(\varepsilon-1)^2 l(l+1)}{[\varepsilon(l+1)+l](\varepsilon l+l+1)},
    \qquad \sigma_l = (a/b)^{2l+1},

and :math:`\beta F = \tfrac12 \sum_{l\ge1} (2l+1)\ln(1 - A_l\sigma_l)`.
"""
from __future__ import annotations

import math

import numpy as np

from .model import Geometry, NonConvergence, SeriesResult

__all__ = [
    "static_coupling",
    "static_eigenvalues",
    "static_free_energy",
    "static_energy_derivative",
    "dilute_free_energy",
    "dilute_overlap_series",
    "L_MAX_STATIC",
]

L_MAX_STATIC = 200_000
_CHUNK = 256


def static_coupling(epsilon: float, l):
    """A_l for static permittivity ``epsilon`` (``math.inf`` for a conductor)."""
    l_arr = np.asarray(l)
    if np.any(l_arr < 1):
        raise ValueError("l must be >= 1")
    if math.isinf(epsilon):
        return np.ones(l_arr.shape)[()] if l_arr.ndim else 1.0
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    l_arr = l_arr.astype(float)
    em1 = epsilon - 1.0
    out = em1 * em1 * l_arr * (l_arr + 1.0) / ((epsilon * (l_arr + 1.0) + l_arr) * (epsilon * l_arr + l_arr + 1.0))
    return out[()] if out.ndim == 0 else out


def static_eigenvalues(g: Geometry, epsilon: float, lmax: int, sigma_scale: float = 1.0) -> np.ndarray:
    """A_l sigma_l for l = 1..lmax."""
    l = np.arange(1, lmax + 1)
    return static_coupling(epsilon, l) * (sigma_scale * g.sigma(l))


def _tail_bound(g: Geometry, lmax: int) -> float:
    # sum_{l>lmax} (2l+1) u_l/(1-u_l) with u_l <= sigma_l = r w^l, w = r^2
    r = g.ratio
    w = r * r
    m = lmax + 1
    geo = w**m * ((2 * m + 1) / (1.0 - w) + 2.0 * w / (1.0 - w) ** 2)
    return r * geo / (1.0 - r ** (2 * m + 1))


def _static_sum(g: Geometry, epsilon: float, tol: float, term, sigma_scale: float = 1.0,
                l_cap: int = L_MAX_STATIC) -> SeriesResult:
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if epsilon == 1.0:
        return SeriesResult(0.0, 0, 1, 0.0, tol)
    parts: list[float] = []
    lmax = 0
    while True:
        hi = min(lmax + _CHUNK, l_cap)
        l = np.arange(lmax + 1, hi + 1)
        u = static_coupling(epsilon, l) * (sigma_scale * g.sigma(l))
        parts.extend(term(l, u).tolist())
        lmax = hi
        total = math.fsum(parts)
        # |log(1-u)| <= u/(1-u) and u/(1-u) both bounded by the same tail
        tail = _tail_bound(g, lmax)
        if tail <= tol * abs(total) or total == 0.0 and tail == 0.0:
            return SeriesResult(total, lmax, 1, tail, tol)
        if lmax >= l_cap:
            raise NonConvergence(
                f"static l-sum not converged at l_max={l_cap} (a/b={g.ratio})", which="l", cap=l_cap)


def static_free_energy(g: Geometry, epsilon: float, tol: float = 1e-12,
                       sigma_scale: float = 1.0) -> SeriesResult:
    """beta F = 1/2 sum (2l+1) ln(1 - A_l sigma_l); negative for epsilon > 1.

    ``sigma_scale`` multiplies every sigma_l and exists only as a mutation
    hook for the golden-value checker.
    """
    res = _static_sum(g, epsilon, tol, lambda l, u: (2 * l + 1) * np.log1p(-u), sigma_scale)
    return SeriesResult(0.5 * res.value, res.l_terms, 1, 0.5 * res.tail_estimate, tol)


def static_energy_derivative(g: Geometry, epsilon: float, tol: float = 1e-12) -> SeriesResult:
    """beta dF/d(lambda) at lambda = 1: -sum (2l+1) A_l sigma_l / (1 - A_l sigma_l).

    A_l sigma_l scales as lambda**2 with the coupling strength lambda, so
    integrating this over lambda from 0 to 1 returns the free energy.
    """
    res = _static_sum(g, epsilon, tol, lambda l, u: -(2 * l + 1) * u / (1.0 - u))
    return res


def dilute_free_energy(g: Geometry, epsilon: float, lmax: int = 2000) -> float:
    """Leading small-(epsilon-1) free energy: -1/2 (eps-1)^2 sum l(l+1)/(2l+1) sigma_l."""
    l = np.arange(1, lmax + 1)
    return -0.5 * (epsilon - 1.0) ** 2 * math.fsum(l * (l + 1.0) / (2 * l + 1.0) * g.sigma(l))


def dilute_overlap_series(g: Geometry, l_max: int) -> float:
    r"""Harmonic expansion of the pair-overlap integral

    .. math::
        I = \int_{r_1<a}\int_{r_2>b} \frac{d^3r_1\, d^3r_2}{|r_1-r_2|^6}
          = \frac{8\pi^2}{3}\sum_{l\ge1}\frac{l(l+1)}{2l+1}\sigma_l .

    I is dimensionless, so no geometry prefactor beyond sigma_l appears.
    """
    l = np.arange(1, l_max + 1)
    return 8.0 * math.pi**2 / 3.0 * math.fsum(l * (l + 1.0) / (2 * l + 1.0) * g.sigma(l))
