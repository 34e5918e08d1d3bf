r"""Perfectly conducting walls at r = a and r = b (field-theoretic route).

With ``x = zeta a``, ``y = zeta b`` the two mode ratios are

.. math::
    r_F = \frac{s_l(x)}{e_l(x)}\frac{e_l(y)}{s_l(y)},\qquad
    r_G = \frac{s_l'(x)}{e_l'(x)}\frac{e_l'(y)}{s_l'(y)},

and the interaction free energy is

.. math::
    \beta F = 2\sum_{n\ge0}{}' \sum_{l\ge1} \nu \ln[(1-r_F)(1-r_G)],

the prime halving the n = 0 term, where both ratios equal ``(a/b)^(2l+1)``.
Only the interaction part of the surface force is computed; the divergent
single-surface self-force is not part of this package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import Geometry, SeriesResult, ThermalState
from .quadrature import integrate
from .special_functions import riccati_table
from .summation import matsubara_sum, sum_over_l

__all__ = [
    "ConductorModeRatios",
    "ForceResult",
    "mode_ratios",
    "n0_term",
    "conductor_free_energy",
    "conductor_energy_T0",
    "conductor_force",
]

L_CAP = 20_000
N_CAP = 5_000_000


class ConductorModeRatios(NamedTuple):
    """TE (rF) and TM (rG) ratios, shape ``(lmax, len(x))``, with their arguments."""

    rF: np.ndarray
    rG: np.ndarray
    x: np.ndarray
    y: np.ndarray


@dataclass(frozen=True)
class ForceResult:
    """Interaction surface force per unit area on the outer wall."""

    f_int: float
    convergence: SeriesResult


def _tables(g: Geometry, zeta: np.ndarray, lmax: int):
    x, y = zeta * g.a, zeta * g.b
    tx = riccati_table(x, lmax)
    ty = riccati_table(y, lmax)
    log_rf = (tx.log_s - tx.log_e + ty.log_e - ty.log_s)[1:]
    with np.errstate(under="ignore"):
        rf = np.exp(log_rf)
    # s'(x)/e'(x) * e'(y)/s'(y) = rF * (S_x/E_x) * (E_y/S_y)
    rg = rf * (tx.dlog_s[1:] / tx.dlog_e[1:]) * (ty.dlog_e[1:] / ty.dlog_s[1:])
    return x, y, rf, rg, tx, ty


def mode_ratios(g: Geometry, zeta, lmax: int) -> ConductorModeRatios:
    """Mode ratios for l = 1..lmax at imaginary frequencies ``zeta > 0``."""
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    x, y, rf, rg, _, _ = _tables(g, zeta, lmax)
    return ConductorModeRatios(rf, rg, x, y)


def _zero_frequency_ratio(g: Geometry, l: np.ndarray) -> np.ndarray:
    # small-argument limit of both ratios
    return np.exp((2 * l + 1) * math.log(g.a / g.b))


def n0_term(g: Geometry, tol: float = 1e-15, l_cap: int = 1_000_000) -> float:
    """Zero-frequency contribution sum_l (2l+1) ln(1 - (a/b)^(2l+1)).

    This already includes the half weight of the n = 0 term and is twice the
    static dielectric result at infinite permittivity.
    """
    parts: list[float] = []
    lmax, chunk = 0, 256
    w = (g.a / g.b) ** 2
    while lmax < l_cap:
        l = np.arange(lmax + 1, lmax + chunk + 1)
        parts.extend(((2 * l + 1) * np.log1p(-_zero_frequency_ratio(g, l))).tolist())
        lmax += chunk
        total = math.fsum(parts)
        # u <= |ln(1-u)| <= u/(1-u): bound the rest by a weighted geometric series
        sig_next = float(_zero_frequency_ratio(g, np.array([lmax + 1]))[0])
        tail = -parts[-1] * (w / (1 - w) + 2 * w / ((2 * lmax + 1) * (1 - w) ** 2)) / (1 - sig_next)
        if tail <= tol * abs(total):
            return total
    return math.fsum(parts)


def _l_guess(g: Geometry, zeta_max: float, tol: float) -> int:
    depth = math.log(1.0 / tol) + 3.0
    rate = math.log(g.b / g.a)
    return int(8 + depth / (2 * rate) + math.sqrt(depth * zeta_max * g.a / rate))


def _lsum(g: Geometry, zeta: np.ndarray, tol: float, l_cap: int):
    """Column sums of (2l+1) ln[(1-rF)(1-rG)] for frequencies ``zeta > 0``."""

    def terms(lmax):
        _, _, rf, rg, _, _ = _tables(g, zeta, lmax)
        w = (2.0 * np.arange(1, lmax + 1) + 1.0)[:, None]
        return w * (np.log1p(-rf) + np.log1p(-rg))

    return sum_over_l(terms, tol, _l_guess(g, float(zeta.max()), tol), l_cap)


def conductor_free_energy(g: Geometry, th: ThermalState, tol: float = 1e-6,
                          l_cap: int = L_CAP, n_cap: int = N_CAP) -> SeriesResult:
    """beta F at nondimensional temperature t > 0."""
    if th.t <= 0:
        raise ValueError("conductor_free_energy needs t > 0; use conductor_energy_T0")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    n0 = n0_term(g)

    def block(n):
        sums, lmax, _, counts = _lsum(g, th.zeta(n), tol, l_cap)
        return sums, lmax, counts

    res = matsubara_sum(block, n0, tol, n_cap)
    res.extra.update(n0=n0)
    return res


def conductor_energy_T0(g: Geometry, tol: float = 1e-6, l_cap: int = L_CAP) -> SeriesResult:
    """Zero-temperature interaction energy E = (1/(pi a)) int_0^inf dx sum_l nu ln[...].

    The x integral uses adaptive Gauss-Kronrod on [0, X] with the upper limit
    set by the l = 1 envelope exp(-2 xi x); the integrand at x = 0 is the
    analytic small-argument limit.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    xi = g.xi
    depth = math.log(1.0 / tol) + 10.0
    x_max = (depth + math.log1p(1.0 / xi)) / (2.0 * math.log(g.b / g.a))
    f0 = n0_term(g)
    l_used = [0]
    inner_tol = tol * 1e-2

    def integrand(x):
        out = np.empty_like(x)
        zero = x <= 0
        out[zero] = f0
        if (~zero).any():
            zeta = x[~zero] / g.a
            sums, lmax, _, _ = _lsum(g, zeta, inner_tol, l_cap)
            out[~zero] = sums
            l_used[0] = max(l_used[0], lmax)
        # sum_l nu ln[...] = half the (2l+1)-weighted sum
        return 0.5 * out

    # the integrand varies on the scale 1/xi near x = 0
    scale = min(x_max, 1.0 / xi)
    breaks = [scale * k for k in (0.25, 0.5, 1.0, 2.0, 4.0) if scale * k < x_max]
    value, err = integrate(integrand, 0.0, x_max, rtol=tol, breakpoints=breaks)
    energy = float(value) / (math.pi * g.a)
    return SeriesResult(energy, l_used[0], 0, err / (math.pi * g.a), tol, {"x_max": x_max})


def _force_block(g: Geometry, zeta: np.ndarray, tol: float, l_cap: int):
    """Column sums of nu * d/db ln[(1-rF)(1-rG)] at fixed a."""
    def terms(lmax):
        _, y, rf, rg, _, ty = _tables(g, zeta, lmax)
        l = np.arange(1, lmax + 1)[:, None]
        sy, ey = ty.dlog_s[1:], ty.dlog_e[1:]
        dlog_rf = zeta * (ey - sy)
        curv = 1.0 + l * (l + 1.0) / (y * y)
        dlog_rg = zeta * curv * (1.0 / ey - 1.0 / sy)
        nu = l + 0.5
        return -nu * (rf / (1.0 - rf) * dlog_rf + rg / (1.0 - rg) * dlog_rg)

    return sum_over_l(terms, tol, _l_guess(g, float(zeta.max()), tol), l_cap)


def conductor_force(g: Geometry, th: ThermalState, tol: float = 1e-6,
                    l_cap: int = L_CAP, n_cap: int = N_CAP) -> ForceResult:
    """Interaction surface force density on r = b at temperature t > 0.

    f = -1/(2 pi b^2 beta) sum'_n sum_l nu d/db ln[(1-rF)(1-rG)], with the b
    derivative taken analytically through y = zeta b.
    """
    if th.t <= 0:
        raise ValueError("conductor_force needs t > 0")
    # n = 0: d/db ln(1 - sigma)^2 = 2 (2l+1)/b * sigma/(1 - sigma); half weight
    parts: list[float] = []
    lmax = 0
    while True:
        l = np.arange(lmax + 1, lmax + 257)
        sig = _zero_frequency_ratio(g, l)
        parts.extend(((l + 0.5) * 2.0 * (2 * l + 1) / g.b * sig / (1.0 - sig)).tolist())
        lmax += 256
        if parts[-1] <= 1e-3 * tol * abs(math.fsum(parts)):
            break
    n0 = 0.5 * math.fsum(parts)

    def block(n):
        sums, used, _, counts = _force_block(g, th.zeta(n), tol, l_cap)
        return sums, used, counts

    series = matsubara_sum(block, n0, tol, n_cap)
    f = -series.value / (2.0 * math.pi * g.b**2 * th.beta)
    return ForceResult(f, series)
