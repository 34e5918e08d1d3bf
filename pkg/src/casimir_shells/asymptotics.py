r"""Narrow-gap, high-temperature and parallel-plate limits.

Narrow-gap formulas keep only the leading uniform-asymptotic term, so both
conductor mode ratios become ``exp(-2 xi sqrt(nu^2 + x^2))``. The plate
formulas use the transverse wave number ``q >= zeta_n`` (units with c = 1).
Plate quantities are returned per unit area; multiplying by ``4 pi a^2``
gives the value for the spherical gap of inner radius ``a``.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import zeta as _riemann_zeta

from .model import Geometry, PermittivityModel, SeriesResult, ThermalState
from .quadrature import integrate
from .summation import matsubara_sum

__all__ = [
    "ZETA3",
    "ZETA4",
    "narrow_slit_energy_T0",
    "narrow_slit_energy_closed_form",
    "narrow_slit_free_energy",
    "high_T_slit_closed_form",
    "high_T_plate_closed_form",
    "plate_energy_T0",
    "plate_free_energy_conductor",
    "plate_force_conductor",
    "lifshitz_plate_free_energy",
    "plate_reflection_products",
]

ZETA3 = float(_riemann_zeta(3.0))
ZETA4 = math.pi**4 / 90.0


def _slit_lmax(xi: float, tol: float, x_max: float = 0.0) -> int:
    # 2 xi (sqrt(nu^2 + X^2) - X) must exceed the depth for the last retained nu
    depth = math.log(1.0 / tol) + 25.0
    k = depth / (2.0 * xi)
    return int(math.ceil(math.sqrt(k * k + 2.0 * k * x_max))) + 2


def narrow_slit_energy_T0(g: Geometry, tol: float = 1e-10) -> float:
    r"""E = (2/(pi a)) sum_l nu^2 int_0^inf dz ln(1 - exp(-2 xi nu sqrt(1+z^2))).

    The z integral is taken as ``z = sinh u``; the l sum sits inside the
    integrand so all orders share one adaptive rule.
    """
    xi = g.xi
    lmax = _slit_lmax(xi, tol)
    nu = np.arange(1, lmax + 1)[:, None] + 0.5
    depth = math.log(1.0 / tol) + 40.0
    u_max = math.acosh(max(1.0, depth / (2.0 * xi * 1.5)))

    def integrand(u):
        c = np.cosh(u)[None, :]
        return (nu * nu * np.log1p(-np.exp(-2.0 * xi * nu * c)) * c).sum(axis=0)

    value, _ = integrate(integrand, 0.0, max(u_max, 1e-3), rtol=tol)
    return 2.0 / (math.pi * g.a) * float(value)


def narrow_slit_energy_closed_form(g: Geometry) -> float:
    """Leading small-gap energy, -pi^3 / (180 a xi^3)."""
    return -math.pi**3 / (180.0 * g.a * g.xi**3)


def narrow_slit_free_energy(g: Geometry, th: ThermalState, tol: float = 1e-8,
                            n_cap: int = 10_000_000) -> SeriesResult:
    r"""beta F = 4 sum'_n sum_l nu ln(1 - exp(-2 xi sqrt(nu^2 + n^2 t^2))).

    Requires t > 0; the n = 0 term alone is ``2 sum_l nu ln(1 - exp(-2 xi nu))``.
    """
    if th.t <= 0:
        raise ValueError("narrow_slit_free_energy needs t > 0")
    xi, t = g.xi, th.t

    def lsum(x):
        lmax = _slit_lmax(xi, tol, float(np.max(x)))
        nu = np.arange(1, lmax + 1)[:, None] + 0.5
        return (nu * np.log1p(-np.exp(-2.0 * xi * np.sqrt(nu * nu + x[None, :] ** 2)))).sum(axis=0), lmax

    s0, l0 = lsum(np.zeros(1))
    n0 = 2.0 * float(s0[0])

    def block(n):
        s, lmax = lsum(n * t)
        return 4.0 * s, lmax, np.full(n.size, lmax)

    return matsubara_sum(block, n0, tol, n_cap, n0_l_terms=l0)


def high_T_slit_closed_form(g: Geometry) -> float:
    """Classical (n = 0) narrow-slit free energy, -zeta(3) / (2 xi^2)."""
    return -ZETA3 / (2.0 * g.xi**2)


def high_T_plate_closed_form(d: float) -> float:
    """Per-area classical plate free energy beta F / A = -zeta(3) / (8 pi d^2)."""
    return -ZETA3 / (8.0 * math.pi * d * d)


def plate_energy_T0(d: float) -> float:
    """Per-area zero-temperature plate energy -pi^2 / (720 d^3)."""
    return -math.pi**2 / (720.0 * d**3)


def _plate_sum(d: float, th: ThermalState, tol: float, integrand_at, n_cap: int) -> SeriesResult:
    """sum'_n int_{zeta_n}^inf g_n(q) dq with q = zeta_n + s/(2d), s in [0, S]."""
    if not d > 0:
        raise ValueError("plate gap d must be > 0")
    if th.t <= 0:
        raise ValueError("plate free energies need t > 0")
    s_max = math.log(1.0 / tol) + 50.0

    def block_integral(zeta):
        def f(s):
            q = zeta[:, None] + s[None, :] / (2.0 * d)
            return integrand_at(zeta[:, None], q) / (2.0 * d)

        value, _ = integrate(f, 0.0, s_max, rtol=tol * 1e-2, breakpoints=(1e-6, 1e-3, 0.1, 1.0, 5.0))
        return np.atleast_1d(value)

    n0 = 0.5 * float(block_integral(np.zeros(1))[0])

    def block(n):
        return block_integral(th.zeta(n)), 0, np.zeros(n.size, dtype=int)

    return matsubara_sum(block, n0, tol, n_cap)


def plate_free_energy_conductor(d: float, th: ThermalState, tol: float = 1e-8,
                                n_cap: int = 10_000_000) -> float:
    r"""Per-area beta F = (1/pi) sum'_n int_{zeta_n}^inf q ln(1 - e^{-2qd}) dq.

    This is the narrow-gap continuum limit of the sphere sum with
    ``l(l+1) = k_perp^2 a^2``; multiply by ``4 pi a^2`` for the total.
    """
    res = _plate_sum(d, th, tol, lambda zeta, q: q * np.log1p(-np.exp(-2.0 * q * d)), n_cap)
    return res.value / math.pi


def plate_force_conductor(d: float, th: ThermalState, tol: float = 1e-8,
                          n_cap: int = 10_000_000) -> float:
    r"""Surface force per area, -(2/(pi beta)) sum'_n int q^2 e^{-2qd}/(1 - e^{-2qd}) dq."""
    res = _plate_sum(d, th, tol, lambda zeta, q: q * q / np.expm1(2.0 * q * d), n_cap)
    return -2.0 * res.value / (math.pi * th.beta)


def plate_reflection_products(eps, zeta, q):
    """TM and TE products A_n, B_n at imaginary frequency zeta and wave number q >= zeta.

    ``eps`` is eps(i zeta); infinite eps gives A = B = 1.
    """
    eps = np.asarray(eps, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.all(np.isinf(eps)):
        one = np.ones(np.broadcast(eps, zeta, q).shape)
        return one, one
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = np.sqrt(1.0 + (eps - 1.0) * np.where(q > 0, (zeta / q) ** 2, 0.0))
    a_n = ((eps - kappa) / (eps + kappa)) ** 2
    b_n = ((1.0 - kappa) / (1.0 + kappa)) ** 2
    return a_n, b_n


def lifshitz_plate_free_energy(d: float, pm: PermittivityModel, th: ThermalState,
                               tol: float = 1e-8, n_cap: int = 10_000_000) -> float:
    r"""Per-area beta F for dielectric half-spaces,

    (1/4 pi) sum_{n in Z} int_{zeta_n}^inf [ln(1 - A_n e^{-2qd}) + ln(1 - B_n e^{-2qd})] q dq.

    The conductor model uses A_n = B_n = 1 for every n, including n = 0.
    """
    if not pm.is_conductor and pm.epsilon0 == 1.0:
        return 0.0

    def integrand(zeta, q):
        eps = pm(zeta)
        a_n, b_n = plate_reflection_products(eps, zeta, q)
        decay = np.exp(-2.0 * q * d)
        return q * (np.log1p(-a_n * decay) + np.log1p(-b_n * decay))

    res = _plate_sum(d, th, tol, integrand, n_cap)
    # the two-sided sum is twice the primed one-sided sum
    return 2.0 * res.value / (4.0 * math.pi)
