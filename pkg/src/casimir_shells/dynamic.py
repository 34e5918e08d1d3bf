r"""Finite-temperature mutual free energy for dielectric concentric spheres.

For each Matsubara frequency zeta and angular momentum l there is one TM and
one TE mode eigenvalue built from the Riccati-Bessel functions at

* ``x = zeta a``, ``y = zeta b`` in the vacuum gap, and
* ``x_eps = sqrt(eps) zeta a``, ``y_eps = sqrt(eps) zeta b`` inside the media.

Radial derivatives are wavenumber times argument derivative; after dividing
every bracket by ``zeta * s * e`` only logarithmic derivatives remain:

.. math::
    \lambda_{TM} = R\,\frac{(\sqrt\varepsilon S_x - S_{x\varepsilon})
                          (\sqrt\varepsilon E_y - E_{y\varepsilon})}
                         {(\sqrt\varepsilon E_x - S_{x\varepsilon})
                          (\sqrt\varepsilon S_y - E_{y\varepsilon})},\qquad
    \lambda_{TE} = R\,\frac{(S_x - \sqrt\varepsilon S_{x\varepsilon})
                          (E_y - \sqrt\varepsilon E_{y\varepsilon})}
                         {(E_x - \sqrt\varepsilon S_{x\varepsilon})
                          (S_y - \sqrt\varepsilon E_{y\varepsilon})},

where ``S = s'/s``, ``E = e'/e`` and ``R = s_l(x) e_l(y) / (e_l(x) s_l(y))``.
The inner-medium functions enter only through their logarithmic derivatives.
"""
from __future__ import annotations

import math

import numpy as np

from .model import Geometry, PermittivityModel, SeriesResult, ThermalState
from .special_functions import e_table, s_table
from .static import static_free_energy
from .summation import matsubara_sum, sum_over_l

__all__ = [
    "mode_eigenvalues",
    "tm_eigenvalue",
    "te_eigenvalue",
    "mutual_free_energy",
    "casimir_force",
    "L_CAP",
    "N_CAP",
]

L_CAP = 5000
N_CAP = 5_000_000
_N0_CONVENTIONS = ("static", "conductor")


def _log_gap_ratio(g: Geometry, zeta: np.ndarray, lmax: int):
    x, y = zeta * g.a, zeta * g.b
    log_sx, sx = s_table(x, lmax)
    log_ex, ex = e_table(x, lmax)
    log_sy, sy = s_table(y, lmax)
    log_ey, ey = e_table(y, lmax)
    log_r = (log_sx - log_sy + log_ey - log_ex)[1:]
    return log_r, sx[1:], ex[1:], sy[1:], ey[1:]


def mode_eigenvalues(g: Geometry, eps, zeta, lmax: int):
    """TM and TE eigenvalues for l = 1..lmax at imaginary frequencies ``zeta``.

    ``eps`` is a scalar or one value per frequency; ``math.inf`` selects the
    perfect-conductor limit. Returns two arrays of shape ``(lmax, len(zeta))``.
    """
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    if np.any(zeta <= 0):
        raise ValueError("zeta must be > 0; the n = 0 term is handled analytically")
    eps = np.broadcast_to(np.asarray(eps, dtype=float), zeta.shape)
    if np.any(eps <= 1.0):
        raise ValueError("eps must be > 1 for the TM/TE eigenvalues")
    log_r, sx, ex, sy, ey = _log_gap_ratio(g, zeta, lmax)
    with np.errstate(under="ignore"):
        r = np.exp(log_r)
    conductor = np.isinf(eps)
    lam_tm = np.empty_like(r)
    lam_te = np.empty_like(r)
    if conductor.any():
        c = conductor
        lam_tm[:, c] = r[:, c] * (sx[:, c] * ey[:, c]) / (ex[:, c] * sy[:, c])
        lam_te[:, c] = r[:, c]
    d = ~conductor
    if d.any():
        root = np.sqrt(eps[d])
        _, sxe = s_table(root * zeta[d] * g.a, lmax)
        _, eye = e_table(root * zeta[d] * g.b, lmax)
        sxe, eye = sxe[1:], eye[1:]
        sx_, ex_, sy_, ey_ = sx[:, d], ex[:, d], sy[:, d], ey[:, d]
        lam_tm[:, d] = r[:, d] * ((root * sx_ - sxe) * (root * ey_ - eye)
                                  / ((root * ex_ - sxe) * (root * sy_ - eye)))
        lam_te[:, d] = r[:, d] * ((sx_ - root * sxe) * (ey_ - root * eye)
                                  / ((ex_ - root * sxe) * (sy_ - root * eye)))
    return lam_tm, lam_te


def _single(g: Geometry, eps: float, zeta: float, l: int, which: int) -> float:
    if l < 1:
        raise ValueError("l must be >= 1")
    if not (eps > 1.0):
        raise ValueError("eps must be > 1; eps = 1 gives zero coupling")
    return float(mode_eigenvalues(g, eps, [zeta], l)[which][l - 1, 0])


def tm_eigenvalue(g: Geometry, eps: float, zeta: float, l: int) -> float:
    """TM mode eigenvalue at imaginary frequency ``zeta > 0``."""
    return _single(g, eps, zeta, l, 0)


def te_eigenvalue(g: Geometry, eps: float, zeta: float, l: int) -> float:
    """TE mode eigenvalue at imaginary frequency ``zeta > 0``."""
    return _single(g, eps, zeta, l, 1)


def l_guess(g: Geometry, zeta_max: float, tol: float) -> int:
    """Starting angular cutoff: terms fall roughly like exp(-2 ln(b/a) sqrt(nu^2 + (zeta a)^2))."""
    depth = math.log(1.0 / tol) + 3.0
    rate = math.log(g.b / g.a)
    return int(8 + depth / (2 * rate) + math.sqrt(depth * zeta_max * g.a / rate))


def _n0_value(g: Geometry, pm: PermittivityModel, tol: float, n0_convention: str) -> float:
    if n0_convention not in _N0_CONVENTIONS:
        raise ValueError(f"n0_convention must be one of {_N0_CONVENTIONS}")
    eps0 = pm.static()
    value = static_free_energy(g, eps0, tol).value if eps0 != 1.0 else 0.0
    if n0_convention == "conductor":
        # epsilon -> infinity before omega -> 0: the TE branch keeps sigma_l
        value += static_free_energy(g, math.inf, tol).value
    return value


def mutual_free_energy(g: Geometry, pm: PermittivityModel, th: ThermalState, tol: float = 1e-6,
                       n0_convention: str = "static", l_cap: int = L_CAP,
                       n_cap: int = N_CAP) -> SeriesResult:
    """beta F summed over all Matsubara frequencies and both polarisations.

    The two-sided frequency sum is folded to the n = 0 term plus twice the
    n >= 1 terms. ``n0_convention`` selects the zero-frequency TE eigenvalue:
    ``"static"`` (frequency to zero first, TE = 0) or ``"conductor"``
    (permittivity to infinity first, TE = sigma_l), which is the convention of
    the perfect-conductor free energy.
    """
    if th.t <= 0:
        raise ValueError("mutual_free_energy needs t > 0")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    n0 = _n0_value(g, pm, tol * 1e-3, n0_convention)
    if pm.epsilon0 == 1.0 and not pm.is_conductor:
        return SeriesResult(n0, 0, 1, 0.0, tol)

    def block(n):
        zeta = th.zeta(n)
        eps = pm(zeta)

        def terms(lmax):
            tm, te = mode_eigenvalues(g, eps, zeta, lmax)
            w = (2.0 * np.arange(1, lmax + 1) + 1.0)[:, None]
            return w * (np.log1p(-tm) + np.log1p(-te))

        sums, lmax, _, counts = sum_over_l(terms, tol, l_guess(g, float(zeta[-1]), tol), l_cap)
        return sums, lmax, counts

    res = matsubara_sum(block, n0, tol, n_cap)
    res.extra.update(n0=n0, n0_convention=n0_convention)
    return res


def casimir_force(g: Geometry, pm: PermittivityModel, th: ThermalState, tol: float = 1e-6,
                  n0_convention: str = "static", rel_step: float = 1e-3) -> float:
    """Surface force per unit area on r = b, f = -1/(4 pi b^2) dF/db.

    Central differences in b with one Richardson extrapolation; negative
    values are attractive.
    """
    inner_tol = max(min(tol, 1e-6) * 1e-5, 1e-14)
    h = rel_step * g.d

    def energy(b):
        return mutual_free_energy(g.with_b(b), pm, th, inner_tol, n0_convention).value

    def central(step):
        return (energy(g.b + step) - energy(g.b - step)) / (2.0 * step)

    d1, d2 = central(h), central(h / 2)
    dbeta_f = (4.0 * d2 - d1) / 3.0
    return -dbeta_f / (4.0 * math.pi * g.b**2 * th.beta)
