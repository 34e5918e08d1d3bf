r"""Modified Riccati-Bessel functions on the positive real axis.

The two radial solutions used throughout the package are

.. math::
    s_l(x) = \sqrt{\pi x/2}\, I_{l+1/2}(x), \qquad
    e_l(x) = \sqrt{2x/\pi}\, K_{l+1/2}(x),

with Wronskian :math:`s_l e_l' - s_l' e_l = -1`. Both functions are
positive for :math:`x > 0`; :math:`s_l` grows like :math:`e^x/2` and
:math:`e_l` decays like :math:`e^{-x}`, so every evaluation is carried as a
logarithm plus a logarithmic derivative.

Evaluation uses only three-term recurrences seeded by the closed forms of
order 0 and -1:

* ``e_l`` by upward recurrence of ``q_l = e_l / e_{l-1}`` (dominant, stable);
* ``s_l`` by downward recurrence of ``p_l = s_{l-1} / s_l`` started well
  above the requested order (Miller-type; the start height grows with
  ``sqrt(x)`` so the starting guess is damped below roundoff), then
  anchored at ``s_0 = sinh x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

__all__ = [
    "ScaledRiccati",
    "RiccatiTable",
    "DebyeParams",
    "riccati_table",
    "s_table",
    "e_table",
    "riccati_s",
    "riccati_e",
    "wronskian_defect",
    "small_arg_s",
    "small_arg_e",
    "debye_phi",
    "debye_phi_uniform",
    "debye_ratio",
]

# damping exponent for the downward recurrence start height, see _start_height
_MILLER_DAMPING = 80.0
_MILLER_PAD = 20


def _exp(v: float) -> float:
    return math.exp(v) if v < 709.0 else math.inf


@dataclass(frozen=True)
class ScaledRiccati:
    """Value and derivative of a Riccati-Bessel function in scaled form.

    The represented value is ``mantissa * exp(log_scale)`` and the derivative
    is ``d_mantissa * exp(log_scale)``. ``1 <= mantissa < e``.
    """

    mantissa: float
    log_scale: float
    d_mantissa: float

    @classmethod
    def from_log(cls, log_value: float, log_derivative: float) -> "ScaledRiccati":
        scale = math.floor(log_value)
        mantissa = math.exp(log_value - scale)
        return cls(mantissa, float(scale), mantissa * log_derivative)

    @property
    def log_value(self) -> float:
        return math.log(self.mantissa) + self.log_scale

    @property
    def log_derivative(self) -> float:
        return self.d_mantissa / self.mantissa

    @property
    def value(self) -> float:
        """Unscaled value; may overflow to inf or underflow to 0."""
        return self.mantissa * _exp(self.log_scale)

    @property
    def derivative(self) -> float:
        return self.d_mantissa * _exp(self.log_scale)


class RiccatiTable(NamedTuple):
    """Tables indexed ``[l, i]`` for ``l = 0..lmax`` and arguments ``x[i]``.

    ``log_s``/``log_e`` are natural logarithms of the functions and
    ``dlog_s``/``dlog_e`` their logarithmic derivatives ``s_l'/s_l`` and
    ``e_l'/e_l`` with respect to the argument.
    """

    log_s: np.ndarray
    dlog_s: np.ndarray
    log_e: np.ndarray
    dlog_e: np.ndarray


def _as_args(x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        raise ValueError("arguments must be a scalar or a 1-D array")
    if not np.all(np.isfinite(x)):
        raise ValueError("Riccati-Bessel arguments must be finite")
    if np.any(x <= 0.0):
        raise ValueError("Riccati-Bessel arguments must be > 0; use small_arg_s/small_arg_e at x = 0")
    return x


def _start_height(lmax: int, xmax: float) -> int:
    # error in the starting ratio is damped by roughly exp(-(L^2 - l^2)/x)
    return int(math.ceil(math.sqrt((lmax + 1.0) ** 2 + _MILLER_DAMPING * xmax))) + _MILLER_PAD


def _log_sinh(x: np.ndarray) -> np.ndarray:
    return x + np.log(-np.expm1(-2.0 * x)) - math.log(2.0)


def _s_ratios(x: np.ndarray, lmax: int) -> np.ndarray:
    """``p[l] = s_{l-1}(x)/s_l(x)`` for ``l = 0..lmax`` (so ``p[0] = coth x``)."""
    top = _start_height(lmax, float(x.max()))
    inv_x = 1.0 / x
    nu = top + 0.5
    p = (nu + np.sqrt(nu * nu + x * x)) * inv_x
    out = np.empty((lmax + 1, x.size))
    for l in range(top - 1, -1, -1):
        p = (2 * l + 1) * inv_x + 1.0 / p
        if l <= lmax:
            out[l] = p
    return out


def _e_ratios(x: np.ndarray, lmax: int) -> np.ndarray:
    """``q[l] = e_l(x)/e_{l-1}(x)`` for ``l = 0..lmax`` (so ``q[0] = 1``)."""
    inv_x = 1.0 / x
    out = np.empty((lmax + 1, x.size))
    q = np.ones_like(x)
    out[0] = q
    for l in range(lmax):
        q = 1.0 / q + (2 * l + 1) * inv_x
        out[l + 1] = q
    return out


def s_table(x, lmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(log s_l(x), s_l'(x)/s_l(x))`` for ``l = 0..lmax``."""
    x = _as_args(x)
    p = _s_ratios(x, lmax)
    log_s = np.empty_like(p)
    log_s[0] = _log_sinh(x)
    if lmax > 0:
        log_s[1:] = log_s[0] - np.cumsum(np.log(p[1:]), axis=0)
    ell = np.arange(lmax + 1)[:, None]
    return log_s, p - ell / x


def e_table(x, lmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(log e_l(x), e_l'(x)/e_l(x))`` for ``l = 0..lmax``."""
    x = _as_args(x)
    q = _e_ratios(x, lmax)
    log_e = np.empty_like(q)
    log_e[0] = -x
    if lmax > 0:
        log_e[1:] = -x + np.cumsum(np.log(q[1:]), axis=0)
    ell = np.arange(lmax + 1)[:, None]
    return log_e, -1.0 / q - ell / x


def riccati_table(x, lmax: int) -> RiccatiTable:
    """Logarithms and logarithmic derivatives of ``s_l``, ``e_l`` on a grid.

    Parameters
    ----------
    x : float or array_like
        positive, finite arguments
    lmax : int
        highest order; rows ``0..lmax`` are returned

    Returns
    -------
    RiccatiTable
        arrays of shape ``(lmax + 1, len(x))``
    """
    if lmax < 0:
        raise ValueError("lmax must be >= 0")
    log_s, dlog_s = s_table(x, lmax)
    log_e, dlog_e = e_table(x, lmax)
    return RiccatiTable(log_s, dlog_s, log_e, dlog_e)


def _check_order(l: int) -> int:
    if int(l) != l or l < 0:
        raise ValueError("order l must be a non-negative integer")
    return int(l)


def riccati_s(l: int, x: float) -> ScaledRiccati:
    """``s_l(x)`` and ``s_l'(x)`` in scaled form.

    Examples
    --------
    >>> round(riccati_s(0, 1.0).value, 7)
    1.1752012
    """
    l = _check_order(l)
    log_s, dlog_s = s_table(x, l)
    return ScaledRiccati.from_log(float(log_s[l, 0]), float(dlog_s[l, 0]))


def riccati_e(l: int, x: float) -> ScaledRiccati:
    """``e_l(x)`` and ``e_l'(x)`` in scaled form."""
    l = _check_order(l)
    log_e, dlog_e = e_table(x, l)
    return ScaledRiccati.from_log(float(log_e[l, 0]), float(dlog_e[l, 0]))


def wronskian_defect(l: int, x: float) -> float:
    """``s_l e_l' - s_l' e_l + 1``, which vanishes identically.

    The product ``s_l e_l`` is accumulated directly from the ratio
    recurrences, so no large exponents cancel.
    """
    l = _check_order(l)
    xs = _as_args(x)
    p = _s_ratios(xs, l)
    q = _e_ratios(xs, l)
    log_se = float(np.log(-np.expm1(-2.0 * xs[0])) - math.log(2.0))
    log_se += math.fsum(np.log(q[1:, 0] / p[1:, 0]))
    s_log_der = p[l, 0] - l / xs[0]
    e_log_der = -1.0 / q[l, 0] - l / xs[0]
    return math.exp(log_se) * (e_log_der - s_log_der) + 1.0


def small_arg_s(l: int, x):
    r"""Leading small-argument form :math:`\sqrt\pi/\Gamma(\nu+1)\,(x/2)^{\nu+1/2}`.

    Relative error is about ``(x/2)**2 / (nu + 1)``.
    """
    l = _check_order(l)
    nu = l + 0.5
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.exp(0.5 * math.log(math.pi) - gammaln(nu + 1.0) + (nu + 0.5) * np.log(x / 2.0))
    return out[()] if out.ndim == 0 else out


def small_arg_e(l: int, x):
    r"""Leading small-argument form :math:`\Gamma(\nu)/\sqrt\pi\,(x/2)^{-\nu+1/2}`.

    Relative error is about ``(x/2)**2 / (nu - 1)`` for ``l >= 2``; it is
    of order ``x`` for ``l = 0, 1``.
    """
    l = _check_order(l)
    nu = l + 0.5
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.exp(gammaln(nu) - 0.5 * math.log(math.pi) + (0.5 - nu) * np.log(x / 2.0))
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class DebyeParams:
    """Narrow-gap uniform-asymptotic parameters.

    xi is the relative gap (b - a)/a, z = x/nu the scaled argument and nu = l + 1/2.
    """

    xi: float
    z: float
    nu: float

    def __post_init__(self):
        if not self.xi > 0:
            raise ValueError("xi must be > 0")
        if not self.z >= 0:
            raise ValueError("z must be >= 0")
        if not self.nu >= 1.5:
            raise ValueError("nu must be >= 3/2")

    @classmethod
    def from_order(cls, xi: float, l: int, x: float) -> "DebyeParams":
        nu = l + 0.5
        return cls(xi, x / nu, nu)


def debye_phi(p: DebyeParams, second_order: bool = False) -> float:
    """Exponent rate phi such that the mode ratios are about ``exp(-nu*phi)``.

    ``second_order`` includes the ``-xi/(2(1+z^2))`` curvature correction.
    """
    w = 1.0 + p.z * p.z
    phi = 2.0 * p.xi * math.sqrt(w)
    if second_order:
        phi *= 1.0 - 0.5 * p.xi / w
    return phi


def debye_phi_uniform(p: DebyeParams) -> float:
    """Full uniform-asymptotic rate 2[eta((1+xi) z) - eta(z)].

    eta(z) = sqrt(1+z^2) + ln(z/(1+sqrt(1+z^2))). Expanding in xi gives
    :func:`debye_phi`; unlike the truncated forms, the ratio error of this
    one falls like 1/nu at fixed xi and z.
    """
    z1, z2 = p.z, (1.0 + p.xi) * p.z
    w1, w2 = math.sqrt(1.0 + z1 * z1), math.sqrt(1.0 + z2 * z2)
    # w2 - w1 written without cancellation
    dw = (z2 - z1) * (z2 + z1) / (w2 + w1)
    return 2.0 * (dw + math.log1p(p.xi) + math.log((1.0 + w1) / (1.0 + w2)))


def debye_ratio(p: DebyeParams, second_order: bool = False, uniform: bool = False) -> float:
    """exp(-nu phi); ``uniform`` selects the untruncated rate."""
    phi = debye_phi_uniform(p) if uniform else debye_phi(p, second_order)
    return math.exp(-p.nu * phi)
