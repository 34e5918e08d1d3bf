"""Golden values and limit identities, evaluated as a pass/fail report."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as sp_integrate

from .asymptotics import high_T_slit_closed_form, plate_energy_T0
from .conductor import conductor_energy_T0, conductor_free_energy, n0_term
from .dynamic import mode_eigenvalues, mutual_free_energy
from .model import Geometry, PermittivityModel, ThermalState
from .special_functions import wronskian_defect
from .static import dilute_overlap_series, static_coupling, static_free_energy

__all__ = ["Check", "run_checks", "overlap_integral_quadrature", "fig3_shoulder", "CHECKS"]


@dataclass
class Check:
    name: str
    computed: float
    expected: str
    tolerance: str
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: computed={self.computed:.10g} expected={self.expected} tol={self.tolerance}"


def overlap_integral_quadrature(ratio: float, rtol: float = 1e-11) -> float:
    """Pair-overlap integral over r1 < a, r2 > b with a = ratio, b = 1, by 2-D quadrature.

    The angular integrals are done in closed form,
    int dOmega1 dOmega2 |r1 - r2|^-6 = 2 pi^2 [(r2-r1)^-4 - (r2+r1)^-4] / (r1 r2).
    The outer radius is mapped to u = b/r2 in (0, 1].
    """
    a = ratio

    def f(r1, u):
        r2 = 1.0 / u
        ang = 2.0 * math.pi**2 * ((r2 - r1) ** -4 - (r2 + r1) ** -4) / (r1 * r2)
        return r1 * r1 * r2 * r2 * ang * r2 * r2  # dr2 = du r2^2

    val, _ = sp_integrate.dblquad(f, 0.0, 1.0, 0.0, a, epsabs=0.0, epsrel=rtol)
    return val


def fig3_shoulder(d_over_a: float, tol: float = 1e-6) -> float:
    """Temperature where the low-t plateau meets the slope-1 high-t asymptote."""
    g = Geometry.from_gap_ratio(d_over_a)
    plateau = 2.0 * math.pi * g.a * conductor_energy_T0(g, tol).value
    classical = n0_term(g)
    return plateau / classical


def _rel(x: float, y: float) -> float:
    return abs(x - y) / abs(y)


def _golden_value(tol, sigma_scale):
    v = conductor_free_energy(Geometry.from_gap_ratio(0.05), ThermalState(200.0), tol).value
    return [Check("golden beta F (t=200, d/a=0.05)", v, "-249.7", "1%", _rel(v, -249.7) <= 0.01)]


def _high_t(tol, sigma_scale):
    g = Geometry.from_gap_ratio(0.05)
    v = conductor_free_energy(g, ThermalState(200.0), tol).value
    disc = _rel(v, high_T_slit_closed_form(g))
    return [Check("high-T closed-form discrepancy", disc, "0.04", "[0.03, 0.05]", 0.03 <= disc <= 0.05)]


def _factor_two(tol, sigma_scale):
    out = []
    for r in (0.1, 0.5, 0.9):
        g = Geometry(r, 1.0)
        lhs = n0_term(g)
        rhs = 2.0 * static_free_energy(g, math.inf, 1e-15, sigma_scale=sigma_scale).value
        err = _rel(lhs, rhs)
        out.append(Check(f"factor-2 identity a/b={r}", err, "0", "1e-12", err <= 1e-12))
    return out


def _static_limit(tol, sigma_scale):
    g = Geometry(0.5, 1.0)
    l = np.arange(1, 31)
    out = []
    for eps in (2.0, 10.0):
        tm, _ = mode_eigenvalues(g, eps, [1e-6], 30)
        ref = static_coupling(eps, l) * g.sigma(l)
        err = float(np.max(np.abs(tm[:, 0] - ref) / ref))
        out.append(Check(f"static TM limit eps={eps:g}", err, "0", "1e-5", err <= 1e-5))
        _, te = mode_eigenvalues(g, eps, [1e-3], 30)
        worst = float(np.max(te))
        out.append(Check(f"static TE limit eps={eps:g}", worst, "0", "1e-4", worst <= 1e-4))
    return out


def _cross_method(tol, sigma_scale):
    big = PermittivityModel.constant(1e8)
    worst = 0.0
    for t in (1.0, 10.0, 100.0):
        for da in (0.1, 0.5):
            g, th = Geometry.from_gap_ratio(da), ThermalState(t)
            dyn = mutual_free_energy(g, big, th, tol, n0_convention="conductor").value
            ref = conductor_free_energy(g, th, tol).value
            worst = max(worst, _rel(dyn, ref))
    return [Check("dielectric eps=1e8 vs conductor", worst, "0", "1e-3", worst <= 1e-3)]


def _plate_t0(tol, sigma_scale):
    devs = []
    for da in (0.01, 0.02, 0.05):
        g = Geometry.from_gap_ratio(da)
        per_area = conductor_energy_T0(g, tol).value / g.area
        devs.append(_rel(per_area, plate_energy_T0(g.d)))
    return [
        Check("plate T=0 energy d/a=0.01", devs[0], "-pi^2/(720 d^3)", "2%", devs[0] <= 0.02),
        Check("plate deviation grows with d/a (0.05)", devs[2], f"> {devs[1]:.3g} > {devs[0]:.3g}",
              "monotone", devs[2] > devs[1] > devs[0]),
    ]


def _wronskian(tol, sigma_scale):
    x = np.geomspace(1e-3, 50.0, 200)
    worst = max(float(np.max(np.abs(wronskian_defect(l, x)))) for l in range(81))
    return [Check("Wronskian s e' - s' e = -1", worst, "0", "1e-12", worst <= 1e-12)]


def _dilute(tol, sigma_scale):
    out = []
    for r in (0.2, 0.5, 0.8):
        g = Geometry(r, 1.0)
        series = dilute_overlap_series(g, 4000)
        quad = overlap_integral_quadrature(r)
        err = _rel(series, quad)
        out.append(Check(f"dilute overlap a/b={r}", err, "0", "1e-6", err <= 1e-6))
    return out


def _plateau(tol, sigma_scale):
    g = Geometry.from_gap_ratio(0.1)
    e0 = 2.0 * math.pi * g.a * conductor_energy_T0(g, tol).value
    # at t = 1, beta F t is beta F itself
    f1 = conductor_free_energy(g, ThermalState(1.0), tol).value
    diff = abs(math.log10(-f1) - math.log10(-e0))
    return [Check("low-T plateau d/a=0.1, t in {0, 1}", diff, "~1e-4", "1e-3", diff <= 1e-3)]


def _counts(tol, sigma_scale):
    out = []
    for da, ref in ((0.1, 415_000), (1.0, 8_900)):
        res = conductor_free_energy(Geometry.from_gap_ratio(da), ThermalState(0.01), tol)
        ratio = res.n_terms / ref
        out.append(Check(f"n-term count t=0.01 d/a={da:g}", res.n_terms, f"{ref}", "factor 4",
                         0.25 <= ratio <= 4.0))
    return out


def _shoulder(tol, sigma_scale):
    out = []
    for da in (0.05, 0.075, 0.1):
        ts = fig3_shoulder(da, tol)
        out.append(Check(f"fig3 shoulder d/a={da:g}", ts, f"[{1 / da:g}, {4 / da:g}]", "range",
                         1.0 / da <= ts <= 4.0 / da))
    return out


def _properties(tol, sigma_scale):
    worst_lo, worst_hi = math.inf, -math.inf
    for da in (0.01, 0.1, 1.0, 5.0):
        g = Geometry.from_gap_ratio(da)
        for eps in (1.001, 2.0, 80.0, 1e8, math.inf):
            tm, te = mode_eigenvalues(g, eps, np.geomspace(1e-4, 50.0, 12), 60)
            both = np.concatenate([tm.ravel(), te.ravel()])
            worst_lo, worst_hi = min(worst_lo, float(both.min())), max(worst_hi, float(both.max()))
    energies = [conductor_free_energy(Geometry.from_gap_ratio(da), ThermalState(1.0), tol).value
                for da in (0.5, 2.0, 8.0, 32.0)]
    decreasing = all(e < 0 for e in energies) and all(
        abs(x) > abs(y) for x, y in zip(energies, energies[1:])) and abs(energies[-1]) < 1e-3
    return [
        Check("eigenvalues inside (0, 1)", worst_hi, "(0, 1)", "strict", worst_lo > 0 and worst_hi < 1),
        Check("free energy negative and vanishing as b grows", energies[-1], "0-", "monotone", decreasing),
    ]


CHECKS: dict[str, Callable] = {
    "golden": _golden_value,
    "high_t": _high_t,
    "factor_two": _factor_two,
    "static_limit": _static_limit,
    "cross_method": _cross_method,
    "plate_t0": _plate_t0,
    "wronskian": _wronskian,
    "dilute": _dilute,
    "plateau": _plateau,
    "shoulder": _shoulder,
    "properties": _properties,
    "counts": _counts,
}
SLOW = {"counts"}


def run_checks(tol: float = 1e-6, sigma_scale: float = 1.0, include_slow: bool = False,
               only=None, report: Callable[[str], None] | None = None) -> list[Check]:
    """Run the checks in order; ``report`` receives one line per check as it finishes."""
    out: list[Check] = []
    for key, fn in CHECKS.items():
        if only is not None and key not in only:
            continue
        if key in SLOW and not include_slow:
            continue
        for c in fn(tol, sigma_scale):
            out.append(c)
            if report is not None:
                report(c.line())
    return out
