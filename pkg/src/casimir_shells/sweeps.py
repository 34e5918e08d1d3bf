"""Parameter sweeps over (d/a, t) and CSV emission.

Every row is an independent job. Rows are always written sorted by
``(method, t, d/a)`` so the file does not depend on completion order.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .asymptotics import (
    lifshitz_plate_free_energy,
    narrow_slit_energy_T0,
    narrow_slit_free_energy,
    plate_energy_T0,
    plate_free_energy_conductor,
)
from .conductor import conductor_energy_T0, conductor_free_energy, n0_term
from .dynamic import mutual_free_energy
from .model import Geometry, NonConvergence, PermittivityModel, ThermalState
from .static import static_free_energy

__all__ = [
    "METHODS",
    "CSV_COLUMNS",
    "SCHEMA_VERSION",
    "RunConfig",
    "SweepRow",
    "compute_row",
    "run_sweep",
    "rows_to_csv",
    "fig1_config",
    "fig2_config",
    "fig3_config",
    "shoulder_from_rows",
]

log = logging.getLogger("casimir_shells")

METHODS = ("static", "dynamic", "conductor", "narrow-slit", "plates", "lifshitz")
# methods with a dedicated zero-temperature path
_T0_METHODS = ("conductor", "narrow-slit", "plates")
SCHEMA_VERSION = 1
CSV_COLUMNS = ("method", "d_over_a", "t", "beta_F", "lg_neg_betaF", "lg_neg_betaF_t",
               "l_terms", "n_terms", "wall_time", "status")


@dataclass(frozen=True)
class RunConfig:
    """Sweep settings; the inner radius a is 1 so every length is in units of a."""

    gap_ratios: tuple = (0.1,)
    temperatures: tuple = (1.0,)
    model: PermittivityModel = field(default_factory=PermittivityModel.conductor)
    tol: float = 1e-6
    l_cap: int = 20_000
    n_cap: int = 5_000_000
    method: str = "conductor"
    out: str | None = None
    workers: int = 1
    n0_convention: str = "static"
    reproducible: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        if not self.gap_ratios or any(not (r > 0 and math.isfinite(r)) for r in self.gap_ratios):
            raise ValueError("every gap ratio d/a must be finite and > 0")
        if not self.temperatures or any(not (t >= 0 and math.isfinite(t)) for t in self.temperatures):
            raise ValueError("every temperature t must be finite and >= 0")
        if not 0 < self.tol <= 1e-2:
            raise ValueError("tol must lie in (0, 1e-2]")
        if self.l_cap < 4 or self.n_cap < 1:
            raise ValueError("l and n caps must be positive (lmax >= 4)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.method not in _T0_METHODS and self.method != "static" and 0.0 in self.temperatures:
            raise ValueError(f"method {self.method!r} has no t = 0 path")


@dataclass(frozen=True)
class SweepRow:
    method: str
    d_over_a: float
    t: float
    beta_F: float
    lg_neg_betaF: float
    lg_neg_betaF_t: float
    l_terms: int
    n_terms: int
    wall_time: float
    status: str = "ok"

    def sort_key(self):
        return (self.method, self.t, self.d_over_a)


def _lg_neg(x: float) -> float:
    if math.isnan(x):
        return math.nan
    return math.log10(-x) if x < 0 else -math.inf


def _evaluate(cfg: RunConfig, d_over_a: float, t: float):
    """Return (beta_F, beta_F * t, l_terms, n_terms) for one grid point."""
    g = Geometry.from_gap_ratio(d_over_a)
    m, tol = cfg.method, cfg.tol
    if t == 0.0 and m != "static":
        # beta F diverges; beta F t = 2 pi a E stays finite
        if m == "conductor":
            res = conductor_energy_T0(g, tol, cfg.l_cap)
            energy, lt = res.value, res.l_terms
        elif m == "narrow-slit":
            energy, lt = narrow_slit_energy_T0(g, tol), 0
        else:
            energy, lt = plate_energy_T0(g.d) * g.area, 0
        return -math.inf, 2.0 * math.pi * g.a * energy, lt, 0
    th = ThermalState(t) if t > 0 else None
    if m == "static":
        res = static_free_energy(g, cfg.model.static(), min(tol, 1e-12))
        return res.value, res.value * t, res.l_terms, 1
    if m == "conductor":
        res = conductor_free_energy(g, th, tol, cfg.l_cap, cfg.n_cap)
    elif m == "dynamic":
        res = mutual_free_energy(g, cfg.model, th, tol, cfg.n0_convention, cfg.l_cap, cfg.n_cap)
    elif m == "narrow-slit":
        res = narrow_slit_free_energy(g, th, tol, cfg.n_cap)
    else:
        fn = plate_free_energy_conductor if m == "plates" else None
        val = (fn(g.d, th, tol, cfg.n_cap) if fn is not None
               else lifshitz_plate_free_energy(g.d, cfg.model, th, tol, cfg.n_cap))
        val *= g.area
        return val, val * t, 0, 0
    return res.value, res.value * t, res.l_terms, res.n_terms


def compute_row(cfg: RunConfig, d_over_a: float, t: float) -> SweepRow:
    """Evaluate one grid point; non-convergence is recorded in the row, not raised."""
    start = time.perf_counter()
    try:
        bf, bft, lt, nt = _evaluate(cfg, d_over_a, t)
        status = "ok"
    except NonConvergence as exc:
        bf = bft = math.nan
        lt = exc.cap if exc.which == "l" and exc.cap else 0
        nt = exc.cap if exc.which == "n" and exc.cap else 0
        status = f"nonconvergence:{exc.which}"
    wall = 0.0 if cfg.reproducible else time.perf_counter() - start
    row = SweepRow(cfg.method, float(d_over_a), float(t), bf, _lg_neg(bf), _lg_neg(bft),
                   int(lt), int(nt), wall, status)
    log.info("%s d/a=%g t=%g beta_F=%.6g l=%d n=%d %.3fs %s", row.method, row.d_over_a, row.t,
             row.beta_F, row.l_terms, row.n_terms, time.perf_counter() - start, row.status)
    return row


def _job(args):
    return compute_row(*args)


def run_sweep(cfg: RunConfig) -> list[SweepRow]:
    """All rows of the (d/a, t) grid, sorted by (method, t, d/a)."""
    jobs = [(cfg, float(r), float(t)) for t in cfg.temperatures for r in cfg.gap_ratios]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, len(jobs))) as pool:
            rows = list(pool.map(_job, jobs))
    else:
        rows = [_job(j) for j in jobs]
    return sorted(rows, key=SweepRow.sort_key)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.12g}"


def rows_to_csv(rows) -> str:
    """Header plus one line per row, 12 significant digits, '\\n' line endings."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


_FIG_GAPS = (0.05, 0.075, 0.1, 0.15, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0)


def fig1_config(**kw) -> RunConfig:
    """lg(-beta F t) against d/a, low and moderate temperatures, conductor walls."""
    base = dict(gap_ratios=_FIG_GAPS, temperatures=(0.0, 0.5, 1.0, 2.0, 5.0, 10.0), method="conductor")
    base.update(kw)
    return RunConfig(**base)


def fig2_config(**kw) -> RunConfig:
    """lg(-beta F) against d/a at high temperatures."""
    base = dict(gap_ratios=_FIG_GAPS, temperatures=(20.0, 50.0, 100.0, 200.0), method="conductor")
    base.update(kw)
    return RunConfig(**base)


def fig3_config(**kw) -> RunConfig:
    """lg(-beta F t) against lg t for three narrow gaps."""
    temps = (0.0, 0.1, 0.3, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0, 50.0, 100.0, 200.0, 500.0, 1000.0)
    base = dict(gap_ratios=(0.05, 0.075, 0.1), temperatures=temps, method="conductor")
    base.update(kw)
    return RunConfig(**base)


def shoulder_from_rows(rows, d_over_a: float) -> dict:
    """Plateau level, high-t intercept and their crossing for one gap ratio.

    The plateau is the t = 0 value of lg(-beta F t) (or the lowest t present).
    The high-t asymptote is the slope-1 line through the classical n = 0 term,
    whose lg(-beta F) is the intercept at lg t = 0.
    """
    sel = sorted((r for r in rows if r.d_over_a == d_over_a and r.status == "ok"), key=lambda r: r.t)
    if not sel:
        raise ValueError(f"no converged rows for d/a={d_over_a}")
    plateau = sel[0].lg_neg_betaF_t
    intercept = math.log10(-n0_term(Geometry.from_gap_ratio(d_over_a)))
    hot = [r for r in sel if r.t >= 50.0]
    slope = math.nan
    if len(hot) >= 2:
        xs = [math.log10(r.t) for r in hot]
        ys = [r.lg_neg_betaF_t for r in hot]
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    lg_t = plateau - intercept
    return {"d_over_a": d_over_a, "plateau": plateau, "intercept": intercept,
            "lg_t_shoulder": lg_t, "t_shoulder": 10.0**lg_t, "high_t_slope": slope}


def with_overrides(cfg: RunConfig, **kw) -> RunConfig:
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None})
