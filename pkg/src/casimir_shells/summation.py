"""Truncation control for the angular-momentum and Matsubara sums."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .model import NonConvergence, SeriesResult

__all__ = ["geometric_tail", "sum_over_l", "matsubara_sum"]


def geometric_tail(last: float, previous: float) -> float:
    """Tail estimate from the last two terms of an eventually geometric series.

    Returns inf when the terms are not yet decreasing.
    """
    if last == 0.0:
        return 0.0
    if previous == 0.0:
        return math.inf
    rho = last / previous
    if not 0.0 <= rho < 1.0:
        return math.inf
    return abs(last) * rho / (1.0 - rho)


def _first_converged(t: np.ndarray, tol: float) -> np.ndarray:
    """Per column, the number of leading rows after which the tail test first passes."""
    part = np.cumsum(t, axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = t[1:] / t[:-1]
        tail = np.abs(t[1:]) * rho / (1.0 - rho)
        ok = (t[1:] == 0.0) | ((rho >= 0) & (rho < 1) & (tail <= tol * np.abs(part[1:])))
    first = np.argmax(ok, axis=0) + 2
    first[~ok.any(axis=0)] = t.shape[0]
    return first


def sum_over_l(terms: Callable[[int], np.ndarray], tol: float, l_guess: int, l_cap: int):
    """Sum ``terms(lmax)`` (rows l = 1..lmax, one column per argument) over l.

    ``lmax`` starts at ``l_guess`` and doubles until, for every column, the
    geometric tail estimated from the last two rows is below ``tol`` times the
    column sum. Rows beyond a column's own cutoff are still summed; they only
    add accuracy.

    Returns ``(column_sums, lmax, worst_relative_tail, l_needed)`` where
    ``l_needed[i]`` is the smallest l at which column i already passed.
    """
    lmax = max(4, min(int(l_guess), l_cap))
    while True:
        t = terms(lmax)
        sums = t.sum(axis=0)
        last, prev = t[-1], t[-2]
        with np.errstate(divide="ignore", invalid="ignore"):
            rho = np.where(prev != 0.0, last / prev, np.inf)
            tail = np.where(last == 0.0, 0.0,
                            np.where((rho >= 0) & (rho < 1), np.abs(last) * rho / (1.0 - rho), np.inf))
            rel = np.where(tail == 0.0, 0.0, tail / np.abs(sums))
        worst = float(rel.max()) if rel.size else 0.0
        if worst <= tol:
            return sums, lmax, worst, _first_converged(t, tol)
        if lmax >= l_cap:
            raise NonConvergence(
                f"l-sum not converged at l_max={l_cap} (relative tail {worst:.3e} > {tol:.1e})",
                which="l", cap=l_cap)
        lmax = min(2 * lmax, l_cap)


def matsubara_sum(block: Callable[[np.ndarray], tuple], n0_value: float,
                  tol: float, n_cap: int, patience: int = 3, first_block: int = 16,
                  max_block: int = 1024, n0_l_terms: int = 0) -> SeriesResult:
    """Sum ``n0_value + sum_{n>=1} term(n)``.

    ``block(n)`` returns the fully weighted terms for the indices ``n``, the l
    cutoff it used and the per-index l counts. The sum stops once ``patience``
    consecutive terms are each below ``tol`` times the running total *and* the
    geometric tail estimated from the last two terms is below ``tol`` times the
    running total. ``n_terms`` counts n = 0 as well; ``extra["lm_terms"]`` is
    the number of (l, n) terms the tolerance required.
    """
    terms: list[float] = [float(n0_value)]
    lm_terms = int(n0_l_terms)
    running = float(n0_value)
    streak = 0
    l_used = 0
    n_next = 1
    size = first_block
    while True:
        if n_next > n_cap:
            raise NonConvergence(
                f"Matsubara sum not converged within n_max={n_cap}", which="n", cap=n_cap)
        idx = np.arange(n_next, min(n_next + size, n_cap + 1))
        vals, lmax, l_counts = block(idx)
        l_used = max(l_used, lmax)
        for v, lc in zip(vals.tolist(), np.asarray(l_counts).tolist()):
            terms.append(v)
            lm_terms += int(lc)
            running += v
            if abs(v) <= tol * abs(running):
                streak += 1
                if streak >= patience:
                    tail = geometric_tail(v, terms[-2]) if len(terms) > 2 else 0.0
                    if v == 0.0 or tail <= tol * abs(running):
                        value = math.fsum(terms)
                        return SeriesResult(value, l_used, len(terms), tail, tol,
                                            {"lm_terms": lm_terms})
            else:
                streak = 0
        n_next = int(idx[-1]) + 1
        size = min(2 * size, max_block)
