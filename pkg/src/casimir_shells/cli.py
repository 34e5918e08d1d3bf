"""Command-line front end.

Subcommands
-----------
fig1, fig2, fig3
    Sweeps behind the three standard plots, written as CSV.
point
    Any method on any (d/a, t) grid.
check
    Golden values and limit identities; exit status 4 if any fails.

Exit status: 0 success, 2 configuration error, 3 convergence failure,
4 golden-check failure.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys

from .golden import run_checks
from .model import PermittivityModel
from .sweeps import (
    METHODS,
    RunConfig,
    fig1_config,
    fig2_config,
    fig3_config,
    rows_to_csv,
    run_sweep,
    shoulder_from_rows,
)

EXIT_OK, EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_GOLDEN = 0, 2, 3, 4

log = logging.getLogger("casimir_shells")

# config-file keys and the parser that reads each one
_KEYS = {
    "gap_ratio": "list", "temperature": "list", "epsilon": "eps", "omega0": "float",
    "model": "str", "method": "str", "tol": "float", "lmax": "int", "nmax": "int",
    "out": "str", "workers": "int", "n0_convention": "str", "reproducible": "bool",
}


class ConfigError(ValueError):
    pass


def _eps(text: str) -> float:
    text = text.strip().lower()
    if text in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"epsilon must be a number or 'inf', got {text!r}") from None
    return v


def _float_list(text: str) -> tuple:
    text = text.strip().strip("[]")
    try:
        return tuple(float(p) for p in text.replace(";", ",").split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment, lists are comma separated."""
    out: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for num, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{num}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        kind = _KEYS.get(key)
        if kind is None:
            raise ConfigError(f"{path}:{num}: unknown key {key!r}")
        try:
            if kind == "list":
                out[key] = _float_list(value)
            elif kind == "eps":
                out[key] = _eps(value)
            elif kind == "float":
                out[key] = float(value)
            elif kind == "int":
                out[key] = int(float(value))
            elif kind == "bool":
                out[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                out[key] = value
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise ConfigError(f"{path}:{num}: {exc}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; command-line flags take precedence")
    common.add_argument("--gap-ratio", type=_float_list, help="d/a values, comma separated")
    common.add_argument("--temperature", type=_float_list, help="t = 2 pi a / beta values, comma separated")
    common.add_argument("--epsilon", type=_eps, help="static permittivity, a number or 'inf'")
    common.add_argument("--omega0", type=float, help="oscillator frequency for --model oscillator")
    common.add_argument("--model", choices=("constant", "oscillator", "conductor"))
    common.add_argument("--method", choices=METHODS)
    common.add_argument("--n0-convention", choices=("static", "conductor"),
                        help="zero-frequency TE treatment for the dielectric method")
    common.add_argument("--tol", type=float, help="relative truncation tolerance (default 1e-6)")
    common.add_argument("--lmax", type=int, help="angular-momentum cap")
    common.add_argument("--nmax", type=int, help="Matsubara index cap")
    common.add_argument("--out", help="CSV path (default: standard output)")
    common.add_argument("--workers", type=int, help="worker processes for sweep rows")
    common.add_argument("--reproducible", action="store_true", default=None,
                        help="write wall_time as 0 so repeated runs give identical bytes")
    common.add_argument("-q", "--quiet", action="store_true", help="no telemetry on standard error")
    common.add_argument("--perturb-sigma", type=float, default=1.0, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="casimir-shells",
                                     description="Casimir free energy between concentric spherical walls.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fig1", parents=[common], help="lg(-beta F t) vs d/a, low to moderate t")
    sub.add_parser("fig2", parents=[common], help="lg(-beta F) vs d/a, high t")
    sub.add_parser("fig3", parents=[common], help="lg(-beta F t) vs lg t for narrow gaps")
    sub.add_parser("point", parents=[common], help="evaluate a method on a (d/a, t) grid")
    chk = sub.add_parser("check", parents=[common], help="golden values and identities")
    chk.add_argument("--include-slow", action="store_true", help="also run the term-count check (minutes)")
    return parser


def _model(settings: dict) -> PermittivityModel:
    kind = settings.get("model")
    eps = settings.get("epsilon")
    if kind is None:
        kind = "conductor" if eps is None or math.isinf(eps) else "constant"
    if kind == "conductor":
        return PermittivityModel.conductor()
    if eps is None:
        raise ConfigError(f"--model {kind} needs --epsilon")
    if kind == "oscillator":
        if settings.get("omega0") is None:
            raise ConfigError("--model oscillator needs --omega0")
        return PermittivityModel.oscillator(eps, settings["omega0"])
    return PermittivityModel.constant(eps)


def make_config(args: argparse.Namespace) -> RunConfig:
    settings = read_config(args.config) if args.config else {}
    for key in _KEYS:
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    fields = dict(model=_model(settings))
    for key, name in (("gap_ratio", "gap_ratios"), ("temperature", "temperatures"), ("tol", "tol"),
                      ("lmax", "l_cap"), ("nmax", "n_cap"), ("method", "method"), ("out", "out"),
                      ("workers", "workers"), ("n0_convention", "n0_convention"),
                      ("reproducible", "reproducible")):
        if settings.get(key) is not None:
            fields[name] = settings[key]
    if "method" not in fields and fields["model"].kind != "conductor" and args.command == "point":
        fields["method"] = "dynamic"
    factory = {"fig1": fig1_config, "fig2": fig2_config, "fig3": fig3_config}.get(args.command, RunConfig)
    try:
        return factory(**fields)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    tmp = f"{out}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s")
    try:
        cfg = make_config(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "check":
        checks = run_checks(cfg.tol, sigma_scale=args.perturb_sigma, include_slow=args.include_slow,
                            report=lambda line: print(line, file=sys.stderr, flush=True))
        failed = [c for c in checks if not c.passed]
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=sys.stderr)
        return EXIT_GOLDEN if failed else EXIT_OK

    rows = run_sweep(cfg)
    _write(rows_to_csv(rows), cfg.out)
    if args.command == "fig3":
        for r in cfg.gap_ratios:
            try:
                s = shoulder_from_rows(rows, r)
            except ValueError:
                continue
            log.info("d/a=%g shoulder at t=%.4g (lg t=%.3f), high-t slope %.4f",
                     r, s["t_shoulder"], s["lg_t_shoulder"], s["high_t_slope"])
    bad = [r for r in rows if r.status != "ok"]
    if bad:
        log.warning("%d of %d rows did not converge", len(bad), len(rows))
        return EXIT_CONVERGENCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
