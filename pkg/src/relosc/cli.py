"""Command-line interface: plot-ready CSV/JSON for spectra, potentials,
eigenfunctions, oracle validation and the flat-limit study.

Natural units (hbar = c = 1). Exit codes: 0 success, 1 validation failure,
2 usage or parameter error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .geometry import conformal_factor, domain, potential, potential_asymptote
from .model import (
    ConvergenceError,
    DomainError,
    ModelParams,
    NoSuchLevelError,
    ParameterError,
    RegimeError,
    RegimeTag,
    classify,
    shape_k,
    shape_k_prime,
)
from .oracle import FdConfig, fd_bound_count, fd_solve
from .spectra import (
    continuum_threshold,
    level,
    n_max,
    nrho_level_squared,
    spectrum_report,
)
from .wavefunctions import count_nodes, envelope_radius, normalize, scattering_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    schema: str
    columns: list
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    failed: bool = False


def fmt(value) -> str:
    """Shortest round-trip decimal for floats; empty string for None."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _json_value(value):
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def render(record: OutputRecord, fmt_name: str) -> str:
    if fmt_name == "json":
        payload = {
            "schema": record.schema,
            "metadata": _json_value(record.metadata),
            "columns": record.columns,
            "rows": [_json_value(list(r)) for r in record.rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# schema: {record.schema}\n")
    for key, value in record.metadata.items():
        text = json.dumps(_json_value(value)) if isinstance(value, (dict, list)) else fmt(value)
        buf.write(f"# {key}: {text}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(record.columns)
    for row in record.rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _params(args) -> ModelParams:
    if args.lam is None:
        raise UsageError("--lambda is required for this command")
    return ModelParams(args.m, args.omega, args.lam)


def _base_metadata(args, params: ModelParams | None = None) -> dict:
    meta = {"command": args.command, "version": __version__, "units": "natural (hbar=c=1)"}
    meta["m"] = args.m
    meta["omega"] = args.omega
    if getattr(args, "lam", None) is not None:
        meta["lambda"] = args.lam
    if params is not None:
        regime = classify(params)
        meta["regime"] = regime.tag.value
        meta["is_rho"] = regime.is_rho
        meta["eps"] = params.eps
        meta["omega_hat"] = params.omega_hat
    return meta


def _grid(params: ModelParams, points: int, xhat_max, margin: float, default_half: float):
    if points < 2:
        raise UsageError("--points must be >= 2")
    if classify(params).tag is RegimeTag.PT:
        if not 0 < margin < 1:
            raise UsageError("--margin must lie in (0, 1)")
        half = domain(params).hi * (1.0 - margin)
        if xhat_max is not None:
            half = min(half, xhat_max)
    else:
        half = default_half if xhat_max is None else xhat_max
    if not half > 0:
        raise UsageError("--xhat-max must be positive")
    return np.linspace(-half, half, points), half


def cmd_spectrum(args) -> OutputRecord:
    params = _params(args)
    if args.levels < 1:
        raise UsageError("--levels must be positive")
    report = spectrum_report(params, args.levels)
    meta = _base_metadata(args, params)
    meta["shape"] = report.shape
    rec = OutputRecord("spectrum", ["kind", "n", "E", "E2", "regime"], metadata=meta)
    for n, e in report.levels:
        rec.rows.append(("level", n, e, e * e, report.regime.value))
    if report.regime is RegimeTag.RM:
        meta["threshold"] = report.threshold
        meta["n_max"] = report.n_max
        rec.rows.append(("threshold", None, report.threshold, report.threshold**2, report.regime.value))
        rec.rows.append(("n_max", report.n_max, None, None, report.regime.value))
    return rec


def cmd_potential(args) -> OutputRecord:
    params = _params(args)
    tag = classify(params).tag
    default = 5.0 / params.omega_hat if tag is RegimeTag.RM else 5.0 / math.sqrt(params.m * params.omega)
    x, half = _grid(params, args.points, args.xhat_max, args.margin, default)
    meta = _base_metadata(args, params)
    meta["xhat_half_width"] = half
    if tag is RegimeTag.PT:
        meta["wall"] = domain(params).hi
        meta["margin"] = args.margin
    if tag is RegimeTag.RM:
        meta["asymptote"] = potential_asymptote(params)
    v = np.asarray(potential(params, x))
    cf = np.asarray(conformal_factor(params, x))
    rec = OutputRecord("potential", ["xhat", "V", "conformal_factor"], metadata=meta)
    rec.rows = list(zip(x.tolist(), v.tolist(), cf.tolist()))
    return rec


def cmd_wavefunction(args) -> OutputRecord:
    params = _params(args)
    tag = classify(params).tag
    meta = _base_metadata(args, params)
    if args.scattering:
        if args.energy is None:
            raise UsageError("--scattering needs --energy")
        state = scattering_state(params, args.energy, args.parity)
        default = 10.0 / params.omega_hat
        x, half = _grid(params, args.points, args.xhat_max, args.margin, default)
        meta.update(energy=state.energy, nu=state.nu, parity=state.s,
                    threshold=continuum_threshold(params), norm_convention="N_nu=1",
                    xhat_half_width=half)
    else:
        if args.n is None or args.n < 0:
            raise UsageError("--n must be a nonnegative integer")
        state = normalize(params, args.n)
        default = envelope_radius(params, args.n, 1e-8) if tag is not RegimeTag.PT else 0.0
        x, half = _grid(params, args.points, args.xhat_max, args.margin, default)
        meta.update(n=state.n, n_s=state.index.n_s, s=state.index.s, energy=state.energy,
                    energy_squared=state.energy**2, shape=state.shape, norm=state.norm,
                    norm_tolerance=state.norm_tolerance, nodes=count_nodes(state, 4096),
                    xhat_half_width=half)
        if tag is not RegimeTag.PT:
            meta["truncation_radius"] = state.radius
        if tag is RegimeTag.RM:
            meta["n_max"] = n_max(params)
    u = np.asarray(state(x))
    rec = OutputRecord("wavefunction", ["xhat", "U"], metadata=meta)
    rec.rows = list(zip(x.tolist(), u.tolist()))
    return rec


def cmd_validate(args) -> OutputRecord:
    params = _params(args)
    tag = classify(params).tag
    if args.levels < 1:
        raise UsageError("--levels must be positive")
    count = min(args.levels, n_max(params) + 1) if tag is RegimeTag.RM else args.levels
    cfg = FdConfig(count=count)
    result = fd_solve(params, cfg)
    meta = _base_metadata(args, params)
    meta.update(tolerance=args.tolerance, grid_sizes=list(cfg.grid_sizes),
                fd_interval=[result.lo, result.hi])
    rec = OutputRecord("validate", ["n", "E_closed", "E_fd", "abs_err", "rel_err", "status"], metadata=meta)
    failures = 0
    for n in range(count):
        exact = level(params, n)
        approx = float(result.energies[n])
        abs_err = abs(approx - exact)
        rel_err = abs_err / exact
        ok = rel_err < args.tolerance
        failures += not ok
        rec.rows.append((n, exact, approx, abs_err, rel_err, "pass" if ok else "fail"))
    if tag is RegimeTag.RM:
        expected = n_max(params) + 1
        found = fd_bound_count(params)
        meta.update(threshold=continuum_threshold(params), expected_bound_count=expected,
                    fd_bound_count=found, count_status="pass" if found == expected else "fail")
        failures += found != expected
    meta["failures"] = failures
    rec.failed = failures > 0
    return rec


def _parse_eps_list(text: str) -> list:
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--eps-list must be comma-separated numbers, got {text!r}")
    if not values or any(not v > 0 for v in values):
        raise UsageError("--eps-list values must be positive")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise UsageError("--eps-list must be strictly decreasing")
    return values


def cmd_limit(args) -> OutputRecord:
    eps_list = _parse_eps_list(args.eps_list)
    if args.levels < 1:
        raise UsageError("--levels must be positive")
    m, omega = args.m, args.omega
    ModelParams(m, omega, 0.0)  # validates m, omega
    flat = [math.sqrt(nrho_level_squared(m, omega, n)) for n in range(args.levels)]
    branches = ["pt", "rm"] if args.branch == "both" else [args.branch]
    columns = ["branch", "eps", "lambda", "shape", "eps2_shape", "shape_rel_err"]
    columns += [f"E_{n}" for n in range(args.levels)] + ["max_dE2"]
    meta = _base_metadata(args)
    meta["m_over_omega"] = m / omega
    meta["flat_levels"] = flat
    rec = OutputRecord("limit", columns, metadata=meta)
    for branch in branches:
        previous = math.inf
        monotone = True
        for eps in eps_list:
            lam = -eps * eps if branch == "pt" else eps * eps
            params = ModelParams(m, omega, lam)
            shape = shape_k(params) if branch == "pt" else shape_k_prime(params)
            top = args.levels - 1 if branch == "pt" else min(args.levels - 1, n_max(params))
            energies = [level(params, n) if n <= top else None for n in range(args.levels)]
            d = [abs(e * e - f * f) for e, f in zip(energies, flat) if e is not None]
            worst = max(d)
            monotone &= worst < previous
            previous = worst
            eps2 = eps * eps * shape
            rec.rows.append((branch, eps, lam, shape, eps2, abs(eps2 - m / omega) / (m / omega),
                             *energies, worst))
        meta[f"{branch}_monotone"] = monotone
    return rec


COMMANDS = {
    "spectrum": cmd_spectrum,
    "potential": cmd_potential,
    "wavefunction": cmd_wavefunction,
    "validate": cmd_validate,
    "limit": cmd_limit,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=float, default=1.0, help="mass (natural units)")
    common.add_argument("--omega", type=float, default=1.0, help="frequency (natural units)")
    common.add_argument("--lambda", dest="lam", type=float, default=None,
                        help="deformation parameter of the metric family")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for byte-identical output")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--points", type=int, default=201)
    grid.add_argument("--xhat-max", type=float, default=None, help="grid half-width (RM, flat)")
    grid.add_argument("--margin", type=float, default=1e-3,
                      help="PT grid stays this fraction of the half-width inside the walls")

    parser = argparse.ArgumentParser(prog="relosc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="closed-form energy levels")
    p.add_argument("--levels", type=int, default=5)

    sub.add_parser("potential", parents=[common, grid], help="V(xhat) and the conformal factor")

    p = sub.add_parser("wavefunction", parents=[common, grid], help="sample an eigenfunction")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--scattering", action="store_true", help="RM continuum state instead of a bound state")
    p.add_argument("--energy", type=float, default=None)
    p.add_argument("--parity", type=int, choices=(0, 1), default=0)

    p = sub.add_parser("validate", parents=[common], help="closed form vs finite-difference oracle")
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--tolerance", type=float, default=1e-5)

    p = sub.add_parser("limit", parents=[common], help="convergence to the flat limit")
    p.add_argument("--eps-list", default="0.1,0.01,0.001")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--branch", choices=("pt", "rm", "both"), default="both")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record = COMMANDS[args.command](args)
    except (UsageError, ParameterError, RegimeError, DomainError, NoSuchLevelError) as exc:
        print(f"relosc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, FloatingPointError) as exc:
        print(f"relosc {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if not args.no_timestamp:
        record.metadata["timestamp"] = datetime.now(timezone.utc).isoformat()
    text = render(record, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAIL if record.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
