"""Command line front end.

Subcommands: constants, solve, sweep, rc, oscillation, verify.  Every
run writes its structured outputs into --out-dir and finishes with a
run manifest naming them, written last so a complete manifest implies
complete outputs.  Floats in CSV bodies use 17 significant digits and
JSON floats use Python's shortest round-trip representation, so
energies survive a write-read cycle exactly.

Exit codes: 0 success, 1 domain failures (reported as a JSON object on
standard error), 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .catenoids import compute_constants
from .energy import bound_suite, classify_regime, helfrich
from .errors import HelfrevError
from .oscillations import oscillation_extrema
from .profiles import (Grid, evaluate_geometry, profile_from_json,
                       profile_to_json)
from .rate_of_change import (bvp_residual, monotonicity_verdict,
                             rate_closed_form, rate_coefficients)
from .solver import SolverConfig, SolveResult, minimise

_PROFILE_SAMPLE_COLUMNS = ("x", "u", "du", "H", "K")


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _plain(value):
    """Reduce numpy scalars and arrays to JSON-native Python types."""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialise {type(value).__name__} to JSON")


def _write_json(path: Path, payload: dict) -> Path:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, default=_plain) + "\n",
        encoding="utf-8")
    return path


def _write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else v
                             for v in row])
    return path


def _constants_fingerprint() -> str:
    table = compute_constants().as_dict()
    text = "|".join(f"{k}={_fmt(v)}" for k, v in sorted(table.items()))
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def _write_manifest(out_dir: Path, command: str, args: argparse.Namespace,
                    outputs: list[Path]) -> None:
    parameters = {}
    for key, value in sorted(vars(args).items()):
        if key in ("func", "command"):
            continue
        parameters[key] = str(value) if isinstance(value, Path) else value
    manifest = {
        "command": command,
        "parameters": parameters,
        "artifact_version": __version__,
        "constants_fingerprint": _constants_fingerprint(),
        "outputs": [str(p) for p in outputs],
    }
    _write_json(out_dir / "run_manifest.json", manifest)


def _profile_rows(profile, n_samples: int):
    xs = np.linspace(-1.0, 1.0, n_samples)
    for x in xs:
        g = evaluate_geometry(profile, float(x))
        yield (g.x, g.u, g.du, g.mean_curvature, g.gauss_curvature)


def _result_payload(alpha: float, epsilon: float, result: SolveResult
                    ) -> dict:
    report = result.energy
    return {
        "alpha": alpha,
        "epsilon": epsilon,
        "energy": {
            "area": report.area,
            "willmore": report.willmore,
            "helfrich": report.helfrich,
            "product_bound_slack": report.product_bound_slack,
            "gradient_bound": report.gradient_bound,
        },
        "gradient_norm": result.gradient_norm,
        "iterations": result.iterations,
        "converged": result.converged,
        "el_residual": result.el_residual,
        "first_integral_drift": result.first_integral_drift,
        "gluing_moves_applied": result.gluing_moves_applied,
        "energy_history": list(result.energy_history),
    }


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        grid=Grid.uniform(n_elements=args.n),
        max_iterations=args.max_iterations,
        gradient_tolerance=args.tol,
        gluing_enabled=not args.no_gluing,
        seed_noise=args.seed_noise,
        random_seed=args.seed,
    )


# -- subcommands -------------------------------------------------------

def _cmd_constants(args: argparse.Namespace) -> list[Path]:
    table = compute_constants().as_dict()
    out_dir = args.out_dir
    if args.format == "csv":
        path = _write_csv(out_dir / "constants.csv", ("name", "value"),
                          sorted(table.items()))
    else:
        path = _write_json(out_dir / "constants.json", table)
    return [path]


def _cmd_solve(args: argparse.Namespace) -> list[Path]:
    config = _solver_config(args)
    result = minimise(args.alpha, args.epsilon, config)
    out_dir = args.out_dir
    outputs = []
    payload = _result_payload(args.alpha, args.epsilon, result)
    outputs.append(_write_json(out_dir / "solve_result.json", payload))

    profile_path = args.profile_out
    if profile_path is None:
        profile_path = out_dir / "profile.json"
    profile_path.write_text(profile_to_json(result.profile) + "\n",
                            encoding="utf-8")
    outputs.append(profile_path)

    outputs.append(_write_csv(out_dir / "profile.csv",
                              _PROFILE_SAMPLE_COLUMNS,
                              _profile_rows(result.profile, args.samples)))
    return outputs


def _sweep_cell(payload: tuple) -> dict:
    alpha, epsilon, n, tol, max_iterations, seed = payload
    regime = classify_regime(alpha, epsilon)
    row = {
        "alpha": alpha,
        "epsilon": epsilon,
        "via_cylinder": regime.via_cylinder,
        "via_comparison": regime.via_comparison,
        "via_gluing": regime.via_gluing,
        "on_cylinder_curve": regime.on_cylinder_curve,
    }
    config = SolverConfig(grid=Grid.uniform(n_elements=n),
                          gradient_tolerance=tol,
                          max_iterations=max_iterations,
                          random_seed=seed)
    try:
        result = minimise(alpha, epsilon, config)
        row.update(energy=result.energy.helfrich,
                   willmore=result.energy.willmore,
                   area=result.energy.area,
                   converged=result.converged)
    except HelfrevError as exc:
        row.update(energy=float("nan"), willmore=float("nan"),
                   area=float("nan"), converged=False,
                   error=type(exc).__name__)
    return row


def _cmd_sweep(args: argparse.Namespace) -> list[Path]:
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_steps)
    epsilons = np.linspace(args.epsilon_min, args.epsilon_max,
                           args.epsilon_steps)
    cells = [(float(a), float(e), args.n, args.tol, args.max_iterations,
              args.seed)
             for a in alphas for e in epsilons]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(cell) for cell in cells]
    rows.sort(key=lambda r: (r["alpha"], r["epsilon"]))

    out_dir = args.out_dir
    regime_path = _write_csv(
        out_dir / "sweep_regimes.csv",
        ("alpha", "epsilon", "via_cylinder", "via_comparison", "via_gluing",
         "on_cylinder_curve"),
        ((r["alpha"], r["epsilon"],
          str(r["via_cylinder"]).lower(), str(r["via_comparison"]).lower(),
          str(r["via_gluing"]).lower(), str(r["on_cylinder_curve"]).lower())
         for r in rows))
    energy_path = _write_csv(
        out_dir / "sweep_energies.csv",
        ("alpha", "epsilon", "energy", "willmore", "area", "converged"),
        ((r["alpha"], r["epsilon"], r["energy"], r["willmore"], r["area"],
          str(r["converged"]).lower())
         for r in rows))
    return [regime_path, energy_path]


def _cmd_rc(args: argparse.Namespace) -> list[Path]:
    coeff = rate_coefficients(args.alpha)
    verdict = monotonicity_verdict(args.alpha)
    xs = np.linspace(-1.0, 1.0, args.samples)
    rc, rc1, _, _, _ = rate_closed_form(args.alpha, xs)
    out_dir = args.out_dir
    csv_path = _write_csv(out_dir / "rc_profile.csv", ("x", "rc", "rc_prime"),
                          ((float(x), float(v), float(d))
                           for x, v, d in zip(xs, rc, rc1)))
    payload = {
        "a_alpha": coeff.a,
        "b_alpha": coeff.b,
        "d_alpha": coeff.d,
        "bvp_residual": bvp_residual(args.alpha),
        "verdict": verdict.label,
        "sign_changes": list(verdict.sign_changes),
        "verdict_stable": verdict.stable,
    }
    json_path = _write_json(out_dir / "rc_summary.json", payload)
    return [csv_path, json_path]


def _cmd_oscillation(args: argparse.Namespace) -> list[Path]:
    report = oscillation_extrema(args.A, args.B, args.a, args.xmax)
    out_dir = args.out_dir
    csv_path = _write_csv(out_dir / "oscillation_extrema.csv", ("x", "h"),
                          report.extrema)
    json_path = _write_json(out_dir / "oscillation_report.json",
                            report.as_dict())
    return [csv_path, json_path]


def _cmd_verify(args: argparse.Namespace) -> list[Path]:
    profile = profile_from_json(args.input.read_text(encoding="utf-8"))
    report = helfrich(profile, args.epsilon)
    from .validators import el_residual, first_integral
    integral = first_integral(profile, args.epsilon)
    payload = {
        "alpha": profile.alpha,
        "epsilon": args.epsilon,
        "energy": {
            "area": report.area,
            "willmore": report.willmore,
            "helfrich": report.helfrich,
        },
        "el_residual": el_residual(profile, args.epsilon),
        "first_integral_drift": integral.drift,
        "first_integral_mean": integral.mean,
        "bound_suite": bound_suite(profile, args.epsilon),
    }
    return [_write_json(args.out_dir / "verify.json", payload)]


# -- parser ------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out-dir", type=Path, default=Path("."),
                        help="directory for output files")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="format for scalar result tables")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers where supported")
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON file with defaults for any flag")


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=64,
                        help="number of elements on [0, 1]")
    parser.add_argument("--tol", type=float, default=1e-8,
                        help="gradient norm tolerance")
    parser.add_argument("--max-iterations", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0,
                        help="random seed for the seed perturbation")
    parser.add_argument("--seed-noise", type=float, default=0.0,
                        help="amplitude of the seed perturbation")
    parser.add_argument("--no-gluing", action="store_true",
                        help="disable the surgery repairs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helfrev",
        description="Minimisers of the bending-plus-weighted-area energy "
                    "for clamped symmetric surfaces of revolution.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="the special constants table")
    _add_common(p)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("solve", help="minimise at one (alpha, epsilon)")
    _add_common(p)
    _add_solver_flags(p)
    p.add_argument("--alpha", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--samples", type=int, default=401,
                   help="profile CSV sample count")
    p.add_argument("--profile-out", type=Path, default=None,
                   help="path for the profile JSON")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sweep", help="regime atlas with measured energies")
    _add_common(p)
    _add_solver_flags(p)
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--alpha-steps", type=int)
    p.add_argument("--epsilon-min", type=float)
    p.add_argument("--epsilon-max", type=float)
    p.add_argument("--epsilon-steps", type=int)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("rc", help="rate profile of the cylinder branch")
    _add_common(p)
    p.add_argument("--alpha", type=float)
    p.add_argument("--samples", type=int, default=401)
    p.set_defaults(func=_cmd_rc)

    p = sub.add_parser("oscillation", help="extrema of A cosh cos - B sinh sin")
    _add_common(p)
    p.add_argument("--A", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--xmax", type=float)
    p.set_defaults(func=_cmd_oscillation)

    p = sub.add_parser("verify", help="validators on a stored profile")
    _add_common(p)
    p.add_argument("--input", type=Path)
    p.add_argument("--epsilon", type=float)
    p.set_defaults(func=_cmd_verify)

    return parser


# Parameters a config file may supply in place of flags; argparse-level
# requiredness would reject such runs, so the check happens after parsing.
_REQUIRED_PARAMETERS = {
    "solve": ("alpha", "epsilon"),
    "sweep": ("alpha_min", "alpha_max", "alpha_steps",
              "epsilon_min", "epsilon_max", "epsilon_steps"),
    "rc": ("alpha",),
    "oscillation": ("A", "B", "a", "xmax"),
    "verify": ("input", "epsilon"),
}


def _extract_config_path(argv: list[str]) -> Path | None:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            return Path(argv[i + 1])
        if token.startswith("--config="):
            return Path(token.split("=", 1)[1])
    return None


def _coerce_config_values(parser: argparse.ArgumentParser,
                          defaults: dict) -> dict:
    """Run config file entries through the matching flag converters.

    Config values arrive as JSON types, not command line strings, so
    each one is passed through the `type` callable of the flag it
    mirrors (floats stay floats, paths become Path objects).
    """
    converters: dict[str, object] = {}
    all_parsers = [parser]
    for sub_action in parser._subparsers._group_actions:
        all_parsers.extend(sub_action.choices.values())
    for sub_parser in all_parsers:
        for action in sub_parser._actions:
            if action.type is not None:
                converters.setdefault(action.dest, action.type)
    coerced = {}
    for key, value in defaults.items():
        convert = converters.get(key)
        if convert is None or value is None:
            coerced[key] = value
            continue
        try:
            coerced[key] = convert(value)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"config value {key!r} is not usable: {exc}")
    return coerced


def _usage_error(message: str) -> int:
    sys.stderr.write(f"usage error: {message}\n")
    return 2


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    config_path = _extract_config_path(argv)
    if config_path is not None:
        try:
            defaults = json.loads(config_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            return _usage_error(f"cannot read config file: {exc}")
        if not isinstance(defaults, dict):
            return _usage_error("config file must hold a JSON object")
        try:
            defaults = _coerce_config_values(parser, defaults)
        except ValueError as exc:
            return _usage_error(str(exc))
        parser.set_defaults(**defaults)
        for sub_action in parser._subparsers._group_actions:
            for sub_parser in sub_action.choices.values():
                sub_parser.set_defaults(**defaults)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0

    for name in _REQUIRED_PARAMETERS.get(args.command, ()):
        if getattr(args, name, None) is None:
            flag = "--" + name.replace("_", "-")
            return _usage_error(f"{flag} is required (flag or config file)")
    epsilon = getattr(args, "epsilon", None)
    if epsilon is not None and (epsilon < 0.0 or not np.isfinite(epsilon)):
        return _usage_error("epsilon must be nonnegative and finite")
    alpha = getattr(args, "alpha", None)
    if alpha is not None and (alpha <= 0.0 or not np.isfinite(alpha)):
        return _usage_error("alpha must be positive and finite")
    if getattr(args, "jobs", 1) < 1:
        return _usage_error("--jobs must be at least 1")

    try:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        outputs = args.func(args)
    except OSError as exc:
        return _usage_error(f"file system problem: {exc}")
    except HelfrevError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 1
    _write_manifest(args.out_dir, args.command, args, outputs)
    return 0


if __name__ == "__main__":
    sys.exit(main())
