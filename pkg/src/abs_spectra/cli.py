"""Command-line interface: classify | maximize | conjecture | sweep | oracle.

Exit codes: 0 ok/feasible, 1 usage/input/IO error, 2 infeasible, 3 boundary.
Spectrum input is JSON {"m": int, "n": int, "lambdas": [...]} or plain text
with one eigenvalue per line; numeric output carries 12 significant digits.
The environment variable ABS_SPECTRA_SEED overrides the default seed when
--seed is not given.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import closedform
from .core import (
    DimensionMismatch,
    NegativeEigenvalue,
    NotNormalized,
    UnsupportedDimensions,
    WrongLength,
    classify,
    validate_spectrum,
)
from .optimizer import DEFAULT_SEED, Problem, SolverOptions, maximize_purity
from .oracle import BudgetExceeded, GridSpec, NoFeasiblePoint, grid_max_purity

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_BOUNDARY = 3

CSV_HEADER = ("m,n,N,numeric_max_purity,conjectured_purity,numeric_radius,"
              "conjectured_radius,margin_at_opt,conjecture_feasible,"
              "conjecture_saturated,restarts_converged,seed")

_VERDICT_EXIT = {"feasible": EXIT_OK, "infeasible": EXIT_INFEASIBLE, "boundary": EXIT_BOUNDARY}


class InputError(ValueError):
    """CLI input problem; the message names the offending field."""


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round12(x: float) -> float:
    return float(_fmt(x))


def _json_ready(obj):
    # Round every float to 12 significant digits before serialization.
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    return obj


def _print_json(payload: dict) -> None:
    print(json.dumps(_json_ready(payload), indent=2))


def _default_seed() -> int:
    raw = os.environ.get("ABS_SPECTRA_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"ABS_SPECTRA_SEED: not an integer: {raw!r}") from exc


def _read_values(args) -> list[float]:
    if args.lambdas is not None:
        try:
            return [float(tok) for tok in args.lambdas.split(",") if tok.strip()]
        except ValueError as exc:
            raise InputError(f"lambdas: {exc}") from exc
    if args.infile is None:
        raise InputError("lambdas: provide --lambdas or --in")
    try:
        text = open(args.infile, "r", encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"in: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"in: invalid JSON: {exc}") from exc
        if not isinstance(payload.get("lambdas"), list):
            raise InputError("lambdas: JSON spectrum needs a \"lambdas\" array")
        for key in ("m", "n"):
            if key in payload and int(payload[key]) != getattr(args, key):
                raise InputError(
                    f"{key}: JSON value {payload[key]} contradicts --{key} {getattr(args, key)}"
                )
        try:
            return [float(v) for v in payload["lambdas"]]
        except (TypeError, ValueError) as exc:
            raise InputError(f"lambdas: {exc}") from exc
    values = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError as exc:
            raise InputError(f"lambdas: bad line {line!r}") from exc
    return values


def _build_spectrum(args):
    values = _read_values(args)
    try:
        return validate_spectrum(args.m, args.n, values)
    except WrongLength as exc:
        raise InputError(f"lambdas: {exc}") from exc
    except NegativeEigenvalue as exc:
        raise InputError(f"lambdas: {exc}") from exc
    except NotNormalized as exc:
        raise InputError(f"lambdas: {exc}") from exc
    except DimensionMismatch as exc:
        raise InputError(f"m/n: {exc}") from exc


def cmd_classify(args) -> int:
    spectrum = _build_spectrum(args)
    report = classify(spectrum, tol=args.tol)
    _print_json(report.to_dict())
    return _VERDICT_EXIT[report.verdict]


def _solver_options(args) -> SolverOptions:
    kwargs = {"seed": args.seed if args.seed is not None else _default_seed()}
    if getattr(args, "restarts", None) is not None:
        kwargs["restarts"] = args.restarts
    if getattr(args, "max_iters", None) is not None:
        kwargs["max_iters"] = args.max_iters
    if getattr(args, "tol", None) is not None:
        kwargs["constraint_tol"] = args.tol
    return SolverOptions(**kwargs)


def cmd_maximize(args) -> int:
    problem = Problem.for_dimensions(args.m, args.n)
    opts = _solver_options(args)
    result = maximize_purity(problem, opts)
    payload = result.to_dict()
    payload["criterion"] = problem.criterion.value
    payload["seed"] = opts.seed
    _print_json(payload)
    if result.restarts_converged < 1:
        print("warning: no restart reached stationarity", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_conjecture(args) -> int:
    report = closedform.verify_conjecture(args.m, args.n, tol=args.tol)
    _print_json(report.to_dict())
    return EXIT_OK


def _sweep_rows(args, seed: int):
    for n in range(args.nmin, args.nmax + 1):
        problem = Problem.for_dimensions(args.m, n)
        opts_kwargs = {"seed": seed}
        if args.restarts is not None:
            opts_kwargs["restarts"] = args.restarts
        result = maximize_purity(problem, SolverOptions(**opts_kwargs))
        report = closedform.verify_conjecture(args.m, n)
        N = args.m * n
        numeric_radius = (max(0.0, result.best_purity - 1.0 / N)) ** 0.5
        yield {
            "m": args.m,
            "n": n,
            "N": N,
            "numeric_max_purity": result.best_purity,
            "conjectured_purity": report.conjectured_purity,
            "numeric_radius": numeric_radius,
            "conjectured_radius": report.conjectured_radius,
            "margin_at_opt": result.margin_at_opt,
            "conjecture_feasible": report.feasible,
            "conjecture_saturated": report.saturated,
            "restarts_converged": result.restarts_converged,
            "seed": seed,
        }


def _write_csv(path: str, rows: list[dict]) -> None:
    fields = CSV_HEADER.split(",")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            out = []
            for key in fields:
                val = row[key]
                if isinstance(val, bool):
                    out.append("true" if val else "false")
                elif isinstance(val, int):
                    out.append(str(val))
                else:
                    out.append(_fmt(val))
            writer.writerow(out)


def _write_svg(path: str, rows: list[dict]) -> None:
    # Minimal dependency-free line chart: numeric (red) and conjectured
    # (blue) maximum purity versus n, with one marker per n on the numeric
    # series.
    width, height = 640, 440
    ml, mr, mt, mb = 60, 20, 20, 50
    ns = [row["n"] for row in rows]
    numeric = [row["numeric_max_purity"] for row in rows]
    conj = [row["conjectured_purity"] for row in rows]
    ymax = max(max(numeric), max(conj)) * 1.08 or 1.0
    span = max(ns) - min(ns) or 1

    def sx(n):
        return ml + (width - ml - mr) * (n - min(ns)) / span

    def sy(v):
        return height - mb - (height - mt - mb) * v / ymax

    def points(vals):
        return " ".join(f"{sx(n):.2f},{sy(v):.2f}" for n, v in zip(ns, vals))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" y2="{height - mb}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" stroke="black"/>',
    ]
    for n in ns:
        parts.append(
            f'<text x="{sx(n):.2f}" y="{height - mb + 18}" font-size="11" '
            f'text-anchor="middle">{n}</text>'
        )
    for k in range(5):
        v = ymax * k / 4
        parts.append(
            f'<text x="{ml - 6}" y="{sy(v):.2f}" font-size="11" '
            f'text-anchor="end">{v:.3g}</text>'
        )
    parts.append(
        f'<polyline fill="none" stroke="#cc2222" stroke-width="1.5" points="{points(numeric)}"/>'
    )
    parts.append(
        f'<polyline fill="none" stroke="#2244cc" stroke-width="1.5" points="{points(conj)}"/>'
    )
    for n, v in zip(ns, numeric):
        parts.append(f'<circle cx="{sx(n):.2f}" cy="{sy(v):.2f}" r="3" fill="#cc2222"/>')
    parts.append(
        f'<text x="{width - mr}" y="{mt + 10}" font-size="12" text-anchor="end" '
        f'fill="#cc2222">numeric</text>'
    )
    parts.append(
        f'<text x="{width - mr}" y="{mt + 26}" font-size="12" text-anchor="end" '
        f'fill="#2244cc">conjectured</text>'
    )
    parts.append(
        f'<text x="{(ml + width - mr) // 2}" y="{height - 8}" font-size="12" '
        f'text-anchor="middle">n</text>'
    )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def cmd_sweep(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    rows = list(_sweep_rows(args, seed))
    try:
        _write_csv(args.out, rows)
        if args.svg is not None:
            _write_svg(args.svg, rows)
    except OSError as exc:
        print(f"error: out: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = GridSpec.for_dimensions(args.m, args.n, args.resolution)
    try:
        value, spectrum = grid_max_purity(spec)
    except BudgetExceeded as exc:
        print(f"error: resolution: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except NoFeasiblePoint as exc:
        print(f"error: resolution: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _print_json({
        "m": args.m,
        "n": args.n,
        "resolution": args.resolution,
        "criterion": spec.criterion.value,
        "max_purity": value,
        "spectrum": spectrum.to_dict(),
    })
    return EXIT_OK


def _add_dims(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, required=True, help="first subsystem dimension")
    parser.add_argument("--n", type=int, required=True, help="second subsystem dimension")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abs-spectra",
        description="Spectral criteria and purity maximization for absolutely "
                    "separable / absolutely PPT bipartite states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="evaluate the criteria on one spectrum")
    _add_dims(p)
    p.add_argument("--lambdas", help="comma-separated eigenvalues")
    p.add_argument("--in", dest="infile", help="spectrum file (JSON or one value per line)")
    p.add_argument("--tol", type=float, default=1e-9, help="boundary tolerance")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("maximize", help="maximize purity under the applicable criterion")
    _add_dims(p)
    p.add_argument("--restarts", type=int, help="number of random restarts")
    p.add_argument("--seed", type=int, help="RNG seed (default from ABS_SPECTRA_SEED)")
    p.add_argument("--tol", type=float, help="constraint tolerance")
    p.add_argument("--max-iters", dest="max_iters", type=int, help="iteration cap per restart")
    p.set_defaults(func=cmd_maximize)

    p = sub.add_parser("conjecture", help="closed-form candidate optimum and verification")
    _add_dims(p)
    p.add_argument("--tol", type=float, default=closedform.SATURATION_TOL,
                   help="saturation tolerance")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("sweep", help="numeric vs closed-form sweep over n, CSV out")
    p.add_argument("--m", type=int, required=True, help="first subsystem dimension")
    p.add_argument("--nmin", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--svg", help="optional SVG chart path")
    p.add_argument("--seed", type=int, help="RNG seed (default from ABS_SPECTRA_SEED)")
    p.add_argument("--restarts", type=int, help="number of random restarts per n")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="exhaustive grid search at resolution K")
    _add_dims(p)
    p.add_argument("--resolution", type=int, required=True, help="grid resolution K")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; remap to the documented code.
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (UnsupportedDimensions, closedform.DomainError, DimensionMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
