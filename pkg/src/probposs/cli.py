"""Command-line front end.

Vectors and diagnostics are written as JSON; reports and figure data as CSV
with a header row. Floats are written with ``repr`` so text round trips are
exact.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .converse import SolverConfig, converse_generalized, converse_optimal, converse_symmetric
from .core import DistributionError, NORMALIZED_TOLERANCE, SUM_TOLERANCE, validate_probability
from .experiments import (
    DEFAULT_N_LIST,
    ExperimentConfig,
    emit_binary_curve,
    emit_ternary_map,
    run_specificity_experiment,
)
from .specificity import specificity_of_transform
from .transforms import TransformKind, TransformSpec, apply_transform, parse_exponent

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4
EXIT_NOT_CONVERGED = 5

PROBABILITY = "probability"
POSSIBILITY = "possibility"


class ParseError(ValueError):
    pass


class NotConverged(RuntimeError):
    def __init__(self, message, document):
        super().__init__(message)
        self.document = document


def parse_distribution_text(text: str) -> tuple[list[float], str | None]:
    """Parse a distribution file into ``(values, declared_kind)``.

    Accepts a JSON array, a JSON object with ``values`` (and optionally
    ``kind``), or one number per line.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    kind = None
    if stripped[0] in "[{":
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if isinstance(doc, dict):
            kind = doc.get("kind")
            if kind not in (None, PROBABILITY, POSSIBILITY):
                raise ParseError(f"unknown kind {kind!r}")
            doc = doc.get("values")
        if not isinstance(doc, list):
            raise ParseError("expected a flat array of numbers")
        raw = doc
    else:
        raw = [line.strip() for line in stripped.splitlines() if line.strip()]
    values = []
    for item in raw:
        if isinstance(item, bool) or isinstance(item, (list, dict)) or item is None:
            raise ParseError(f"not a number: {item!r}")
        try:
            v = float(item)
        except (TypeError, ValueError):
            raise ParseError(f"not a number: {item!r}") from None
        if not math.isfinite(v):
            raise ParseError(f"non-finite value: {item!r}")
        values.append(v)
    if not values:
        raise ParseError("no values")
    return values, kind


def detect_kind(values) -> str | None:
    """Guess the kind from the numbers; ``None`` when both readings fit."""
    arr = np.asarray(values, dtype=float)
    total = float(arr.sum())
    looks_prob = abs(total - 1.0) <= 1e-3 and arr.min() >= 0
    looks_poss = abs(arr.max() - 1.0) <= NORMALIZED_TOLERANCE and arr.min() >= 0 and arr.max() <= 1
    if looks_prob and looks_poss:
        return None
    if looks_prob:
        return PROBABILITY
    if looks_poss:
        return POSSIBILITY
    return None


def _resolve_kind(values, declared, override, expected):
    kind = override or declared or detect_kind(values)
    if kind is not None and kind != expected:
        raise DistributionError(f"input is a {kind} distribution, this command needs a {expected} one")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from None


def _vector_document(command, params, kind, values, **extra) -> dict:
    doc = {"command": command, "params": params, "kind": kind, "values": [float(v) for v in values]}
    doc.update(extra)
    return doc


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def _spec(method: str, n, order=None) -> TransformSpec:
    kind = TransformKind.parse(method)
    if kind is TransformKind.GENERALIZED:
        if n is None:
            raise DistributionError("--n is required for the generalized method")
        return TransformSpec.generalized(parse_exponent(n))
    if n is not None:
        raise DistributionError(f"--n only applies to the generalized method, not {method}")
    return TransformSpec(kind, order=order)


def _params(args, *names):
    out = {}
    for name in names:
        v = getattr(args, name, None)
        if isinstance(v, float) and math.isinf(v):
            v = "inf"
        out[name] = v
    return out


def cmd_transform(args) -> str:
    values, declared = parse_distribution_text(_read_input(args.input))
    _resolve_kind(values, declared, args.kind, PROBABILITY)
    p = validate_probability(values, renormalize=args.renormalize)
    order = None if args.order is None else [int(i) for i in args.order.split(",")]
    spec = _spec(args.method, args.n, order)
    pi = apply_transform(p, spec)
    return _dump_json(_vector_document("transform", _params(args, "method", "n"), POSSIBILITY, pi.values))


def cmd_invert(args) -> str:
    values, declared = parse_distribution_text(_read_input(args.input))
    _resolve_kind(values, declared, args.kind, POSSIBILITY)
    params = _params(args, "method", "n")
    kind = TransformKind.parse(args.method)
    if kind is TransformKind.SYMMETRIC:
        p = converse_symmetric(values)
    elif kind in (TransformKind.OPTIMAL, TransformKind.WEAK_ORDER):
        p = converse_optimal(values)
    else:
        if args.n is None:
            raise DistributionError("--n is required for the generalized method")
        n = parse_exponent(args.n)
        if math.isinf(n):
            p = converse_optimal(values)
        else:
            config = SolverConfig(
                residual_tolerance=args.tol,
                max_iterations=args.max_iter,
                damping_floor=args.damping_floor,
            )
            report = converse_generalized(values, n, config)
            diagnostics = {
                "iterations": report.iterations,
                "final_residual": report.final_residual,
                "converged": report.converged,
            }
            if not report.converged:
                doc = _vector_document("invert", params, PROBABILITY, report.best_masses,
                                       diagnostics=diagnostics)
                raise NotConverged(
                    f"solver did not converge; best residual {report.final_residual!r}", doc)
            return _dump_json(_vector_document("invert", params, PROBABILITY,
                                               report.solution.masses, diagnostics=diagnostics))
    return _dump_json(_vector_document("invert", params, PROBABILITY, p.masses))


def cmd_specificity(args) -> str:
    values, declared = parse_distribution_text(_read_input(args.input))
    _resolve_kind(values, declared, args.kind, PROBABILITY)
    p = validate_probability(values, renormalize=args.renormalize)
    value = specificity_of_transform(p, _spec(args.method, args.n))
    return _dump_json({"command": "specificity", "params": _params(args, "method", "n"),
                       "specificity": value})


def _float_list(text: str) -> list[float]:
    return [parse_exponent(t) for t in text.split(",") if t.strip()]


def cmd_experiment(args) -> str:
    config = ExperimentConfig(
        sampler=args.dist,
        seed=args.seed,
        zipf_alpha=args.alpha,
        outcomes=args.outcomes,
        samples_per_distribution=args.samples,
        trials=args.trials,
        n_list=tuple(_float_list(args.n_list)),
    )
    report = run_specificity_experiment(config)
    return _dump_csv(["n", "mean", "sd"], report.rows())


def cmd_figure(args) -> str:
    if args.which == "binary-curve":
        kind = TransformKind.parse(args.method)
        if kind is TransformKind.GENERALIZED:
            ns = _float_list(args.n_list)
            specs = [TransformSpec.generalized(n) for n in ns]
            header = ["p"] + [f"pi_n={n:g}" for n in ns]
        else:
            specs = [TransformSpec(kind)]
            header = ["p", f"pi_{kind.value}"]
        curves = [emit_binary_curve(s, args.grid_points) for s in specs]
        rows = np.column_stack([curves[0][:, 0]] + [c[:, 1] for c in curves])
        return _dump_csv(header, rows)
    table = emit_ternary_map(parse_exponent(args.n), args.step)
    return _dump_csv(["p1", "p2", "pi3"], table)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="probposs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    methods = ["symmetric", "optimal", "weak-order", "generalized"]

    def dist_input(p):
        p.add_argument("input", help="distribution file, or - for stdin")
        p.add_argument("--kind", choices=[PROBABILITY, POSSIBILITY], help="override kind detection")

    p = sub.add_parser("transform", help="probability -> possibility")
    dist_input(p)
    p.add_argument("--method", choices=methods, required=True)
    p.add_argument("--n", help="exponent for the generalized method (accepts inf)")
    p.add_argument("--order", help="comma-separated 0-based tie-breaking order for weak-order")
    p.add_argument("--renormalize", action="store_true", help="rescale sums within 1e-3 of 1")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("invert", help="possibility -> probability")
    dist_input(p)
    p.add_argument("--method", choices=methods, required=True)
    p.add_argument("--n", help="exponent for the generalized method")
    p.add_argument("--tol", type=float, default=SolverConfig.residual_tolerance)
    p.add_argument("--max-iter", type=int, default=SolverConfig.max_iterations)
    p.add_argument("--damping-floor", type=float, default=SolverConfig.damping_floor)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("specificity", help="specificity of a transform of a probability vector")
    dist_input(p)
    p.add_argument("--method", choices=methods, required=True)
    p.add_argument("--n", help="exponent for the generalized method (accepts inf)")
    p.add_argument("--renormalize", action="store_true")
    p.set_defaults(func=cmd_specificity)

    p = sub.add_parser("experiment", help="Monte Carlo specificity experiment (CSV)")
    p.add_argument("--dist", choices=["uniform", "zipf"], default="uniform")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--alpha", type=float, default=1.0, help="Zipf exponent")
    p.add_argument("--outcomes", type=int, default=1000)
    p.add_argument("--samples", type=int, default=250_000)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n-list", default=",".join(f"{n:g}" for n in DEFAULT_N_LIST))
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("figure", help="plot-ready figure data (CSV)")
    p.add_argument("which", choices=["binary-curve", "ternary-map"])
    p.add_argument("--method", choices=methods, default="generalized")
    p.add_argument("--n-list", default="1,2,4,10,100", help="exponents for binary-curve")
    p.add_argument("--n", default="1", help="exponent for ternary-map")
    p.add_argument("--grid-points", type=int, default=99)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_figure)
    return parser


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "n", None) is not None and args.command != "figure":
            args.n = parse_exponent(args.n)
        _write(args.output, args.func(args))
    except ParseError as exc:
        print(f"probposs: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotConverged as exc:
        _write(args.output, _dump_json(exc.document))
        print(f"probposs: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (DistributionError, ValueError) as exc:
        print(f"probposs: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
