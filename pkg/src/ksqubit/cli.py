"""Command-line front end: ``ksqubit {classify,scan,boundaries,certify,decompose}``.

Exit status is 0 whenever the command ran (whatever the verdict) and 2 on input
errors.
"""
import argparse
import math
import sys
from pathlib import Path

from . import scan as scanmod
from .certificate import certificate_document, witness_to_reals
from .channel import (
    ChannelFormatError,
    NonUnitalMapError,
    canonical_decompose,
    channel_to_dict,
    diagonal_map,
    dumps,
    load_channel,
)
from .classification import classify
from .config import DEFAULT_SEARCH, SCAN_SEARCH
from .linalg import LinAlgInputError

# options whose value may start with a minus sign, e.g. --lambdas -0.4,-0.4,-0.4
_VALUE_OPTS = ("--lambdas", "--bounds", "--lambda-bounds", "--mu-bounds")


class InputError(ValueError):
    pass


def _join_negative_values(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _floats(text, n, what):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"{what}: expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n or not all(math.isfinite(v) for v in vals):
        raise InputError(f"{what}: expected {n} finite comma-separated numbers, got {text!r}")
    return vals


def _global_options(p, suppress):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=default, help="seed of the low-discrepancy sample")
    p.add_argument("--samples", type=int, default=default, help="number of sample points")
    p.add_argument("--starts", type=int, default=default, help="number of local descents")
    p.add_argument("--tol", type=float, default=default, help="certificate threshold (residual < -tol)")
    p.add_argument("--output", default=default, help="write the result here instead of stdout")


def _map_input(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambdas", help="diagonal map l1,l2,l3")
    g.add_argument("--channel", help="channel JSON file")


def build_parser():
    parser = argparse.ArgumentParser(prog="ksqubit", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="positivity, Kadison-Schwarz and CP verdicts for one map")
    _map_input(p)
    _global_options(p, suppress=True)

    p = sub.add_parser("scan", help="classify a grid of diagonal maps, CSV output")
    p.add_argument("--family", choices=["llm", "cube"], default="llm")
    p.add_argument("--points", type=int, default=None, help="grid points per axis (llm: 201, cube: 21)")
    p.add_argument("--bounds", default=None, help="lo,hi for every axis (default -1,1)")
    p.add_argument("--lambda-bounds", default=None, help="llm family: lo,hi for lambda")
    p.add_argument("--mu-bounds", default=None, help="llm family: lo,hi for mu")
    _global_options(p, suppress=True)

    p = sub.add_parser("boundaries", help="the four (lambda, lambda, mu) region curves, CSV output")
    p.add_argument("--mu-bounds", default="-1,1")
    p.add_argument("--points", type=int, default=201)
    _global_options(p, suppress=True)

    p = sub.add_parser("certify", help="search for a Kadison-Schwarz violation certificate")
    _map_input(p)
    _global_options(p, suppress=True)

    p = sub.add_parser("decompose", help="diagonal form between two unitaries")
    _map_input(p)
    _global_options(p, suppress=True)
    return parser


def _load_map(args):
    if args.lambdas is not None:
        return diagonal_map(_floats(args.lambdas, 3, "--lambdas"))
    try:
        text = Path(args.channel).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read channel file: {exc}") from None
    return load_channel(text)


def _search_config(args, base):
    cfg = base
    if args.seed is not None:
        cfg = cfg.with_(seed=args.seed)
    if args.samples is not None:
        if args.samples < 1:
            raise InputError("--samples must be positive")
        cfg = cfg.with_(n_samples=args.samples)
    if args.starts is not None:
        if args.starts < 0:
            raise InputError("--starts must be non-negative")
        cfg = cfg.with_(n_starts=args.starts)
    if args.tol is not None:
        cfg = cfg.with_(cert_tol=args.tol)
    return cfg


def _complex_matrix(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def classification_document(phi, result) -> dict:
    ks = result.ks
    return {
        "map": channel_to_dict(phi),
        "positive": result.positive,
        "ks": {
            "status": ks.label,
            "min_residual": None if math.isnan(ks.min_residual) else ks.min_residual,
            "witness": None if ks.witness is None else witness_to_reals(ks.witness),
            "evaluations": ks.evaluations,
        },
        "cp": result.cp_choi,
        "cp_inequalities": result.cp_inequalities,
        "cp_choi": result.cp_choi,
        "choi_min_eigenvalue": result.choi_min_eigenvalue,
    }


def decomposition_document(phi) -> dict:
    dec = canonical_decompose(phi)
    return {
        "map": channel_to_dict(phi),
        "lambdas": list(dec.params.as_tuple()),
        "outer_unitary": _complex_matrix(dec.outer),
        "inner_unitary": _complex_matrix(dec.inner),
        "reconstruction_error": dec.reconstruction_error,
        "single_unitary": dec.single_unitary,
    }


def _run(args) -> str:
    if args.command == "classify":
        phi = _load_map(args)
        return dumps(classification_document(phi, classify(phi, _search_config(args, DEFAULT_SEARCH)))) + "\n"
    if args.command == "certify":
        phi = _load_map(args)
        return dumps(certificate_document(phi, _search_config(args, DEFAULT_SEARCH))) + "\n"
    if args.command == "decompose":
        return dumps(decomposition_document(_load_map(args))) + "\n"
    if args.command == "boundaries":
        lo, hi = _floats(args.mu_bounds, 2, "--mu-bounds")
        return scanmod.curves_to_csv(scanmod.boundary_curves((lo, hi), args.points))
    if args.command == "scan":
        cfg = _search_config(args, SCAN_SEARCH)
        bounds = _floats(args.bounds, 2, "--bounds") if args.bounds else (-1.0, 1.0)
        if args.family == "llm":
            lam = _floats(args.lambda_bounds, 2, "--lambda-bounds") if args.lambda_bounds else bounds
            mu = _floats(args.mu_bounds, 2, "--mu-bounds") if args.mu_bounds else bounds
            rows = scanmod.scan_llm(tuple(lam), tuple(mu), args.points or 201, cfg)
        else:
            rows = scanmod.scan_cube(tuple(bounds), args.points or 21, cfg)
        return scanmod.rows_to_csv(rows)
    raise AssertionError(args.command)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    for name in ("seed", "samples", "starts", "tol", "output"):
        if not hasattr(args, name):
            setattr(args, name, None)
    try:
        text = _run(args)
    except (InputError, ChannelFormatError, NonUnitalMapError, scanmod.GridError, LinAlgInputError,
            ValueError) as exc:
        print(f"ksqubit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
