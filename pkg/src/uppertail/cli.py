"""
Command-line entry point.

Every subcommand writes one JSON document (or CSV table with ``--format csv``)
to ``--out`` or stdout; logs go to stderr. Errors map to exit codes through
the exception hierarchy: 1 for internal invariant failures, 2 for invalid input
and 3 for exceeded guards.
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from . import __version__
from .complexes import read_complex
from .config import LPBackendName, get_settings
from .counting import count_ordered, count_unordered, expected_ordered, expected_unordered, psi
from .exceptions import EXIT_INVALID_INPUT, EXIT_OK, InvalidParameters, UpperTailError
from .extremal import (
    ExtremalQuery,
    brute_force_N,
    create_lp_backend,
    n_hat_bounds,
    solve_gamma,
    verify_certificate,
    witness_constant,
)
from .harness import (
    REPORT_COLUMNS,
    TRIAL_COLUMNS,
    ReportMode,
    TailExperimentConfig,
    epsilon_sweep,
    exponent_report,
    mean_check,
    tail_estimate,
)
from .homology import betti_vector, free_count, free_faces
from .logging_config import configure_logging
from .model import ModelParams, critical_profile, parse_real, parse_vector, sample
from .threshold import SWEEP_COLUMNS, exponent_fit, mstar, sweep

logger = logging.getLogger(__name__)

Payload = Dict[str, Any]


class Output:
    """A JSON document plus, optionally, the table written for ``--format csv``."""

    def __init__(
        self,
        document: Payload,
        rows: Optional[List[Payload]] = None,
        columns: Optional[Sequence[str]] = None,
    ):
        self.document = document
        self.rows = rows
        self.columns = columns


# Argument helpers -----------------------------------------------------------


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise InvalidParameters(f"expected comma-separated integers, got {text!r}") from e


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="Number of vertices")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", dest="probs", help="Probabilities p1,p2,...")
    group.add_argument("--alpha", dest="alphas", help="Exponents a1,a2,... with p_i = n^-a_i")
    p.add_argument("--kmax", type=int, default=None, help="Highest generated dimension")


def _model_params(args: argparse.Namespace, min_k: int = 1) -> ModelParams:
    vector = parse_vector(args.probs if args.probs is not None else args.alphas)
    k_max = args.kmax if args.kmax is not None else max(len(vector), min_k)
    if args.probs is not None:
        return ModelParams(n=args.n, k_max=k_max, probs=vector)
    return ModelParams(n=args.n, k_max=k_max, alphas=vector)


def _query(args: argparse.Namespace) -> ExtremalQuery:
    pattern = read_complex(args.pattern)
    return ExtremalQuery(pattern, parse_vector(args.bounds), exponent_base=args.exponent_base)


# Subcommands ----------------------------------------------------------------


def cmd_sample(args: argparse.Namespace) -> Output:
    params = _model_params(args)
    K = sample(params, args.seed)
    rows = [{"dim": j, "face": ",".join(map(str, f))} for j in range(K.dimension + 1) for f in K.faces(j)]
    document = {
        **K.to_dict(),
        "params": params.to_dict(),
        "seed": args.seed,
        "counts": K.simplex_counts().to_list(),
    }
    return Output(document, rows, ["dim", "face"])


def cmd_count(args: argparse.Namespace) -> Output:
    host = read_complex(args.host)
    pattern = read_complex(args.pattern)
    value = count_ordered(host, pattern) if args.ordered else count_unordered(host, pattern)
    return Output({"ordered": args.ordered, "count": value})


def cmd_mean(args: argparse.Namespace) -> Output:
    pattern = read_complex(args.pattern)
    params = _model_params(args, min_k=pattern.dimension)
    mu_o = expected_ordered(params, pattern)
    document: Payload = {
        "params": params.to_dict(),
        "expected_ordered": float(mu_o),
        "expected_ordered_exact": str(mu_o),
        "expected_unordered": float(expected_unordered(params, pattern)),
        "psi": psi(params, pattern).to_dict(),
    }
    if args.trials is not None:
        document["check"] = mean_check(params, pattern, args.trials, args.seed, args.threads).to_dict()
    return Output(document)


def cmd_gamma(args: argparse.Namespace) -> Output:
    query = _query(args)
    backend = create_lp_backend(LPBackendName(args.backend) if args.backend else None)
    solution = solve_gamma(query, backend)
    bounds = n_hat_bounds(query, solution)
    document = {
        "query": query.to_dict(),
        **solution.to_dict(),
        "certificate": verify_certificate(solution).to_dict(),
        "witness_constant": str(witness_constant(query)),
        "sandwich": {"lower": float(bounds.lower), "upper": float(bounds.upper)},
    }
    return Output(document)


def cmd_oracle_n(args: argparse.Namespace) -> Output:
    query = _query(args)
    value = brute_force_N(query)
    bounds = n_hat_bounds(query)
    document = {
        "query": query.to_dict(),
        "N": value,
        "sandwich": {"lower": float(bounds.lower), "upper": float(bounds.upper)},
        "within": bounds.lower <= value <= bounds.upper,
    }
    return Output(document)


def cmd_mstar(args: argparse.Namespace) -> Output:
    pattern = read_complex(args.pattern)
    params = _model_params(args, min_k=pattern.dimension)
    result = mstar(
        params,
        pattern,
        oracle=args.oracle,
        include_isolated=args.include_isolated,
        threads=args.threads,
    )
    return Output(result.to_dict())


def cmd_sweep(args: argparse.Namespace) -> Output:
    pattern = read_complex(args.pattern)
    alphas = parse_vector(args.alphas)
    n_grid = _int_list(args.ngrid)
    if args.fit:
        fit = exponent_fit(pattern, alphas, n_grid, threads=args.threads)
        return Output(fit.to_dict(), fit.points, SWEEP_COLUMNS)
    rows = [r.to_dict() for r in sweep(pattern, alphas, n_grid, threads=args.threads)]
    return Output({"rows": rows}, rows, SWEEP_COLUMNS)


def cmd_critical_dim(args: argparse.Namespace) -> Output:
    return Output(critical_profile(parse_vector(args.alphas), args.kmax).to_dict())


def cmd_betti(args: argparse.Namespace) -> Output:
    K = read_complex(args.input)
    betti = betti_vector(K, args.field)
    rows = [{"dim": j, "betti": b} for j, b in enumerate(betti.betti)]
    return Output({**betti.to_dict(), "euler_characteristic": betti.euler_characteristic()}, rows, ["dim", "betti"])


def cmd_free(args: argparse.Namespace) -> Output:
    K = read_complex(args.input)
    count = free_count(K, args.dim)
    faces = free_faces(K, args.dim)
    rows = [{"face": ",".join(map(str, f))} for f in faces]
    return Output({"dim": args.dim, "count": count, "faces": [list(f) for f in faces]}, rows, ["face"])


def cmd_tail_mc(args: argparse.Namespace) -> Output:
    config = TailExperimentConfig.from_file(args.config)
    overrides: Payload = {}
    if args.seed_given:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if overrides:
        config = TailExperimentConfig.model_validate({**config.model_dump(), **overrides})
    base_dir = Path(args.config).parent
    if args.epsilons:
        epsilons = [parse_real(e) for e in args.epsilons.split(",")]
        rows = [
            {"epsilon": str(eps), "frequency": freq}
            for eps, freq in epsilon_sweep(config, epsilons, base_dir, threads=args.threads)
        ]
        return Output({"rows": rows}, rows, ["epsilon", "frequency"])
    record = tail_estimate(config, base_dir, threads=args.threads)
    return Output(record.to_dict(), record.csv_rows(), TRIAL_COLUMNS)


def cmd_exponent_report(args: argparse.Namespace) -> Output:
    pattern = read_complex(args.pattern)
    report = exponent_report(
        pattern,
        parse_vector(args.alphas),
        _int_list(args.ngrid),
        parse_real(args.epsilon),
        mode=ReportMode(args.mode),
        threads=args.threads,
    )
    return Output(report.to_dict(), report.csv_rows(), REPORT_COLUMNS)


# Parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit seed (default 0)")
    common.add_argument("--threads", type=int, default=None, help="Worker processes")
    common.add_argument("--out", default=None, help="Output file (default stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="json", help="Output format")
    common.add_argument("--log-level", default=None, help="Override UPTAIL_LOG_LEVEL")

    parser = argparse.ArgumentParser(
        prog="uppertail", description="Upper-tail toolkit for random simplicial complexes"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], Output], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("sample", cmd_sample, "Sample K(n; p)")
    _add_model_args(p)

    p = add("count", cmd_count, "Count copies of a pattern in a host complex")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--ordered", action="store_true", help="Count injective maps instead of copies")

    p = add("mean", cmd_mean, "Expected copy counts and Psi")
    _add_model_args(p)
    p.add_argument("--pattern", required=True)
    p.add_argument("--trials", type=int, default=None, help="Also run a Monte Carlo mean check")

    for name, handler, help_text in (
        ("gamma", cmd_gamma, "Solve the vertex-weight program"),
        ("oracle-n", cmd_oracle_n, "Brute-force extremal count on small bounds"),
    ):
        p = add(name, handler, help_text)
        p.add_argument("--pattern", required=True)
        p.add_argument("--bounds", required=True, help="m0,m1,... (or exponents with --exponent-base)")
        p.add_argument("--exponent-base", type=int, default=None)
        if name == "gamma":
            p.add_argument("--backend", choices=[b.value for b in LPBackendName], default=None)

    p = add("mstar", cmd_mstar, "Threshold M* for a pattern")
    _add_model_args(p)
    p.add_argument("--pattern", required=True)
    p.add_argument("--oracle", action="store_true", help="Use the exact extremal count")
    p.add_argument("--include-isolated", action="store_true")

    p = add("sweep", cmd_sweep, "M* across an n grid")
    p.add_argument("--pattern", required=True)
    p.add_argument("--alpha", dest="alphas", required=True)
    p.add_argument("--ngrid", required=True, help="Comma-separated n values")
    p.add_argument("--fit", action="store_true", help="Also fit the growth exponent")

    p = add("critical-dim", cmd_critical_dim, "Critical dimension and regime conditions")
    p.add_argument("--alpha", dest="alphas", required=True)
    p.add_argument("--kmax", type=int, required=True)

    p = add("betti", cmd_betti, "Betti numbers over GF(p)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--field", type=int, default=2)

    p = add("free", cmd_free, "Free faces of one dimension")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--dim", type=int, required=True)

    p = add("tail-mc", cmd_tail_mc, "Monte Carlo upper-tail frequency")
    p.add_argument("--config", required=True, help="Experiment JSON file")
    p.add_argument("--trials", type=int, default=None, help="Override the configured trial count")
    p.add_argument("--epsilons", default=None, help="Comma-separated epsilons to sweep")

    p = add("exponent-report", cmd_exponent_report, "Predicted tail exponents per n")
    p.add_argument("--pattern", required=True)
    p.add_argument("--alpha", dest="alphas", required=True)
    p.add_argument("--ngrid", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--mode", choices=[m.value for m in ReportMode], default=ReportMode.SIMPLEX.value)

    return parser


# Output ---------------------------------------------------------------------


def _flat(document: Payload) -> List[Payload]:
    return [{k: v for k, v in document.items() if not isinstance(v, (dict, list))}]


def write_output(output: Output, fmt: str, out: Optional[str]) -> None:
    stream = open(out, "w", encoding="utf-8", newline="") if out else sys.stdout
    try:
        if fmt == "csv":
            rows = output.rows if output.rows is not None else _flat(output.document)
            columns = list(output.columns or (rows[0].keys() if rows else []))
            stream.write(f"# {get_settings().csv_schema}\n")
            writer = csv.DictWriter(stream, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        else:
            json.dump(output.document, stream, indent=2, default=str)
            stream.write("\n")
    finally:
        if out:
            stream.close()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    configure_logging(args.log_level or settings.log_level, settings.log_format)

    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)

    try:
        output = args.handler(args)
    except UpperTailError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except ValidationError as e:
        logger.error(f"Invalid experiment config: {e}")
        return EXIT_INVALID_INPUT
    write_output(output, args.format, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
