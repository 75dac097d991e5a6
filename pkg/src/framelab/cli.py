"""``frame-lab`` command line.

Exit codes: 0 success, 1 verification failure (or internal error),
2 invalid input, 3 resource guard.
"""
import argparse
import csv
import io
import json
import math
import sys

from . import __version__
from .errors import FrameLabError, InvalidInput, TooLarge
from .frames import FrameSpec, PatternMask, build_generator, build_systematic
from .quantsim import NoiseModel, simulate
from .search import DedupMode, rank_patterns
from .spectral import codevector_variance, spectrum_report
from . import verify as verify_mod

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def matrix_pairs(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def report_dict(report):
    return {
        "pattern": report.pattern.to_string(),
        "eigenvalues": list(report.eigenvalues),
        "lambda_min": report.lambda_min,
        "lambda_max": report.lambda_max,
        "inv_sum": report.inv_sum,
        "product": report.product,
        "is_tight": report.is_tight,
        "det_formula": report.det_formula,
    }


def envelope(command, inputs, results):
    body = {"command": command, "inputs": inputs, "results": results, "version": __version__}
    return json.dumps(_jsonable(body), indent=2, allow_nan=False) + "\n"


def _spec(args):
    return FrameSpec(args.n, args.k, args.kind, getattr(args, "alpha", None))


def _pattern(args, spec, required=True):
    if args.pattern is None:
        if required:
            raise InvalidInput("--pattern is required")
        return None
    pat = PatternMask.from_string(args.pattern, spec.n)
    pat.require(spec)
    return pat


def _spec_inputs(args):
    out = {"n": args.n, "k": args.k, "kind": args.kind}
    if getattr(args, "alpha", None) is not None:
        out["alpha"] = args.alpha
    return out


def cmd_build(args):
    spec = _spec(args)
    pattern = _pattern(args, spec, required=False)
    g = build_generator(spec)
    results = {"alpha": spec.alpha, "beta": spec.beta, "generator": matrix_pairs(g)}
    if pattern is not None:
        results["pattern"] = pattern.to_string()
        results["systematic"] = matrix_pairs(build_systematic(g, pattern))
    inputs = _spec_inputs(args) | {"pattern": args.pattern}
    return envelope("build", inputs, results), EXIT_OK


def cmd_spectrum(args):
    spec = _spec(args)
    pattern = _pattern(args, spec)
    report = spectrum_report(build_generator(spec), pattern)
    results = report_dict(report) | {"codevector_variance": codevector_variance(report, 1.0)}
    return envelope("spectrum", _spec_inputs(args) | {"pattern": args.pattern}, results), EXIT_OK


CSV_COLUMNS = ("pattern", "lambda_min", "lambda_max", "inv_sum", "product", "tight")


def cmd_search(args):
    spec = _spec(args)
    result = rank_patterns(spec, DedupMode(args.mode))
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for c in result.classes:
            r = c.report
            writer.writerow(
                [c.pattern.to_string(), repr(r.lambda_min), repr(r.lambda_max), repr(r.inv_sum),
                 repr(r.product), "true" if r.is_tight else "false"]
            )
        return buf.getvalue(), EXIT_OK
    rows = [report_dict(c.report) | {"class_size": c.size} for c in result.classes]
    results = {
        "classes": rows,
        "best": result.best.to_string(),
        "worst": result.worst.to_string(),
        "dedup_mode": result.dedup_mode.value,
    }
    inputs = _spec_inputs(args) | {"mode": args.mode}
    return envelope("search", inputs, results), EXIT_OK


def cmd_simulate(args):
    spec = _spec(args)
    pattern = _pattern(args, spec)
    if args.noise == "iid":
        model = NoiseModel.iid(args.sigma_q2)
    else:
        model = NoiseModel.uniform(args.bits, args.range)
    rep = simulate(spec, pattern, model, args.sigma_x2, args.trials, args.seed)
    inputs = _spec_inputs(args) | {
        "pattern": args.pattern,
        "noise": args.noise,
        "sigma_q2": args.sigma_q2 if args.noise == "iid" else None,
        "bits": args.bits if args.noise == "uniform" else None,
        "range": args.range if args.noise == "uniform" else None,
        "sigma_x2": args.sigma_x2,
        "trials": args.trials,
        "seed": args.seed,
    }
    results = {
        "trials": rep.trials,
        "empirical_sigma_y2": rep.empirical_sigma_y2,
        "predicted_sigma_y2": rep.predicted_sigma_y2,
        "empirical_mse": rep.empirical_mse,
        "predicted_mse": rep.predicted_mse,
        "noise_sigma_q2": rep.noise_sigma_q2,
        "sigma_y2_stderr": rep.sigma_y2_stderr,
        "mse_stderr": rep.mse_stderr,
        "seed": rep.seed,
    }
    return envelope("simulate", inputs, results), EXIT_OK


def cmd_verify(args):
    claims = verify_mod.run_all(args.n_max)
    ok = all(c.passed for c in claims)
    results = {"all_passed": ok, "claims": [c.as_dict() for c in claims]}
    return envelope("verify", {"n_max": args.n_max}, results), EXIT_OK if ok else EXIT_FAIL


def _add_spec_args(p, pattern=None):
    p.add_argument("--n", type=int, required=True, help="codeword length")
    p.add_argument("--k", type=int, required=True, help="message length")
    p.add_argument("--kind", choices=("real", "complex"), default="real")
    p.add_argument("--alpha", type=int, default=None, help="leading spectral block size (complex only)")
    if pattern is not None:
        p.add_argument("--pattern", required=pattern, help="'x' = data, '-' = parity, length n")


def build_parser():
    parser = _Parser(prog="frame-lab", description="Systematic DFT frame toolkit")
    parser.add_argument("--version", action="version", version=f"frame-lab {__version__}")
    parser.add_argument("--out", default=None, help="also write the output to this file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="generator and systematic generator matrices")
    _add_spec_args(p, pattern=False)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("spectrum", help="eigenvalue report for one codeword pattern")
    _add_spec_args(p, pattern=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("search", help="rank every pattern class")
    _add_spec_args(p)
    p.add_argument("--mode", choices=[m.value for m in DedupMode], default=DedupMode.ROTATION.value)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("simulate", help="Monte-Carlo encode/noise/reconstruct run")
    _add_spec_args(p, pattern=True)
    p.add_argument("--noise", choices=("iid", "uniform"), default="iid")
    p.add_argument("--sigma-q2", type=float, default=1e-2)
    p.add_argument("--bits", type=int, default=8)
    p.add_argument("--range", type=float, default=8.0)
    p.add_argument("--sigma-x2", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run every numerical claim up to a size cap")
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, code = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except InvalidInput as exc:
        print(f"frame-lab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TooLarge as exc:
        print(f"frame-lab: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except FrameLabError as exc:
        print(f"frame-lab: internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
