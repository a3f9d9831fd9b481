"""Command-line interface: ``rrdp {optimal,verify,estimate,simulate,contour}``.

Results go to stdout as a JSON envelope::

    {"schema_version": 1, "command": ..., "inputs": {...}, "result": {...}}

Exit codes: 0 success, 2 invalid input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from rrdp.errors import RRDPError
from rrdp.estimator import SurveyOutcome, build_report
from rrdp.mechanism import (
    DesignMatrix,
    PrivacyParams,
    constraint_slacks,
    in_region_r_prime,
    on_boundary,
    satisfies_dp,
)
from rrdp.optimizer import OptimalResult, contour_sweep, optimal_relaxed, warner_result
from rrdp.simulation import SimulationConfig, monte_carlo

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_IO = 0, 2, 3
CONTOUR_HEADER = ("epsilon", "delta", "g")


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _num(x):
    """Map non-finite floats to None so the envelope stays strict JSON."""
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _matrix(P: DesignMatrix) -> dict:
    return {"p00": P.p00, "p11": P.p11}


def _envelope(command: str, inputs: dict, result: dict) -> str:
    body = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
    }
    # Python's float repr is the shortest string that round-trips exactly.
    return json.dumps(body, allow_nan=False)


def _optimal_payload(res: OptimalResult) -> dict:
    return {
        "regime": res.regime.value,
        "g_value": _num(res.g_value),
        "mechanisms": [_matrix(P) for P in res.mechanisms],
        "variance": res.variance_at_pi,
    }


def cmd_optimal(args) -> dict:
    priv = PrivacyParams(args.epsilon, args.delta)
    if args.warner:
        res = warner_result(priv, args.pi, args.n)
    else:
        res = optimal_relaxed(priv, args.pi, args.n)
    return _optimal_payload(res)


def cmd_verify(args) -> dict:
    P = DesignMatrix(args.p00, args.p11)
    priv = PrivacyParams(args.epsilon, args.delta)
    slacks = constraint_slacks(P, priv)
    return {
        "slacks": list(slacks),
        "satisfies_dp": satisfies_dp(P, priv, args.tol),
        "in_r_prime": in_region_r_prime(P, priv, args.tol),
        "on_boundary": on_boundary(P, priv, args.tol),
        "tight": [abs(s) <= args.tol for s in slacks],
    }


def cmd_estimate(args) -> dict:
    P = DesignMatrix(args.p00, args.p11)
    rep = build_report(P, SurveyOutcome(args.n, args.count_ones), args.reference_pi)
    return {
        "pi_hat_raw": rep.pi_hat_raw,
        "pi_hat_clamped": rep.pi_hat_clamped,
        "variance": rep.variance,
        "variance_at": rep.variance_at,
        "moe_chebyshev": rep.moe_chebyshev,
        "moe_normal": rep.moe_normal,
    }


def cmd_simulate(args) -> dict:
    P = DesignMatrix(args.p00, args.p11)
    cfg = SimulationConfig(args.pi, args.n, args.trials, args.seed)
    rep = monte_carlo(P, cfg)
    return {
        "mean_estimate": rep.mean_estimate,
        "empirical_variance": rep.empirical_variance,
        "theoretical_variance": rep.theoretical_variance,
        "z_score_bias": _num(rep.z_score_bias),
        "trials": rep.trials,
    }


def contour_csv(sweep) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CONTOUR_HEADER)
    for eps, delta, g in sweep.rows():
        writer.writerow((repr(eps), repr(delta), "nan" if math.isnan(g) else repr(g)))
    return buf.getvalue()


def cmd_contour(args) -> Optional[dict]:
    sweep = contour_sweep(
        (),
        (args.eps_min, args.eps_max),
        (args.delta_min, args.delta_max),
        args.resolution,
    )
    text = contour_csv(sweep)
    if args.out == "-":
        sys.stdout.write(text)
        return None
    try:
        with open(args.out, "w", newline="", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    return {"path": args.out, "rows": len(sweep)}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rrdp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("optimal", help="optimal private mechanism for (epsilon, delta, pi)")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--pi", type=float, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--warner", action="store_true", help="restrict to p00 = p11")
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("verify", help="check a mechanism against a privacy budget")
    p.add_argument("--p00", type=float, required=True)
    p.add_argument("--p11", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("estimate", help="estimate pi from a randomized tally")
    p.add_argument("--p00", type=float, required=True)
    p.add_argument("--p11", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-ones", type=int, required=True)
    p.add_argument("--reference-pi", type=float, default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="Monte Carlo check of the estimator")
    p.add_argument("--p00", type=float, required=True)
    p.add_argument("--p11", type=float, required=True)
    p.add_argument("--pi", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("contour", help="tabulate the regime threshold g(epsilon, delta) as CSV")
    p.add_argument("--eps-min", type=float, default=0.01)
    p.add_argument("--eps-max", type=float, default=3.0)
    p.add_argument("--delta-min", type=float, default=0.0)
    p.add_argument("--delta-max", type=float, default=0.5)
    p.add_argument("--resolution", type=int, default=200)
    p.add_argument("--out", default="-", help="CSV destination; '-' for stdout")
    p.set_defaults(func=cmd_contour)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except _Usage as exc:
        print(f"rrdp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RRDPError, ValueError) as exc:
        print(f"rrdp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"rrdp: error: {exc}", file=sys.stderr)
        return EXIT_IO
    if result is not None:
        inputs = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
        print(_envelope(args.command, inputs, result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
