"""Command-line front end.

Every command prints one JSON envelope

    {"command", "input_digest", "parameters", "results", "warnings"}

with sorted keys, so output is byte-for-byte reproducible. Exact values are
"p/q" strings; floats only appear under keys ending in ``_root`` or
``residual``.

Exit codes: 0 ok, 1 law violation, 2 input error, 3 budget exceeded,
4 unknown (a decider gave up).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from .asymptotic import asymptotic_report
from .congruence import DEFAULT_SEARCH_BUDGET, is_congruent, is_equivalent
from .cover import fractional_cover, tfold_cover
from .errors import BudgetExceeded, DomainError, MatrixParseError, PreconditionError
from .laws import spectral_point_check, strassen_axiom_check
from .linalg import rank
from .matching import subrank
from .matrix import NonnegativeMatrix, format_rational, matrix_to_json_obj, parse_matrix
from .nnrank import DEFAULT_TOL, nnrank_bounds
from .triangular import triangular_certificate

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET, EXIT_UNKNOWN = 0, 1, 2, 3, 4
BUDGET_ENV = "NNSPECTRA_BUDGET"


class _Unknown(Exception):
    pass


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise MatrixParseError(f"{BUDGET_ENV} must be an integer, got {env!r}")
    return DEFAULT_SEARCH_BUDGET


def _read(paths: list[str], fmt: str) -> tuple[list[NonnegativeMatrix], str]:
    digest = hashlib.sha256()
    mats = []
    for p in paths:
        try:
            with open(p, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise MatrixParseError(f"cannot read {p}: {exc}") from exc
        digest.update(len(raw).to_bytes(8, "big"))
        digest.update(raw)
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MatrixParseError(f"{p} is not UTF-8") from exc
        mats.append(parse_matrix(text, fmt))
    return mats, digest.hexdigest()


def _seeds(args) -> list[int]:
    if getattr(args, "seeds", None):
        try:
            return [int(s) for s in args.seeds.split(",") if s.strip()]
        except ValueError:
            raise MatrixParseError(f"--seeds must be comma-separated integers: {args.seeds!r}")
    return [args.seed, args.seed + 1, args.seed + 2]


# --- commands ---------------------------------------------------------------

def cmd_param(args, warnings):
    (A,), digest = _read([args.file], args.format)
    budget = _budget(args)
    seeds = _seeds(args)
    rk = rank(A)
    sub = subrank(A, budget)
    cover = fractional_cover(A)
    bounds = nnrank_bounds(A, tol=args.tol, seeds=seeds)
    if not sub.exact:
        warnings.append("subrank search budget exhausted; value is a lower bound")
    if not bounds.upper_certified:
        warnings.append("nnrank upper bound not certified")
    results = {
        "shape": [A.rows, A.cols],
        "rank": rk.rank,
        "rank_pivots": {"rows": list(rk.pivot_rows), "cols": list(rk.pivot_cols)},
        "subrank": sub.size,
        "subrank_exact": sub.exact,
        "matching": [list(c) for c in sub.matching],
        "subrank_certificate": {"X": matrix_to_json_obj(sub.certificate_left),
                                "Y": matrix_to_json_obj(sub.certificate_right)},
        "F": format_rational(cover.value),
        "F_certificate": cover.to_json(),
        "nnrank": {
            "lower": bounds.lower,
            "upper": bounds.upper,
            "certified": bounds.upper_certified,
            "certified_upper": bounds.certified_upper,
            "lower_sources": list(bounds.lower_sources),
            "factorization": {"W": matrix_to_json_obj(bounds.exact_factors[0]),
                              "H": matrix_to_json_obj(bounds.exact_factors[1])},
            "float_factorization": bounds.factorization.to_json()
            if not bounds.upper_certified else None,
        },
    }
    params = {"format": args.format, "tol": args.tol, "seeds": seeds, "budget": budget}
    return digest, params, results, EXIT_OK


def cmd_asymptotic(args, warnings):
    (A,), digest = _read([args.file], args.format)
    budget = _budget(args)
    rep = asymptotic_report(A, args.max_power, node_budget=budget, seeds=_seeds(args))
    if any(not p.subrank_exact for p in rep.per_power):
        warnings.append("subrank search budget exhausted at some power; "
                        "those values are lower bounds")
    params = {"format": args.format, "max_power": args.max_power, "budget": budget}
    return digest, params, rep.to_json(), EXIT_OK


def cmd_congruent(args, warnings):
    (A, B), digest = _read([args.file_a, args.file_b], args.format)
    budget = _budget(args)
    try:
        w = is_congruent(A, B, budget)
    except BudgetExceeded:
        warnings.append("search budget exhausted")
        raise _Unknown(digest, {"format": args.format, "budget": budget},
                       {"congruent": "unknown"})
    results = {"congruent": w is not None, "witness": w.to_json() if w else None}
    return digest, {"format": args.format, "budget": budget}, results, EXIT_OK


def cmd_equivalent(args, warnings):
    (A, B), digest = _read([args.file_a, args.file_b], args.format)
    budget = _budget(args)
    try:
        eq = is_equivalent(A, B, budget)
    except BudgetExceeded:
        warnings.append("search budget exhausted")
        raise _Unknown(digest, {"format": args.format, "budget": budget},
                       {"equivalent": "unknown"})
    return digest, {"format": args.format, "budget": budget}, {"equivalent": eq}, EXIT_OK


def cmd_cover(args, warnings):
    (A,), digest = _read([args.file], args.format)
    budget = _budget(args)
    frac = fractional_cover(A)
    results = {"F": format_rational(frac.value), "fractional": frac.to_json()}
    if args.t is not None:
        sol = tfold_cover(A, args.t, node_budget=budget)
        results["t"] = args.t
        results["F_t"] = format_rational(sol.value)
        results["F_t_over_t"] = format_rational(sol.value / args.t)
        results["integer"] = sol.to_json()
    params = {"format": args.format, "t": args.t, "budget": budget}
    return digest, params, results, EXIT_OK


def cmd_triangular(args, warnings):
    (A,), digest = _read([args.file], args.format)
    cert = triangular_certificate(A, args.power)
    results = cert.to_json()
    results["count_at_least_bound"] = cert.lower_bound_holds()
    results["strings"] = [list(s) for s in cert.strings]
    results["row_indices"] = list(cert.row_indices)
    results["col_indices"] = list(cert.col_indices)
    return digest, {"format": args.format, "power": args.power}, results, EXIT_OK


def cmd_propcheck(args, warnings):
    if args.point == "strassen":
        rep = strassen_axiom_check(args.trials, args.seed, args.max_dim,
                                   duality_trials=args.duality_trials)
    else:
        rep = spectral_point_check(args.point, args.trials, args.seed, args.max_dim)
    params = {"point": args.point, "trials": args.trials, "seed": args.seed,
              "max_dim": args.max_dim}
    code = EXIT_OK if rep.passed else EXIT_VIOLATION
    return hashlib.sha256(b"").hexdigest(), params, rep.to_json(), code


# --- plumbing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="input matrix format")
    common.add_argument("--output", metavar="PATH", help="write the report here")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None,
                        help=f"search node budget (default from ${BUDGET_ENV})")

    parser = argparse.ArgumentParser(
        prog="nnspectra",
        description="Exact matrix parameters and asymptotic rank/subrank estimates "
                    "for nonnegative matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("param", parents=[common], help="rank, subrank, F, nnrank bounds")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--seeds", help="comma-separated NMF seeds")
    p.set_defaults(func=cmd_param)

    p = sub.add_parser("asymptotic", parents=[common], help="asymptotic sandwich report")
    p.add_argument("file")
    p.add_argument("--max-power", type=int, default=2)
    p.set_defaults(func=cmd_asymptotic)

    for name, func in (("congruent", cmd_congruent), ("equivalent", cmd_equivalent)):
        p = sub.add_parser(name, parents=[common], help=f"decide whether two matrices are {name}")
        p.add_argument("file_a")
        p.add_argument("file_b")
        p.set_defaults(func=func)

    p = sub.add_parser("cover", parents=[common], help="fractional and t-fold cover numbers")
    p.add_argument("file")
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("triangular", parents=[common], help="diagonal block certificate")
    p.add_argument("file")
    p.add_argument("--power", type=int, required=True)
    p.set_defaults(func=cmd_triangular)

    p = sub.add_parser("propcheck", parents=[common], help="spectral-point law harness")
    p.add_argument("--point", choices=("rank", "fractional_cover", "strassen"), default="rank")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--duality-trials", type=int, default=20)
    p.set_defaults(func=cmd_propcheck)
    return parser


def _pretty(envelope: dict) -> str:
    lines = [f"command: {envelope['command']}"]

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}.{k}" if prefix else k, obj[k])
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"  {prefix:<40} {json.dumps(obj)}")

    walk("", envelope["results"])
    for w in envelope["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def _emit(args, envelope: dict) -> None:
    text = _pretty(envelope) if args.pretty else \
        json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings: list[str] = []
    try:
        digest, params, results, code = args.func(args, warnings)
    except _Unknown as unk:
        digest, params, results = unk.args
        code = EXIT_UNKNOWN
    except (MatrixParseError, DomainError, PreconditionError) as exc:
        print(f"nnspectra: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"nnspectra: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    envelope = {"command": args.command, "input_digest": digest, "parameters": params,
                "results": results, "warnings": warnings}
    _emit(args, envelope)
    return code


if __name__ == "__main__":
    sys.exit(main())
