"""Command line front end.

Every subcommand loads its inputs, delegates to one module function, and
serializes the result as JSON (default) or CSV.  Each output embeds the
resolved run configuration (everything except the output path), so a
result file can be rerun to reproduce itself byte for byte: floats print
at 12 significant digits and exact counts print as decimal strings.

Exit codes: 0 success, 1 domain error (JSON with the error code), 2 usage.
"""

import argparse
import csv
import io
import json
import sys
from math import log

from . import dynamics, gapsearch, patterns, pressure
from .budget import Budget, DEFAULT as DEFAULT_BUDGET
from .errors import DomainError, ParseError
from .matrices import (
    entropy_exact,
    family_from_dict,
    matrix_power_product,
    validate_family,
)
from .pressure import (
    Potential,
    potential_from_dict,
    pressure_estimate,
    pressure_oracle_vertex,
)
from .errors import WindowTooWideError
from .shapes import Shape
from .words import (
    Word,
    check_enum_budget,
    count_oracle_check,
    enumerate_words,
    word_to_dict,
)


_LOG_FACTORS = {"e": 1.0, "2": log(2.0), "10": log(10.0)}


def _round12(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _scale(obj, factor):
    if factor == 1.0:
        return obj
    if isinstance(obj, float):
        return obj / factor
    if isinstance(obj, (list, tuple)):
        return [_scale(v, factor) for v in obj]
    return obj


def _load_json(path, kind):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {kind} file", path=path,
                         reason=str(exc)) from exc


def _load_family(path):
    data = _load_json(path, "family")
    try:
        return family_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("malformed family file", path=path,
                         reason=str(exc)) from exc


def _budget(args):
    return Budget(max_enum_bits=args.max_enum_bits,
                  max_enum_nodes=args.max_enum_nodes,
                  max_exact_digits=args.max_exact_digits)


def _config(args):
    skip = {"out", "func", "command"}
    cfg = {"command": args.command}
    for key, value in vars(args).items():
        if key not in skip:
            cfg[key] = value
    return cfg


def _emit_json(payload, out):
    text = json.dumps(_round12(payload), indent=2) + "\n"
    _write(text, out)


def _emit_csv(config, header, rows, out):
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(_round12(config), sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write(buf.getvalue(), out)


def _write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _word_str(word):
    shape = ",".join(str(c) for c in word.shape.coords)
    labels = ".".join(str(x) for x in word.labels)
    return f"{shape}:{labels}"


# -- Subcommand bodies ----------------------------------------------------------

def _cmd_validate(args):
    family = _load_family(args.family)
    report = validate_family(family)
    payload = report.to_json()
    if args.format == "csv":
        rows = [["status", payload["status"], ""]]
        for violation in payload.get("violations", ()):
            rows.append(["violation", violation["code"],
                         json.dumps(violation["witness"], sort_keys=True)])
        _emit_csv(_config(args), ["kind", "value", "witness"], rows, args.out)
    else:
        _emit_json({"config": _config(args), **payload}, args.out)
    return 0


def _cmd_words(args):
    family = _load_family(args.family)
    shape = Shape.parse(args.shape)
    budget = _budget(args)
    check_enum_budget(family, shape, budget)
    total = _origin_count(family, shape, args.origin, budget)
    listed = []
    for word in enumerate_words(family, shape, origin=args.origin):
        if args.limit is not None and len(listed) >= args.limit:
            break
        listed.append(word)
    if args.format == "csv":
        rows = [[i, _word_str(w)] for i, w in enumerate(listed)]
        _emit_csv(_config(args), ["index", "word"], rows, args.out)
    else:
        _emit_json({
            "config": _config(args),
            "shape": list(shape.coords),
            "total": str(total),
            "returned": len(listed),
            "words": [word_to_dict(w) for w in listed],
        }, args.out)
    return 0


def _origin_count(family, shape, origin, budget):
    power = matrix_power_product(family, shape, budget)
    if origin is None:
        return sum(sum(row) for row in power)
    idx = family.alphabet.index(origin) if isinstance(origin, str) else origin
    return sum(power[idx])


def _cmd_count_check(args):
    family = _load_family(args.family)
    report = count_oracle_check(family, Shape.parse(args.max_shape),
                                _budget(args))
    payload = report.to_json()
    if args.format == "csv":
        rows = [[",".join(str(c) for c in r["shape"]), r["enumerated"],
                 r["matrix_count"], r["equal"]] for r in payload["rows"]]
        _emit_csv(_config(args), ["shape", "enumerated", "matrix_count", "equal"],
                  rows, args.out)
    else:
        _emit_json({"config": _config(args), **payload}, args.out)
    return 0


def _cmd_entropy(args):
    family = _load_family(args.family)
    p = Shape.parse(args.p)
    budget = _budget(args)
    factor = _LOG_FACTORS[args.log_base]
    result = {}
    estimate = None
    exact = None
    if args.mode in ("bowen", "both"):
        est = dynamics.bowen_entropy_estimate(family, args.k, p, args.n_max,
                                              budget)
        estimate = est.estimate
        result["sequence"] = _scale(list(est.sequence), factor)
        result["diffs"] = _scale(list(est.diffs), factor)
        result["estimate"] = _scale(estimate, factor)
    if args.mode in ("exact", "both"):
        exact = entropy_exact(family, p)
        result["exact"] = _scale(exact, factor)
    if args.mode == "both":
        result["abs_error"] = _scale(abs(estimate - exact), factor)
    if args.format == "csv":
        rows = _series_rows(result)
        _emit_csv(_config(args), ["n", "average", "increment", "exact"],
                  rows, args.out)
    else:
        _emit_json({"config": _config(args), **result}, args.out)
    return 0


def _series_rows(result):
    seq = result.get("sequence", [])
    diffs = result.get("diffs", [])
    exact = result.get("exact", "")
    rows = []
    for i, a in enumerate(seq):
        diff = f"{diffs[i - 1]:.12g}" if 0 < i <= len(diffs) else ""
        rows.append([i + 1, f"{a:.12g}", diff,
                     f"{exact:.12g}" if exact != "" else ""])
    return rows


def _cmd_action_entropy(args):
    family = _load_family(args.family)
    factor = _LOG_FACTORS[args.log_base]
    value = dynamics.action_entropy_estimate(family, args.k, args.n,
                                             _budget(args))
    result = {"k": args.k, "n": args.n, "value": _scale(value, factor)}
    if args.format == "csv":
        _emit_csv(_config(args), ["k", "n", "value"],
                  [[args.k, args.n, f"{result['value']:.12g}"]], args.out)
    else:
        _emit_json({"config": _config(args), **result}, args.out)
    return 0


def _cmd_pressure(args):
    family = _load_family(args.family)
    p = Shape.parse(args.p)
    budget = _budget(args)
    factor = _LOG_FACTORS[args.log_base]
    if args.potential:
        pot = potential_from_dict(family, _load_json(args.potential, "potential"))
    else:
        pot = Potential(Shape.zero(family.rank), 0.0, {})
    est = pressure_estimate(family, pot, args.k, p, args.n_max,
                            method=args.method, budget=budget)
    result = {
        "k": est.k,
        "step": list(est.step.coords),
        "method": est.method,
        "sequence": _scale(list(est.sequence), factor),
        "diffs": _scale(list(est.diffs), factor),
        "estimate": _scale(est.estimate, factor),
    }
    if args.oracle:
        if not pot.window.is_zero:
            raise WindowTooWideError(
                "the spectral oracle applies to single-letter windows only",
                window=list(pot.window.coords))
        values = {i: pot.table.get(Word(pot.window, (i,)), pot.default)
                  for i in range(len(family.alphabet))}
        oracle = pressure_oracle_vertex(family, values, p, budget)
        result["oracle"] = _scale(oracle, factor)
        result["abs_error"] = _scale(abs(est.estimate - oracle), factor)
    if args.format == "csv":
        rows = _series_rows({**result, "exact": result.get("oracle", "")})
        _emit_csv(_config(args), ["n", "average", "increment", "oracle"],
                  rows, args.out)
    else:
        _emit_json({"config": _config(args), **result}, args.out)
    return 0


def _cmd_lemma_check(args):
    family = _load_family(args.family)
    p = Shape.parse(args.p)
    max_gen = Shape.parse(args.max_shape)
    m = Shape.parse(args.m) if args.m else None
    reports = patterns.verify_partial_isometries(
        family, p, max_gen, m=m, budget=_budget(args), threads=args.threads)
    failures = sum(len(r.witnesses) for r in reports)
    if args.format == "csv":
        rows = []
        for rep in reports:
            for stat in rep.stats:
                rows.append([
                    _word_str(rep.u), _word_str(rep.w),
                    f"{','.join(str(c) for c in stat['kappa']['shape'])}:"
                    f"{'.'.join(str(x) for x in stat['kappa']['labels'])}",
                    f"{','.join(str(c) for c in stat['lambda']['shape'])}:"
                    f"{'.'.join(str(x) for x in stat['lambda']['labels'])}",
                    stat["cells"], stat["partial_isometry"],
                ])
        _emit_csv(_config(args),
                  ["u", "w", "kappa", "lambda", "cells", "partial_isometry"],
                  rows, args.out)
    else:
        _emit_json({
            "config": _config(args),
            "pairs": len(reports),
            "failures": failures,
            "all_partial_isometries": failures == 0,
            "reports": [r.to_json() for r in reports],
        }, args.out)
    return 0


def _cmd_search_gap(args):
    budget = _budget(args)
    if args.exhaustive:
        records = gapsearch.exhaustive_search(
            args.size, rank=args.rank, canonicalize=args.canonicalize,
            budget=budget, threads=args.threads)
        attempts = None
    else:
        records = gapsearch.random_search(
            args.size, args.density, args.trials, args.seed, rank=args.rank,
            budget=budget)
        attempts = args.trials
    records = gapsearch.sorted_records(records)
    summary = gapsearch.summarize(records, attempts)
    if args.format == "csv":
        rows = [gapsearch.record_csv_row(r) for r in records]
        _emit_csv(_config(args), gapsearch.record_csv_header(args.rank),
                  rows, args.out)
    else:
        _emit_json({
            "config": _config(args),
            "summary": summary,
            "records": [r.to_json() for r in records],
        }, args.out)
    return 0


# -- Parser ----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--family", required=True,
                        help="family JSON file")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--log-base", choices=("e", "2", "10"), default="e",
                        help="display base for logarithmic quantities")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--max-enum-bits", type=float,
                        default=DEFAULT_BUDGET.max_enum_bits)
    common.add_argument("--max-enum-nodes", type=int,
                        default=DEFAULT_BUDGET.max_enum_nodes)
    common.add_argument("--max-exact-digits", type=int,
                        default=DEFAULT_BUDGET.max_exact_digits)

    parser = argparse.ArgumentParser(
        prog="rankshift",
        description="entropy, pressure and pattern checks for commuting "
                    "0-1 matrix families")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common]).set_defaults(func=_cmd_validate)

    sp = sub.add_parser("words", parents=[common])
    sp.add_argument("--shape", required=True)
    sp.add_argument("--origin", default=None)
    sp.add_argument("--limit", type=int, default=None)
    sp.set_defaults(func=_cmd_words)

    sp = sub.add_parser("count-check", parents=[common])
    sp.add_argument("--max-shape", required=True)
    sp.set_defaults(func=_cmd_count_check)

    sp = sub.add_parser("entropy", parents=[common])
    sp.add_argument("--p", required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--mode", choices=("exact", "bowen", "both"), default="both")
    sp.set_defaults(func=_cmd_entropy)

    sp = sub.add_parser("action-entropy", parents=[common])
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_action_entropy)

    sp = sub.add_parser("pressure", parents=[common])
    sp.add_argument("--p", required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--potential", default=None)
    sp.add_argument("--method", choices=("transfer", "enumerate"),
                    default="transfer")
    sp.add_argument("--oracle", action="store_true")
    sp.set_defaults(func=_cmd_pressure)

    sp = sub.add_parser("lemma-check", parents=[common])
    sp.add_argument("--p", required=True)
    sp.add_argument("--max-shape", required=True)
    sp.add_argument("--m", default=None)
    sp.set_defaults(func=_cmd_lemma_check)

    sp = sub.add_parser("search-gap", parents=[common])
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--size", type=int, default=2)
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--density", type=float, default=0.25)
    sp.add_argument("--trials", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--canonicalize", action="store_true")
    sp.set_defaults(func=_cmd_search_gap)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        sys.stdout.write(json.dumps(_round12(exc.to_json()), indent=2) + "\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
