"""``opav`` command-line front end.

Counts go to stdout as exact decimal strings; with ``--json`` a single JSON
object ``{query, method, value, elapsed_ms}`` is printed instead. Exit
codes: 0 ok, 1 usage or parse error, 2 a check failed, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import bijections, formulas, lab, scheme
from .core import (
    OrderedSetPartition,
    Pattern,
    count_by_enumeration,
    count_nk_by_enumeration,
    count_words_avoiding,
)
from .errors import BudgetExceededError, OpavError
from .text import format_word, parse_int_list, parse_partition, parse_pattern, parse_word

EXIT_OK, EXIT_USAGE, EXIT_CHECK_FAILED, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


FORMULAS = {
    # name: (function, arity, argument names)
    "op12": (formulas.op12_closed, 2, "n k"),
    "op123-k3": (formulas.op123_k3_closed, 1, "n"),
    "op123-k3-rawsum": (formulas.op123_k3_raw_sum, 1, "n"),
    "op132-k3-rawsum": (formulas.op132_k3_raw_sum, 1, "n"),
    "op123-nminus1": (formulas.op123_nminus1_closed, 1, "n"),
    "catalan": (formulas.catalan_number, 1, "n"),
    "catalan-triangle": (formulas.catalan_triangle_entry, 2, "n i"),
    "one-big-block": (formulas.op123_one_big_block_closed, 2, "p n"),
    "one-block-theorem": (formulas.op123_nk_one_block_p, 2, "n p"),
}


def _params(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {item!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _int(params: dict, key: str, default=None) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key}=")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise UsageError(f"parameter {key} must be an integer") from None


def _emit_count(args, query: str, method: str, value: int, start: float, out) -> None:
    if args.json:
        elapsed = round((time.perf_counter() - start) * 1000, 3)
        out.write(json.dumps({"query": query, "method": method, "value": str(value), "elapsed_ms": elapsed}) + "\n")
    else:
        out.write(f"{value}\n")


def _cmd_count(args, out):
    start = time.perf_counter()
    sizes = parse_int_list(args.sizes)
    rho = parse_pattern(args.pattern)
    method = args.method
    if method == "scheme":
        if len(rho) != 3:
            raise UsageError("the scheme handles patterns of length 3 only")
        # every pattern of length 3 is equinumerous with 123 on a fixed shape
        value = scheme.scheme_count(sizes)
    else:
        value = count_by_enumeration(sizes, rho)
    _emit_count(args, f"count sizes={','.join(map(str, sizes))} pattern={rho}", method, value, start, out)
    return EXIT_OK


def _cmd_count_nk(args, out):
    start = time.perf_counter()
    rho = parse_pattern(args.pattern)
    n, k = args.n, args.k
    if args.method == "brute":
        value = count_nk_by_enumeration(n, k, rho, star=args.star)
        method = "brute"
    elif args.star:
        value = lab.op_star_from_nonempty(n, k, rho)
        method = "scheme"
    elif len(rho) == 3:
        value = scheme.op123_nk(n, k)
        method = "scheme"
    else:
        value, method = lab.op_nk(n, k, rho)
    star = " star" if args.star else ""
    _emit_count(args, f"count-nk n={n} k={k} pattern={rho}{star}", method, value, start, out)
    return EXIT_OK


def _cmd_formula(args, out):
    start = time.perf_counter()
    fn, arity, names = FORMULAS[args.name]
    values = args.args or []
    if len(values) != arity:
        raise UsageError(f"formula {args.name} takes {arity} argument(s): {names}")
    value = fn(*values)
    _emit_count(args, f"formula {args.name} {' '.join(map(str, values))}", "formula", value, start, out)
    return EXIT_OK


def _cmd_sequence(args, out):
    params = _params(args.params)
    start = time.perf_counter()
    try:
        table = lab.sequence_table(args.name, **params)
    except KeyError as exc:
        raise UsageError(f"sequence {args.name} needs parameter {exc.args[0]}=") from None
    if args.format == "bfile":
        out.write(table.to_bfile())
    elif args.format == "csv":
        buf = io.StringIO()
        extra_keys = sorted({key for e in table.entries for key in e.extra})
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "value", "method", *extra_keys])
        for e in table.entries:
            writer.writerow([e.index, e.value, e.method, *(e.extra.get(key, "") for key in extra_keys)])
        out.write(buf.getvalue())
    else:
        for e in table.entries:
            elapsed = round((time.perf_counter() - start) * 1000, 3)
            row = {"query": f"{table.name}[{e.index}]", "method": e.method, "value": str(e.value), "elapsed_ms": elapsed}
            for key, val in e.extra.items():
                row[key] = str(val)
            out.write(json.dumps(row) + "\n")
    return EXIT_OK


def _cmd_biject(args, out):
    if args.map == "psi":
        w = parse_word(args.input)
        result = format_word(bijections.psi_word(w, args.k))
    else:
        p = parse_partition(args.input)
        if args.map == "phi":
            result = str(bijections.phi_123_to_132(p))
        elif args.map == "phi-inv":
            result = str(bijections.phi_inverse(p))
        else:
            if args.index is None:
                raise UsageError("--map swap needs --index")
            result = str(bijections.block_swap(p, args.index))
    out.write(result + "\n")
    return EXIT_OK


def _cmd_star_encode(args, out):
    p = OrderedSetPartition.star(parse_partition(args.input).blocks)
    out.write(f"{bijections.sw_encode(p, parse_pattern(args.pattern))}\n")
    return EXIT_OK


def _cmd_star_decode(args, out):
    text = " ".join(args.input).split()
    if len(text) != 2:
        raise UsageError("star-decode expects '<partition> <tag>'")
    compact = parse_partition(text[0])
    tag = parse_word(text[1])
    enc = bijections.StarEncoding(compact, tag)
    out.write(f"{bijections.sw_decode(enc, parse_pattern(args.pattern))}\n")
    return EXIT_OK


def _run_check(name: str, params: dict) -> lab.CheckReport:
    if name == "conjecture1":
        return lab.check_conjecture1(_int(params, "kmax", 6), amended=params.get("amended", "0") in ("1", "true", "yes"))
    if name == "lower-bound":
        return lab.check_lower_bound_doubletons(_int(params, "kmax", 6))
    if name == "monotonicity":
        return lab.check_monotonicity(_int(params, "n", 10), Pattern.of(params.get("pattern", "123")))
    if name == "subadditivity":
        return lab.check_subadditivity(
            _int(params, "nmax", 7), _int(params, "kmax", 3), Pattern.of(params.get("pattern", "123"))
        )
    return lab.check_oracle_sweep(_int(params, "nmax", 6))


def _cmd_check(args, out):
    params = _params(args.params)
    start = time.perf_counter()
    report = _run_check(args.name, params)
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    out.write(f"check {report.name}: {report.verdict}\n")
    for key, value in report.params.items():
        out.write(f"  {key} = {value}\n")
    if report.witness is not None:
        out.write(f"  witness: {json.dumps(report.witness, default=str)}\n")
    for note in report.notes:
        out.write(f"  note: {note}\n")
    query = f"check {report.name} " + " ".join(f"{k}={v}" for k, v in report.params.items())
    line = {"query": query.strip(), "method": "check", "value": report.verdict, "elapsed_ms": elapsed}
    if report.witness is not None:
        line["witness"] = report.witness
    out.write(json.dumps(line, default=str) + "\n")
    return EXIT_CHECK_FAILED if report.verdict == lab.FAILS else EXIT_OK


def _cmd_words(args, out):
    start = time.perf_counter()
    rho = parse_pattern(args.pattern)
    value = count_words_avoiding(args.k, args.n, rho)
    _emit_count(args, f"words n={args.n} k={args.k} pattern={rho}", "brute", value, start, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="opav", description="Exact counts of pattern-avoiding ordered set partitions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, json_flag=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        if json_flag:
            p.add_argument("--json", action="store_true", help="print one JSON object instead of the bare value")
        return p

    p = add("count", _cmd_count, "avoiders with a fixed block-size composition")
    p.add_argument("--sizes", required=True, help="block sizes, e.g. 2,1,1")
    p.add_argument("--pattern", default="123")
    p.add_argument("--method", choices=("scheme", "brute"), default="scheme")

    p = add("count-nk", _cmd_count_nk, "avoiders of [n] with k blocks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pattern", default="123")
    p.add_argument("--star", action="store_true", help="allow empty blocks")
    p.add_argument("--method", choices=("scheme", "brute"), default="scheme")

    p = add("formula", _cmd_formula, "evaluate a closed form or summation")
    p.add_argument("--name", required=True, choices=sorted(FORMULAS))
    p.add_argument("--args", type=int, nargs="*", default=[])

    p = add("sequence", _cmd_sequence, "emit a table", json_flag=False)
    p.add_argument("--name", required=True, choices=("a220097", "op123-row", "op12-row", "catalan", "growth"))
    p.add_argument("--params", nargs="*", default=[], help="key=value pairs, e.g. kmax=6")
    p.add_argument("--format", choices=("json", "csv", "bfile"), default="json")

    p = add("biject", _cmd_biject, "apply a bijection", json_flag=False)
    p.add_argument("--map", required=True, choices=("phi", "phi-inv", "swap", "psi"))
    p.add_argument("--input", required=True)
    p.add_argument("--index", type=int, help="block index for swap (1-based)")
    p.add_argument("--k", type=int, help="alphabet size for psi (default: largest letter)")

    p = add("star-encode", _cmd_star_encode, "encode a star partition", json_flag=False)
    p.add_argument("--pattern", default="132")
    p.add_argument("--input", required=True)

    p = add("star-decode", _cmd_star_decode, "decode '<partition> <tag>'", json_flag=False)
    p.add_argument("--pattern", default="132")
    p.add_argument("--input", required=True, nargs="+")

    p = add("check", _cmd_check, "run a conjecture or consistency check", json_flag=False)
    p.add_argument(
        "--name", required=True, choices=("conjecture1", "monotonicity", "lower-bound", "subadditivity", "oracle-sweep")
    )
    p.add_argument("--params", nargs="*", default=[], help="key=value pairs")

    p = add("words", _cmd_words, "words over [k] of length n avoiding a pattern")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", default="123")
    return parser


def run_cli(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except BudgetExceededError as exc:
        err.write(f"opav: {exc}\n")
        return EXIT_BUDGET
    except (OpavError, ValueError, ArithmeticError) as exc:
        err.write(f"opav: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
