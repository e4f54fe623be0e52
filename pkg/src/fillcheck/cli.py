"""Command-line front end.

Exit codes: 0 success, 1 unknown subcommand, 2 malformed input, 3 failed
internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

from .bernoulli import bernoulli_entry
from .chenruan import basis_coproduct, basis_product, cr_degrees, pairing_nondegenerate
from .errors import ConsistencyError, FillcheckError
from .genus import format_polynomial, genus_in_chern, genus_in_pontryagin
from .groups import conj_classes, parse_spec
from .link import total_chern
from .obstruct import ObstructionReport, analyze, orbifold_defect, recheck, rp_pipeline, z3_pipeline
from .serialize import report_to_dict, to_jsonable

__all__ = ["main", "run", "SUBCOMMANDS"]

SUBCOMMANDS = ("analyze", "bernoulli", "genus", "chern", "chenruan", "defect", "rp-case", "z3-case", "batch")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


class _InputError(Exception):
    """Raised instead of argparse's own exit so we control the exit code."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _InputError(f"{self.prog}: {message}")


def _fmt(x: Any) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _emit_json(obj: Any, out: TextIO) -> None:
    out.write(json.dumps(to_jsonable(obj)) + "\n")


def _emit_mapping(data: Dict[str, Any], out: TextIO) -> None:
    width = max((len(k) for k in data), default=0)
    for k, v in data.items():
        out.write(f"{k.ljust(width)}  {_fmt(v)}\n")


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _report_text(r: ObstructionReport, out: TextIO) -> None:
    na = "n/a"
    out.write(f"spec: {r.spec}\n")
    out.write(f"isolated: {_yes(r.isolated)}\n")
    out.write(f"terminal: {_yes(r.terminal)}\n")
    out.write(f"minimal discrepancy: {na if r.md is None else r.md}\n")
    out.write(f"conjugacy classes: {r.conj_count}\n")
    out.write(f"hmi: {na if r.hmi is None else r.hmi}\n")
    if r.predicted_rank is not None:
        labels = ", ".join(str(x) for x in r.degree_labels)
        out.write(f"predicted filling rank: {r.predicted_rank} (degrees {labels})\n")
    out.write(f"cup-length bound: {na if r.cup_length_bound is None else r.cup_length_bound}\n")
    out.write("verdicts:\n")
    for v in r.verdicts:
        state = v.conclusion if v.applicable else "inapplicable"
        line = f"  {v.theorem_id:<12} {state}"
        if v.note:
            line += f"  ({v.note})"
        out.write(line + "\n")
        if v.obstructed:
            out.write(f"    witness: {_fmt(v.witness)}\n")
    out.write(f"conclusion: {r.conclusion}\n")


def _analyze_checked(spec_text: str) -> ObstructionReport:
    report = analyze(spec_text)
    for v in report.verdicts:
        recheck(v)
    return report


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_analyze(args, out: TextIO) -> int:
    report = _analyze_checked(args.spec)
    if args.json:
        out.write(json.dumps(report_to_dict(report)) + "\n")
    else:
        _report_text(report, out)
    return EXIT_OK


def _cmd_bernoulli(args, out: TextIO) -> int:
    if args.n < 1:
        raise _InputError("bernoulli: n must be positive")
    e = bernoulli_entry(args.n)
    data = {"index": e.index, "value": e.value, "numerator": e.numerator, "odd_denominator": e.odd_denominator}
    if args.json:
        _emit_json(data, out)
    else:
        out.write(f"B_{e.index} = {e.value}\nN_{e.index} = {e.numerator}\nD_{e.index} = {e.odd_denominator}\n")
    return EXIT_OK


def _cmd_genus(args, out: TextIO) -> int:
    series = {"l": "L", "ahat": "Ahat"}.get(args.series.lower())
    if series is None:
        raise _InputError("genus: series must be L or ahat")
    if args.m < 1:
        raise _InputError("genus: m must be positive")
    poly = genus_in_chern(series, args.m) if args.chern else genus_in_pontryagin(series, args.m)
    var = "c" if args.chern else "p"
    if args.json:
        rows = [{"partition": list(lam), "coefficient": c} for lam, c in sorted(poly.items(), reverse=True)]
        _emit_json({"series": series, "m": args.m, "variables": var, "terms": rows}, out)
    else:
        for lam, c in sorted(poly.items(), reverse=True):
            mono = " ".join(f"{var}{i}" for i in lam)
            out.write(f"{str(c):>16}  {mono}\n")
        out.write(f"{series}_{args.m} = {format_polynomial(poly, var)}\n")
    return EXIT_OK


def _cmd_chern(args, out: TextIO) -> int:
    spec = parse_spec(args.spec)
    total = total_chern(spec)
    poly = total.poly
    data = {
        "spec": str(spec),
        "generator_degree": total.generator_degree,
        "modulus": poly.modulus,
        "truncation": poly.trunc_order,
        "coefficients": [poly[i] for i in range(poly.trunc_order)],
    }
    if args.json:
        _emit_json(data, out)
    else:
        var = "v" if total.generator_degree == 4 else "u"
        out.write(f"c = {poly.format(var)}\n")
    return EXIT_OK


def _cmd_chenruan(args, out: TextIO) -> int:
    spec = parse_spec(args.spec)
    classes = conj_classes(spec)
    degrees = cr_degrees(spec)

    def check(i: int) -> None:
        if not 0 <= i < len(classes):
            raise _InputError(f"chenruan: class index {i} out of range 0..{len(classes) - 1}")

    if args.product:
        g, h = args.product
        check(g)
        check(h)
        result = basis_product(spec, g, h)
        data = {"product": [g, h], "result": {str(k): v for k, v in sorted(result.items())}}
        text = f"e{g} * e{h} = " + _linear(result.items(), lambda k: f"e{k}")
    elif args.coproduct is not None:
        g = args.coproduct
        check(g)
        result = basis_coproduct(spec, g)
        data = {"coproduct": g, "result": [{"left": i, "right": j, "coefficient": c} for (i, j), c in sorted(result.items())]}
        text = f"delta(e{g}) = " + _linear(sorted(result.items()), lambda k: f"e{k[0]} (x) e{k[1]}")
    else:
        rows = [
            {"index": c.index, "size": c.size, "centralizer": c.centralizer_order, "degree": d}
            for c, d in zip(classes, degrees)
        ]
        data = {"spec": str(spec), "classes": rows, "pairing_nondegenerate": pairing_nondegenerate(spec)}
        lines = [f"{'class':>5} {'size':>5} {'centralizer':>11} {'degree':>8}"]
        lines += [f"{r['index']:>5} {r['size']:>5} {r['centralizer']:>11} {str(r['degree']):>8}" for r in rows]
        lines.append(f"pairing nondegenerate: {_yes(data['pairing_nondegenerate'])}")
        text = "\n".join(lines)
    if args.json:
        _emit_json(data, out)
    else:
        out.write(text + "\n")
    return EXIT_OK


def _linear(items, label: Callable[[Any], str]) -> str:
    terms = [f"{c} {label(k)}" for k, c in items]
    return " + ".join(terms) if terms else "0"


def _cmd_defect(args, out: TextIO) -> int:
    spec = parse_spec(args.spec)
    value = orbifold_defect(spec)
    if args.json:
        _emit_json({"spec": str(spec), "defect": value}, out)
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def _cmd_pipeline(fn: Callable[[int], Dict[str, Any]], args, out: TextIO) -> int:
    data = fn(args.param)
    if args.json:
        _emit_json(data, out)
    else:
        _emit_mapping(data, out)
    return EXIT_OK


def _thread_count() -> int:
    raw = os.environ.get("FILLCHECK_THREADS", "")
    if not raw:
        return min(8, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError:
        raise _InputError("FILLCHECK_THREADS must be a positive integer") from None
    if value < 1:
        raise _InputError("FILLCHECK_THREADS must be a positive integer")
    return value


def _batch_one(text: str) -> Dict[str, Any]:
    try:
        return report_to_dict(_analyze_checked(text))
    except ConsistencyError:
        raise
    except FillcheckError as exc:
        return {"spec": text, "error": str(exc)}


def _cmd_batch(args, out: TextIO) -> int:
    if args.file == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise _InputError(f"batch: {exc}") from None
    specs = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    threads = _thread_count()
    if threads > 1 and len(specs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_batch_one, specs))
    else:
        results = [_batch_one(s) for s in specs]
    for r in results:
        out.write(json.dumps(r) + "\n")
    return EXIT_INPUT if any("error" in r for r in results) else EXIT_OK


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="fillcheck", description="Exact obstructions to exact fillings of quotient-singularity links.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, help_text: str) -> _Parser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        return p

    add("analyze", "run every obstruction check on an action spec").add_argument("spec")
    add("bernoulli", "Bernoulli number B_n = |B_2n| with its N/D split").add_argument("n", type=int)
    p = add("genus", "coefficients of L_m or Ahat_m")
    p.add_argument("series", help="L or ahat")
    p.add_argument("m", type=int)
    p.add_argument("--chern", action="store_true", help="rewrite in Chern classes")
    add("chern", "total Chern class of the link").add_argument("spec")
    p = add("chenruan", "Chen-Ruan classes and structure constants")
    p.add_argument("spec")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--product", nargs=2, type=int, metavar=("G", "H"))
    group.add_argument("--coproduct", type=int, metavar="G")
    add("defect", "orbifold signature defect").add_argument("spec")
    add("rp-case", "signature pipeline for RP^(2^(k+1)-1)").add_argument("param", type=int, metavar="k")
    add("z3-case", "Z/3 signature equation at m = 3^k or 2*3^k").add_argument("param", type=int, metavar="m")
    add("batch", "one JSON report per spec line of a file ('-' for stdin)").add_argument("file")
    return parser


def usage() -> str:
    return _build_parser().format_help()


def run(argv: Sequence[str], out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    argv = list(argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        if argv and argv[0] in ("-h", "--help"):
            out.write(usage())
            return EXIT_OK
        if argv:
            err.write(f"fillcheck: unknown subcommand {argv[0]!r}\n")
        err.write(usage())
        return EXIT_USAGE
    handlers = {
        "analyze": _cmd_analyze,
        "bernoulli": _cmd_bernoulli,
        "genus": _cmd_genus,
        "chern": _cmd_chern,
        "chenruan": _cmd_chenruan,
        "defect": _cmd_defect,
        "rp-case": lambda a, o: _cmd_pipeline(rp_pipeline, a, o),
        "z3-case": lambda a, o: _cmd_pipeline(z3_pipeline, a, o),
        "batch": _cmd_batch,
    }
    try:
        args = _build_parser().parse_args(argv)
        return handlers[args.command](args, out)
    except SystemExit as exc:  # --help inside a subcommand
        return int(exc.code or 0)
    except ConsistencyError as exc:
        err.write(f"fillcheck: consistency check failed: {exc}\n")
        return EXIT_CONSISTENCY
    except (_InputError, FillcheckError) as exc:
        err.write(f"fillcheck: {exc}\n")
        return EXIT_INPUT


def main(argv: Optional[List[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
