"""Command line interface: ``braidsep <command> ...``.

Exit status is 0 on success, 1 on domain errors (bad parameters, matrices
that are not a representation, a published table that does not match) and
2 on usage errors.  Errors go to stderr as ``CODE: message``.

Complex values use the ``RE±IMi`` form.  Values starting with ``-`` must be
attached with ``=``, e.g. ``--a=-1.5+i``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from . import matrix as mx
from .braid import BraidWord, as_flype_form, format_word, parse, reverse
from .cnum import format_complex, parse_complex
from .exceptions import BraidSepError
from .representation import (Rep, RepParams, builtin_lieven_rep, evaluate,
                             family_rep, verify_braid_relation)
from .separation import (DEFAULT_REL_TOL, FLYPE_CAVEAT, Box, DEFAULT_BOX,
                         gap_result, load_catalog, lookup, published_table,
                         reproduce_table, search_separating_params)

CATALOG_ENV = "BRAIDSEP_CATALOG"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"E_USAGE: {message}", file=sys.stderr)
        sys.exit(2)


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _box_arg(text):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4 or vals[0] > vals[1] or vals[2] > vals[3]:
        raise argparse.ArgumentTypeError(
            f"expected RE_MIN,RE_MAX,IM_MIN,IM_MAX, got {text!r}")
    return Box(*vals)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    common.add_argument("--catalog", metavar="PATH",
                        help=f"catalog JSON file (default: ${CATALOG_ENV} or the bundled one)")
    common.add_argument("--tol", type=float, default=DEFAULT_REL_TOL,
                        help="relative separation tolerance (default %(default)g)")

    rep = argparse.ArgumentParser(add_help=False)
    rep.add_argument("--condition", type=int, choices=range(1, 6), default=3)
    rep.add_argument("--branch", choices=("plus", "minus"), default="minus")
    rep.add_argument("--a", type=_complex_arg, help="parameter a, e.g. 2-3i")
    rep.add_argument("--f", type=_complex_arg, help="parameter f, e.g. 7.3")
    rep.add_argument("--builtin", action="store_true",
                     help="use the explicit representation at a primitive cube root of unity")
    rep.add_argument("--rep-file", metavar="PATH", help="representation JSON to import")

    word = argparse.ArgumentParser(add_help=False)
    word.add_argument("text", nargs="?", metavar="WORD", help='braid word, e.g. "s1^-1 s2"')
    word.add_argument("--word", help="braid word (alternative to the positional)")
    word.add_argument("--knot", help="catalog knot name, e.g. 8_17")

    p = _Parser(prog="braidsep", description="Block representations of B3 and braid reversal.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("parse", parents=[common], help="parse and normalize a braid word")
    sp.add_argument("text", metavar="WORD")
    sub.add_parser("reverse", parents=[common, word], help="print the reversed word")

    sp = sub.add_parser("rep", parents=[common, rep], help="build, check or export a representation")
    sp.add_argument("action", choices=("build", "check", "export"))
    sp.add_argument("--input", metavar="PATH", help="representation JSON (for check)")
    sp.add_argument("--output", metavar="PATH", help="write export here instead of stdout")

    for name, help_ in (("eval", "image rho(w) of a word"),
                        ("trace", "trace of rho(w)"),
                        ("gap", "trace gap Tr rho(w) - Tr rho(w')"),
                        ("separate", "does the trace separate w from its reverse?")):
        sub.add_parser(name, parents=[common, rep, word], help=help_)

    sp = sub.add_parser("table", parents=[common, rep], help="trace gaps for every catalog knot")
    sp.add_argument("--published", action="store_true",
                    help="use the three published parameter sets and compare with the printed values")

    sp = sub.add_parser("search", parents=[common, word],
                        help="random search for separating parameters")
    sp.add_argument("--condition", type=int, choices=range(1, 6), default=3)
    sp.add_argument("--branch", choices=("plus", "minus"), default="minus")
    sp.add_argument("--a", type=_complex_arg, help="pin a instead of sampling it")
    sp.add_argument("--f", type=_complex_arg, help="pin f instead of sampling it")
    sp.add_argument("--a-box", type=_box_arg, default=DEFAULT_BOX, metavar="BOX")
    sp.add_argument("--f-box", type=_box_arg, default=DEFAULT_BOX, metavar="BOX")
    sp.add_argument("--draws", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--top", type=int, default=10, help="rows to show (pretty output)")

    sub.add_parser("catalog", parents=[common], help="list the knot catalog")
    return p


# -- helpers -----------------------------------------------------------------

def _catalog(args):
    return load_catalog(args.catalog or os.environ.get(CATALOG_ENV) or None)


def _word(args) -> tuple[BraidWord, Optional[str]]:
    given = [x for x in (args.text, args.word, args.knot) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of WORD, --word or --knot")
    if args.knot is not None:
        entry = lookup(args.knot, _catalog(args))
        if entry is None:
            raise UsageError(f"unknown knot {args.knot!r}")
        return entry.word, entry.name
    return parse(given[0]), None


def _branch(args) -> int:
    return 1 if args.branch == "plus" else -1


def _params(args) -> RepParams:
    if args.a is None:
        raise UsageError("--a is required (or use --builtin / --rep-file)")
    return RepParams(args.condition, _branch(args), args.a, args.f)


def _rep(args) -> tuple[Rep, Optional[RepParams]]:
    if args.builtin and args.rep_file:
        raise UsageError("--builtin and --rep-file are mutually exclusive")
    if args.builtin:
        return builtin_lieven_rep(), None
    if args.rep_file:
        return _read_rep(args.rep_file), None
    p = _params(args)
    return family_rep(p), p


def _read_rep(path) -> Rep:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    try:
        return Rep.from_json(obj)
    except ValueError as exc:
        if isinstance(exc, BraidSepError):
            raise
        raise UsageError(str(exc))


def _emit(out, fmt: str, record: dict, pretty_lines: Sequence[str]):
    if fmt == "json":
        out.write(json.dumps(record, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(record), lineterminator="\n")
        writer.writeheader()
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                         for k, v in record.items()})
    else:
        for line in pretty_lines:
            out.write(line + "\n")


def _cstr(z: complex) -> str:
    return format_complex(z)


# -- commands ----------------------------------------------------------------

def cmd_parse(args, out):
    w = parse(args.text)
    rec = {"word": format_word(w), "syllables": [list(s) for s in w], "count": len(w)}
    _emit(out, args.format, rec, [format_word(w), f"syllables: {len(w)}"])


def cmd_reverse(args, out):
    w, _ = _word(args)
    rev = reverse(w)
    _emit(out, args.format, {"word": format_word(w), "reverse": format_word(rev)},
          [format_word(rev)])


def _rep_record(r: Rep) -> dict:
    return {
        "provenance": r.provenance,
        "relation_residual": verify_braid_relation(r),
        "det_sigma1": _cstr(r.det[0]),
        "det_sigma2": _cstr(r.det[1]),
        "trace_sigma1": _cstr(mx.trace(r.sigma1)),
    }


def cmd_rep(args, out):
    if args.action == "check":
        if not args.input:
            raise UsageError("rep check needs --input PATH")
        r = _read_rep(args.input)
    else:
        r, _ = _rep(args)
    if args.action == "export":
        text = json.dumps(r.to_json(), indent=2, sort_keys=True) + "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)
        return
    rec = _rep_record(r)
    lines = [f"{k}: {v}" for k, v in rec.items()]
    if args.action == "check":
        lines.insert(0, "valid representation")
    _emit(out, args.format, rec, lines)


def cmd_eval(args, out):
    w, _ = _word(args)
    r, _ = _rep(args)
    m = evaluate(r, w)
    if args.format == "json":
        out.write(json.dumps(mx.to_json(m), sort_keys=True) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        for row in m:
            writer.writerow([_cstr(z) for z in row])
    else:
        for row in m:
            out.write("  ".join(format_complex(z, 8) for z in row) + "\n")


def cmd_trace(args, out):
    w, _ = _word(args)
    r, _ = _rep(args)
    t = mx.trace(evaluate(r, w))
    _emit(out, args.format, {"word": format_word(w), "trace_re": t.real, "trace_im": t.imag},
          [format_complex(t, 10)])


def _gap_common(args):
    w, knot = _word(args)
    r, p = _rep(args)
    res = gap_result(r, w, knot or "", p, args.tol)
    caveat = None
    if knot is not None:
        entry = lookup(knot, _catalog(args))
        if entry.flype:
            caveat = FLYPE_CAVEAT.format(name=knot)
    elif as_flype_form(w) is not None:
        caveat = FLYPE_CAVEAT.format(name="this word")
    rec = {
        "knot": knot,
        "word": format_word(w),
        "reverse": format_word(reverse(w)),
        "gap_re": res.gap.real,
        "gap_im": res.gap.imag,
        "separated": res.separated,
        "tolerance": args.tol,
    }
    return res, rec, caveat


def cmd_gap(args, out):
    res, rec, _ = _gap_common(args)
    _emit(out, args.format, rec, [format_complex(res.gap, 10)])


def cmd_separate(args, out):
    res, rec, caveat = _gap_common(args)
    rec["caveat"] = caveat
    verdict = ("separated: w and w' are not conjugate" if res.separated
               else "not separated: the trace does not distinguish w from w'")
    lines = [verdict, f"gap: {format_complex(res.gap, 10)}"]
    if caveat and res.separated:
        lines.append(caveat)
    _emit(out, args.format, rec, lines)


def cmd_table(args, out) -> int:
    entries = _catalog(args)
    if args.published:
        pub = published_table()
        table = reproduce_table(pub.params, entries, pub.rows, args.tol)
    else:
        table = reproduce_table([_params(args)], entries, None, args.tol)
    if args.format == "json":
        out.write(table.to_json() + "\n")
    elif args.format == "csv":
        out.write(table.to_csv())
    else:
        for j, p in enumerate(table.params):
            out.write(f"column {j}: condition {p.condition}, branch {p.branch:+d}, "
                      f"a = {format_complex(p.a, 6)}, f = {format_complex(p.f, 6)}\n")
        for r in table.rows:
            line = f"{r.knot:>5}  col {r.column}  {format_complex(r.gap, 6):>28}"
            if r.reference is not None:
                mark = "match" if r.matches_reference else "MISMATCH"
                line += f"  printed {str(r.reference):>20}  {mark}"
            out.write(line + "\n")
        if table.has_reference:
            n_bad = len(table.mismatches())
            out.write(f"{len(table.rows) - n_bad}/{len(table.rows)} cells match the printed values\n")
    if table.has_reference and not table.all_match():
        return 1
    return 0


def cmd_search(args, out):
    w, _ = _word(args)
    a_box = Box.point(args.a) if args.a is not None else args.a_box
    f_box = Box.point(args.f) if args.f is not None else args.f_box
    hits = search_separating_params(w, args.condition, _branch(args), a_box, f_box,
                                    args.draws, args.seed, args.tol)
    records = [{"a": _cstr(h.params.a), "f": _cstr(h.params.f),
                "condition": h.params.condition, "branch": h.params.branch,
                "gap_re": h.gap.real, "gap_im": h.gap.imag, "score": h.score}
               for h in hits]
    if args.format == "json":
        out.write(json.dumps({"word": format_word(w), "draws": args.draws,
                              "seed": args.seed, "hits": records}, indent=2) + "\n")
    elif args.format == "csv":
        fields = ["a", "f", "condition", "branch", "gap_re", "gap_im", "score"]
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
    else:
        out.write(f"{len(hits)}/{args.draws} draws separate {format_word(w)}\n")
        for h in hits[:args.top]:
            out.write(f"a = {format_complex(h.params.a, 6)}, f = {format_complex(h.params.f, 6)}"
                      f"  gap = {format_complex(h.gap, 6)}  relative = {h.score:.3g}\n")


def cmd_catalog(args, out):
    entries = _catalog(args)
    recs = [{"name": e.name, "crossings": e.crossings, "word": format_word(e.word),
             "aliases": [format_word(x) for x in e.aliases]} for e in entries]
    if args.format == "json":
        out.write(json.dumps(recs, indent=2) + "\n")
    elif args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=["name", "crossings", "word", "aliases"],
                                lineterminator="\n")
        writer.writeheader()
        for rec in recs:
            writer.writerow({**rec, "aliases": "; ".join(rec["aliases"])})
    else:
        for rec in recs:
            out.write(f"{rec['name']:>5}  {rec['crossings']:>2}  {rec['word']}\n")


COMMANDS = {
    "parse": cmd_parse, "reverse": cmd_reverse, "rep": cmd_rep, "eval": cmd_eval,
    "trace": cmd_trace, "gap": cmd_gap, "separate": cmd_separate, "table": cmd_table,
    "search": cmd_search, "catalog": cmd_catalog,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    old_err, sys.stderr = sys.stderr, err
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    finally:
        sys.stderr = old_err
    try:
        status = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"E_USAGE: {exc}", file=err)
        return 2
    except BraidSepError as exc:
        print(f"{exc.code}: {exc}", file=err)
        return 1
    return status or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
