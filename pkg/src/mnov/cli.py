"""Command line interface: ``mnov normalize | verify | table | map-tree``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Dict, List, Optional

from . import dectree, genidx, magnov, spdeidx, verify
from .exactalg import MultiIdx, Poly, linear_combination, poly_mul
from .syntax import (
    ParseError,
    format_coeff,
    format_gen_monomial,
    format_poly,
    format_raw_tree,
    format_spde_monomial,
    format_term,
    format_tree,
    format_word,
    parse,
    poly_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ContextError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _check_letter(a, dims: Optional[int]):
    if isinstance(a, tuple) and dims is not None and len(a) != dims + 1:
        raise ContextError(f"letter {a} has {len(a)} components; --dims {dims} needs {dims + 1}")


def _check_word(seq, dims: Optional[int]):
    for kind, x in seq:
        if kind == "D":
            _check_letter(x, dims)
        elif dims is not None and x > dims:
            raise ContextError(f"d{x} is out of range for --dims {dims}")


def _sorted_alphabet(items):
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


# ---------------------------------------------------------------------------
# normalize

def normalize(kind: str, expr: str, dims: Optional[int] = None, method: str = "rewrite") -> Dict:
    """Normal form of an expression; returns ``{"context", "text", "terms"}``."""
    obj = parse(expr, kind)
    context: Dict = {"kind": kind}
    if dims is not None:
        context["dims"] = dims
    if kind == "magma":
        for a in magnov.letters_of(obj):
            _check_letter(a, dims)
        ctx = genidx.GeneralIndices(
            _sorted_alphabet(set(magnov.letters_of(obj))), _sorted_alphabet(set(magnov.leaves(obj))))
        if method == "solve":
            p = magnov.solve_normal_form(obj, ctx)
        else:
            p = magnov.rewrite_normal_form(obj, ctx)
        context["method"] = method
        fmt = format_term
    elif kind == "genidx":
        for v in obj.keys():
            for a in v.w.keys():
                _check_letter(a, dims)
        context["populated"] = genidx.is_populated(obj)
        if context["populated"]:
            ctx = genidx.GeneralIndices(
                _sorted_alphabet({a for v in obj.keys() for a in v.w.keys()}),
                _sorted_alphabet({v.label for v in obj.keys()}))
            expression = genidx.express_in_generators(obj, ctx)
            context["generators_expression"] = poly_json(expression, format_term)
        p = Poly.basis(obj)
        fmt = format_gen_monomial
    elif kind == "spde":
        tag, body = obj
        if tag == "word":
            _check_word(body, dims)
            p = spdeidx.word_normal_form(body)
            fmt = format_word
        else:
            p = Poly.basis(MultiIdx())
            for label, seq, k in body:
                _check_word(seq, dims)
                v = spdeidx.var_of_word(label, spdeidx.word_normal_form(seq))
                for _ in range(k):
                    p = poly_mul(p, v)
            context["populated"] = all(spdeidx.is_populated(m) for m in p.keys())
            fmt = format_spde_monomial
    elif kind == "tree":
        _check_tree(obj, dims)
        p = dectree.tree_normal_form(obj)
        fmt = format_tree
    else:
        raise ContextError(f"unknown kind {kind!r}")
    return {"context": context, "text": format_poly(p, fmt), "terms": poly_json(p, fmt)}


def _check_tree(t, dims):
    for f in t.factors:
        if f[0] == "X":
            if dims is not None and f[1] > dims:
                raise ContextError(f"X{f[1]} is out of range for --dims {dims}")
        else:
            if not isinstance(f[1], tuple):
                raise ContextError(f"tree edge letters must be tuples, got {f[1]!r}")
            _check_letter(f[1], dims)
            if dims is None:
                dims = len(f[1]) - 1
            _check_tree(f[2], dims)


def map_tree(expr: str, dims: Optional[int] = None) -> Dict:
    raw = parse(expr, "tree")
    _check_tree(raw, dims)
    nf = dectree.tree_normal_form(raw)
    phi = dectree.tree_to_multiindex(nf)
    ed = dectree.elementary_differential(raw)
    return {
        "context": {"kind": "tree", "input": format_raw_tree(raw)},
        "normal_form": poly_json(nf, format_tree),
        "text": format_poly(phi, format_spde_monomial),
        "terms": poly_json(phi, format_spde_monomial),
        "elementary_differential": poly_json(ed, format_spde_monomial),
    }


# ---------------------------------------------------------------------------
# table

def parse_range(text: str):
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise ContextError(f"range must look like a..b, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise ContextError(f"bad range {text!r}")
    return range(lo, hi + 1)


def table(kind: str, degrees, n_letters: int = 1, n_labels: int = 1, dims: int = 1,
          letter_cap: int = 1, d_cap: int = 1) -> List[Dict]:
    if kind in ("dims-gen", "dims-normal"):
        rows = verify.dims_gen_row(degrees, n_letters, n_labels, dims)
        col = "populated" if kind == "dims-gen" else "normal"
        return [{"degree": r["degree"], "count": r[col], "populated": r["populated"],
                 "normal": r["normal"]} for r in rows]
    if kind == "dims-spde":
        out = []
        for n in degrees:
            r = spdeidx.free_generation_check(n, (letter_cap, d_cap), verify.labels(n_labels), dims)
            out.append({"degree": n, "count": r["populated"], "populated": r["populated"],
                        "normal": r["free"], "span": r["span"]})
        return out
    raise ContextError(f"unknown table kind {kind!r}")


def _table_csv(rows: List[Dict]) -> str:
    buf = io.StringIO()
    cols = sorted(rows[0].keys(), key=lambda k: (k != "degree", k)) if rows else ["degree"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mnov", description="Multi-Novikov algebras, multi-indices and decorated trees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    n = sub.add_parser("normalize", help="print the normal form of an expression")
    n.add_argument("--kind", required=True, choices=["magma", "genidx", "spde", "tree"])
    n.add_argument("--dims", type=int, default=None, help="d, so letters have d+1 components")
    n.add_argument("--expr", required=True)
    n.add_argument("--method", choices=["rewrite", "solve"], default="rewrite",
                   help="normal form algorithm for magmatic terms")
    n.add_argument("--format", choices=["text", "json", "both"], default="both")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=list(verify.SUITES))
    v.add_argument("--max-degree", type=int, default=None)
    v.add_argument("--max-leaves", type=int, default=7)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--letters", type=int, default=1)
    v.add_argument("--labels", type=int, default=1)
    v.add_argument("--dims", type=int, default=None)
    v.add_argument("--letter-cap", type=int, default=1)
    v.add_argument("--d-cap", type=int, default=1)
    v.add_argument("--samples", type=int, default=None,
                   help="number of random cases for sampled suites")

    t = sub.add_parser("table", help="dimension tables")
    t.add_argument("--kind", required=True, choices=["dims-gen", "dims-spde", "dims-normal"])
    t.add_argument("--range", default="1..5")
    t.add_argument("--letters", type=int, default=1)
    t.add_argument("--labels", type=int, default=1)
    t.add_argument("--dims", type=int, default=None)
    t.add_argument("--letter-cap", type=int, default=1)
    t.add_argument("--d-cap", type=int, default=1)
    t.add_argument("--format", choices=["json", "csv"], default="json")

    m = sub.add_parser("map-tree", help="map a tree to SPDE multi-indices")
    m.add_argument("--expr", required=True)
    m.add_argument("--dims", type=int, default=None)
    return p


def _verify_kwargs(args) -> Dict:
    s = args.suite
    kw: Dict = {"seed": args.seed}
    md = args.max_degree
    if s == "rotation":
        kw["max_leaves"] = args.max_leaves
    elif s == "freeness-gen":
        kw.update(max_degree=md or 5, n_letters=args.letters, n_labels=args.labels,
                  dims=1 if args.dims is None else args.dims)
    elif s == "freeness-spde":
        kw.update(max_degree=md or 3, dims=1 if args.dims is None else args.dims,
                  letter_cap=args.letter_cap, d_cap=args.d_cap, n_labels=args.labels)
    elif s == "identities":
        kw.update(max_degree=md or 4, dims=1 if args.dims is None else args.dims)
        if args.samples:
            kw["triples"] = args.samples
    elif s == "braces":
        kw["max_degree"] = md or 4
    elif s == "morphism":
        kw.update(max_degree=md or 4, dims=1 if args.dims is None else args.dims)
        if args.samples:
            kw["pairs"] = args.samples
    elif s == "words":
        kw["dims"] = 2 if args.dims is None else args.dims
        if md:
            kw["max_len"] = md
        if args.samples:
            kw["words"] = args.samples
    elif s == "trees":
        kw.update(max_degree=md or 4, dims=1 if args.dims is None else args.dims)
        if args.samples:
            kw["samples"] = args.samples
    return kw


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "normalize":
            out = normalize(args.kind, args.expr, args.dims, args.method)
            if args.format in ("text", "both"):
                print(out["text"])
            if args.format in ("json", "both"):
                print(_dump({"context": out["context"], "terms": out["terms"]}))
            return EXIT_OK
        if args.command == "map-tree":
            out = map_tree(args.expr, args.dims)
            print(out["text"])
            print(_dump({k: v for k, v in out.items() if k != "text"}))
            return EXIT_OK
        if args.command == "table":
            rows = table(args.kind, parse_range(args.range), args.letters, args.labels,
                         1 if args.dims is None else args.dims, args.letter_cap, args.d_cap)
            if args.format == "csv":
                sys.stdout.write(_table_csv(rows))
            else:
                print(_dump({"kind": args.kind, "rows": rows}))
            return EXIT_OK
        if args.command == "verify":
            report = verify.run_suite(args.suite, **_verify_kwargs(args))
            print(_dump(report))
            return EXIT_OK if report["passed"] else EXIT_FAIL
    except ParseError as exc:
        print(f"mnov: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ContextError, verify.UnknownSuite, ValueError) as exc:
        print(f"mnov: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
