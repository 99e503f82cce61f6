"""Command-line front end.

Each invocation prints a single JSON document (sorted keys, canonical
symbol/class text, byte-stable across runs) to stdout.  Exit codes: 0 on
success, 1 when a check verb finds a mathematical assertion violated, 2 on
parse or contract errors (with a JSON error object on stderr).
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys

from .combinatorics import Family, ParseError, degenerate_class, parse_bipartition
from .mn_rule import ContractError, MNCache, value
from .qpoly import (
    babbage_residue,
    degree_congruence_check,
    torus_order,
    unipotent_degree,
)
from .scans import (
    cartan_sign_pairs,
    corrigendum_check,
    corrigendum_row,
    family_tag,
    scan_nonvanishing,
)
from .symbols import (
    cohooks,
    defect,
    enumerate_symbols,
    hooks,
    kind,
    normalize,
    parse_symbol,
)
from .tori import enumerate_torus_types, is_ell_singular, regular_guarantee


class CheckFailure(Exception):
    """A *-check verb found a violated mathematical assertion."""


def _dump(doc) -> None:
    print(json.dumps(doc, sort_keys=True))


def _cmd_value(args) -> dict:
    family = Family.from_text(args.family)
    sym = parse_symbol(args.symbol)
    bp = parse_bipartition(args.cls)
    cache = MNCache()
    if args.cache:
        cache.load(args.cache)
    cv = value(sym, bp, family, cache=cache)
    if args.cache:
        cache.append_new(args.cache)
    return {
        "family": family.value,
        "symbol": normalize(sym).text(),
        "class": bp.text(),
        "value": cv.value,
        "degenerate_character": cv.degenerate_character,
        "degenerate_class": cv.degenerate_class,
    }


def _cmd_symbols(args) -> dict:
    family = Family.from_text(args.family)
    syms = enumerate_symbols(args.n, family_tag(family))
    return {
        "family": family.value,
        "n": args.n,
        "count": len(syms),
        "symbols": [
            {
                "symbol": s.text(),
                "defect": defect(s),
                "degenerate": kind(s).degenerate,
            }
            for s in syms
        ],
    }


def _cmd_hooks(args) -> dict:
    sym = parse_symbol(args.symbol)

    def render(moves):
        return [
            {"site": list(m.site), "sign": m.sign, "result": m.result.text()}
            for m in moves
        ]

    return {
        "symbol": normalize(sym).text(),
        "d": args.d,
        "hooks": render(hooks(sym, args.d)),
        "cohooks": render(cohooks(sym, args.d)),
    }


def _cmd_degree(args) -> dict:
    sym = parse_symbol(args.symbol)
    poly = unipotent_degree(sym)
    doc = {"symbol": normalize(sym).text(), "degree_poly": list(poly.coeffs)}
    if args.q is not None:
        doc["q"] = args.q
        doc["degree"] = poly(args.q)
    return doc


def _cmd_congruence(args) -> dict:
    rep = degree_congruence_check(parse_symbol(args.symbol), args.q, args.ell)
    return {
        "symbol": rep.symbol,
        "q": rep.q,
        "ell": rep.ell,
        "d": rep.d,
        "chi1": rep.chi1,
        "val_minus": rep.val_minus,
        "val_plus": rep.val_plus,
        "phi_d_ell": rep.phi_d_ell,
        "congruent_pm1": rep.congruent_pm1,
    }


def _cmd_babbage(args) -> dict:
    res = babbage_residue(args.d, args.h)
    doc = {"d": args.d, "h": args.h, "residue": str(res)}
    if not res.is_zero():
        raise CheckFailure(json.dumps(doc, sort_keys=True))
    return doc


def _cmd_tori(args) -> dict:
    family = Family.from_text(args.family)
    out = []
    for bp in sorted(enumerate_torus_types(family, args.n), key=lambda b: b.text()):
        guarantee = regular_guarantee(family, args.q, bp)
        out.append(
            {
                "class": bp.text(),
                "order_poly": list(torus_order(bp).coeffs),
                "ell_singular": is_ell_singular(bp, args.q, args.ell),
                "regular": guarantee.tag,
                "rule": guarantee.rule,
                "degenerate_class": degenerate_class(bp, family),
            }
        )
    return {"family": family.value, "n": args.n, "q": args.q, "ell": args.ell, "tori": out}


def _cmd_scan(args):
    family = Family.from_text(args.family)
    cache = MNCache()
    if args.cache:
        cache.load(args.cache)
    report = scan_nonvanishing(
        family, args.n, args.q, args.ell, threads=args.threads, cache=cache
    )
    if args.cache:
        cache.append_new(args.cache)
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
        return None
    return report.to_dict()


def _cmd_cartan_pairs(args) -> dict:
    rep = cartan_sign_pairs(int(args.case), args.d, args.r)
    if not rep["ok"]:
        raise CheckFailure(json.dumps(rep, sort_keys=True))
    return rep


def _cmd_corrigendum(args) -> dict:
    g, h = corrigendum_row(args.case, args.n)
    rep = corrigendum_check(g, h, args.q, args.p)
    if not rep["ok"]:
        raise CheckFailure(json.dumps(rep, sort_keys=True))
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unichars",
        description="Exact unipotent character values on regular semisimple classes",
    )
    parser.add_argument("--input", help="batch file: one command line per row")
    sub = parser.add_subparsers(dest="verb")

    p = sub.add_parser("value", help="character value on a class")
    p.add_argument("--family", required=True)
    p.add_argument("--symbol", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--cache")
    p.set_defaults(func=_cmd_value)

    p = sub.add_parser("symbols", help="enumerate symbols of a rank")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_symbols)

    p = sub.add_parser("hooks", help="hooks and cohooks of a symbol")
    p.add_argument("--symbol", required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_hooks)

    p = sub.add_parser("degree", help="generic degree of a symbol")
    p.add_argument("--symbol", required=True)
    p.add_argument("--q", type=int)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("congruence", help="degree congruence report")
    p.add_argument("--symbol", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=_cmd_congruence)

    p = sub.add_parser("babbage", help="quantum-binomial congruence residue")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=_cmd_babbage)

    p = sub.add_parser("tori", help="torus types with singularity/regularity")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=_cmd_tori)

    p = sub.add_parser("scan", help="non-vanishing scan over a group")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--threads", type=int)
    p.add_argument("--cache")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("cartan-pairs", help="opposite-sign torus pair check")
    p.add_argument("--case", required=True)
    p.add_argument("--d", type=int, required=True, help="d for odd cases, e for even")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=_cmd_cartan_pairs)

    p = sub.add_parser("corrigendum", help="large-subgroup index check")
    p.add_argument("--case", required=True, help="table row key, e.g. sp or g2")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=_cmd_corrigendum)

    return parser


def _run_single(parser: argparse.ArgumentParser, argv: list[str]) -> tuple[int, object]:
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code) if exc.code else 2, None)
    if not getattr(args, "verb", None):
        parser.print_usage(sys.stderr)
        return 2, None
    try:
        return 0, args.func(args)
    except CheckFailure as exc:
        print(str(exc), file=sys.stderr)
        return 1, None
    except (ParseError, ContractError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2, None


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()

    if argv[:1] == ["--input"] or (argv and argv[0].startswith("--input=")):
        ns, _rest = parser.parse_known_args(argv)
        docs = []
        status = 0
        with open(ns.input, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                code, doc = _run_single(parser, shlex.split(line))
                status = max(status, code)
                docs.append(doc)
        _dump(docs)
        return status

    code, doc = _run_single(parser, argv)
    if doc is not None:
        _dump(doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
