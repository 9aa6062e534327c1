"""Command-line front end.

Subcommands map one-to-one onto the library: lifting braid monodromies
through the double cover, assembling and simplifying the fundamental
group presentation, patching the extra fiber relation, abelianization,
coset enumeration, Alexander polynomials, the exact curve checks, and
the full replay pipeline with stage diffing.
"""

from __future__ import annotations

import argparse
import sys

from .abelian import abelian_invariants
from .alexander import WeightedPresentation, alexander_polynomial
from .coset import Overflow, enumerate_cosets
from .cover import lift_monodromy
from .errors import CoverError, ParseError
from . import pipeline
from .presentation import (
    canonicalize,
    format_presentation,
    parse_presentation,
    tietze_simplify,
)
from .words import braid_action, parse_braid, parse_word


def _parse_k(text: str) -> int | None:
    if text == "all":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'all', got {text!r}")
    if not 0 <= value <= 8:
        raise argparse.ArgumentTypeError("k must lie in 0..8")
    return value


def _parse_weights(text: str) -> dict[str, int]:
    weights: dict[str, int] = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        name, sep, value = piece.partition("=")
        if not sep:
            raise ValueError(f"weight {piece!r} is not of the form name=integer")
        weights[name.strip()] = int(value)
    if not weights:
        raise ValueError("empty weight list")
    return weights


def _parse_subgroup(text: str) -> tuple:
    words = []
    for piece in text.split(","):
        piece = piece.strip()
        if piece:
            words.append(parse_word(piece))
    return tuple(words)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vankampen",
        description="Fundamental-group computations for plane sextics via braid monodromy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lift-monodromy", help="lift a braid action through the double cover")
    p.add_argument("braid", help="braid word, e.g. 's1^-3 s2 s1^3'")
    p.add_argument("--strands", type=int, default=3, help="number of strands (default 3)")

    p = sub.add_parser("zvk", help="assemble the presentation from the built-in monodromies")
    p.add_argument("--raw", action="store_true", help="print the unsimplified assembly")

    p = sub.add_parser("simplify", help="canonically simplify a presentation")
    p.add_argument("presentation", help="e.g. 'gens: p, q; rels: p q p^-1 q^-1'")
    p.add_argument("--canonical-only", action="store_true", help="sort and reduce relators, no eliminations")

    p = sub.add_parser("patch", help="patch the extra fiber relation and resimplify")
    p.add_argument("--k", type=_parse_k, default=None, help="patch exponent 0..8 or 'all' (default)")

    p = sub.add_parser("abelianize", help="abelian invariants of a presentation")
    p.add_argument("presentation")

    p = sub.add_parser("coset-enum", help="index of a finitely generated subgroup")
    p.add_argument("presentation")
    p.add_argument("--subgroup", default="", help="comma-separated generator words")
    p.add_argument("--max-cosets", type=int, default=100_000, help="definition budget")

    p = sub.add_parser("alexander", help="Alexander polynomial from a weighted presentation")
    p.add_argument("presentation")
    p.add_argument("--weights", required=True, help="e.g. 's1=1,s2=1'")

    sub.add_parser("verify-curves", help="run the exact curve checks")

    p = sub.add_parser("reproduce-paper", help="replay every stage and diff against expectations")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--max-cosets", type=int, default=10_000)
    p.add_argument("--k", type=_parse_k, default=None, help="patch exponent 0..8 or 'all' (default)")
    p.add_argument("--out", default=None, help="also write the report to this file")

    return parser


def _cmd_lift_monodromy(args) -> int:
    braid = parse_braid(args.braid, args.strands)
    action = braid_action(braid)
    print(f"action: {action}")
    print(f"lift: {lift_monodromy(action)}")
    return 0


def _cmd_zvk(args) -> int:
    assembled = pipeline._assembled("standard")
    if args.raw:
        print(format_presentation(assembled))
    else:
        print(format_presentation(tietze_simplify(assembled)))
    return 0


def _cmd_simplify(args) -> int:
    pres = parse_presentation(args.presentation)
    if args.canonical_only:
        print(format_presentation(canonicalize(pres)))
    else:
        print(format_presentation(tietze_simplify(pres)))
    return 0


def _cmd_patch(args) -> int:
    k_values = tuple(range(9)) if args.k is None else (args.k,)
    print(format_presentation(pipeline._patched("standard", k_values)))
    return 0


def _cmd_abelianize(args) -> int:
    print(abelian_invariants(parse_presentation(args.presentation)))
    return 0


def _cmd_coset_enum(args) -> int:
    pres = parse_presentation(args.presentation)
    result = enumerate_cosets(pres, subgroup=_parse_subgroup(args.subgroup), max_cosets=args.max_cosets)
    if isinstance(result, Overflow):
        print(f"overflow: budget of {result.max_cosets} cosets exhausted")
        return 3
    print(f"index: {result.count}")
    return 0


def _cmd_alexander(args) -> int:
    pres = parse_presentation(args.presentation)
    weighted = WeightedPresentation(pres, _parse_weights(args.weights))
    print(alexander_polynomial(weighted))
    return 0


def _cmd_verify_curves(args) -> int:
    expected = pipeline.expected_stage_texts()["curve-checks"].split("\n")
    try:
        computed = pipeline._stage_curves("standard", (0,), 10_000).split("\n")
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ok = True
    for i, want in enumerate(expected):
        got = computed[i] if i < len(computed) else "<missing>"
        if got == want:
            print(f"ok    {got}")
        else:
            ok = False
            print(f"FAIL  {got}    (expected: {want})")
    print("all curve checks passed" if ok else "curve checks FAILED")
    return 0 if ok else 1


def _cmd_reproduce_paper(args) -> int:
    report = pipeline.reproduce_paper(k=args.k, max_cosets=args.max_cosets)
    rendered = report.to_text() if args.format == "text" else report.to_json()
    print(rendered, end="")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    return 0 if report.overall else 1


_COMMANDS = {
    "lift-monodromy": _cmd_lift_monodromy,
    "zvk": _cmd_zvk,
    "simplify": _cmd_simplify,
    "patch": _cmd_patch,
    "abelianize": _cmd_abelianize,
    "coset-enum": _cmd_coset_enum,
    "alexander": _cmd_alexander,
    "verify-curves": _cmd_verify_curves,
    "reproduce-paper": _cmd_reproduce_paper,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, CoverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
