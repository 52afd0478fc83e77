"""Command-line front end.

Exit codes: 0 success, 1 bad input or unmet precondition, 2 internal check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import AlgebraFormatError, parse_algebra
from .bar import k2_low_degree_test
from .chains import betti_table, check_k2, classify, enumerate_chains
from .linalg import Field
from .presentation import PresentationError, hilbert_coefficients, parse_presentation
from .showcase import HILBERT_TYPO_NOTE, is_example, run_demo
from .yoneda import ChainCollisionError, build_ext_algebra, export_algebra, ext_hilbert

DEFAULT_MAX_LEVEL = 32
DEFAULT_MAX_DEGREE = 20
DEFAULT_FIELD = "32003"


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_presentation(text, source=path)


def _field(args, p=None) -> Field:
    if args.field is not None:
        return Field.parse(args.field)
    if p is not None and p.field_hint is not None:
        return Field(p.field_hint)
    return Field.parse(DEFAULT_FIELD)


def _warnings(p) -> list[str]:
    return [HILBERT_TYPO_NOTE] if is_example(p) else []


def _fmt_table(table: dict) -> list[str]:
    return [f"  ({n}, {m}): {v}" for (n, m), v in sorted(table.items())]


# -- commands: each returns (results, text lines, warnings) -------------------


def cmd_hilbert(args):
    p = _load(args.input)
    dims = hilbert_coefficients(p, args.max_degree)
    results = {"max_degree": args.max_degree, "dims": dims}
    lines = [f"dim A_{k} = {v}" for k, v in enumerate(dims)]
    return results, lines, _warnings(p)


def cmd_chains(args):
    p = _load(args.input)
    chains = enumerate_chains(p, args.max_level)
    levels = [[{"tower": c.format(p), "word": p.format_word(c.word), "degree": c.internal_degree} for c in lv] for lv in chains.levels]
    while levels and not levels[-1] and len(levels) > 1 and not levels[-2]:
        levels.pop()
    results = {"levels": levels, "sizes": [len(lv) for lv in levels], "terminated": chains.terminated}
    lines = []
    for n, lv in enumerate(levels, start=1):
        lines.append(f"level {n}: {len(lv)} chains")
        lines += [f"  {c['tower']}  word {c['word']}  degree {c['degree']}" for c in lv]
    lines.append("resolution terminated" if chains.terminated else f"truncated at level {args.max_level}")
    return results, lines, _warnings(p)


def cmd_betti(args):
    p = _load(args.input)
    chains = enumerate_chains(p, args.max_level)
    bt = betti_table(chains)
    cls = classify(bt)
    sizes = chains.sizes()
    if chains.terminated:
        sizes = sizes[: sizes.index(0) + 1]
    results = {
        "level_sizes": sizes,
        "terminated": chains.terminated,
        "betti": [[n, m, v] for (n, m), v in sorted(bt.entries.items())],
        "classification": {"kind": cls.kind, "D": cls.D, "within_computed_range": cls.truncated, "max_level": cls.max_level},
    }
    lines = ["level sizes: " + ", ".join(map(str, sizes))]
    lines.append("Betti table dim Ext^{n,m}:")
    lines += _fmt_table(bt.entries)
    lines.append(f"classification: {cls}")
    return results, lines, _warnings(p)


def cmd_check_k2(args):
    p = _load(args.input)
    cert = check_k2(p)
    fmt = p.format_word
    sets = [[fmt(w) for w in s] for s in cert.s_sets]
    results = {
        "verdict": cert.verdict,
        "s_sets": sets,
        "checks": [{"b": fmt(c.b), "a": fmt(c.a), "reason": c.reason} for c in cert.checks],
        "violations": [{"b": fmt(c.b), "a": fmt(c.a)} for c in cert.violations],
    }
    lines = [f"S_{k + 1} = {{{', '.join(s)}}}" for k, s in enumerate(sets)]
    lines += [f"  b={c['b']} a={c['a']}: {c['reason']}" for c in results["checks"]]
    if cert.certified:
        lines.append("verdict: certified (A is K2)")
    else:
        lines.append("verdict: criterion violated; witness pairs " + ", ".join(f"(a={v['a']}, b={v['b']})" for v in results["violations"]))
    return results, lines, _warnings(p)


def _build_ext(p, max_level):
    chains = enumerate_chains(p, max_level)
    if chains.truncated:
        raise UsageError(
            f"chain enumeration did not terminate by level {max_level}; E(A) is not built from a truncated resolution"
        )
    try:
        return build_ext_algebra(chains)
    except ChainCollisionError as exc:
        raise InvariantError(str(exc)) from None


def cmd_ext_table(args):
    p = _load(args.input)
    ext = _build_ext(p, args.max_level)
    alg = ext.algebra
    products = [
        [alg.labels[i], alg.labels[j], alg.labels[k]] for (i, j), terms in sorted(alg.sc.items()) for k, _ in terms
    ]
    results = {"dims": ext_hilbert(alg), "dimension": alg.dim, "basis": [[l, d] for l, d in zip(alg.labels, alg.degrees)], "products": products}
    lines = ["dim E^n(A): " + ", ".join(map(str, results["dims"])) + f"  (total {alg.dim})"]
    lines += [f"  {a} * {b} = {c}" for a, b, c in products]
    if args.export:
        Path(args.export).write_text(export_algebra(alg), encoding="utf-8")
        lines.append(f"structure constants written to {args.export}")
        results["exported"] = args.export
    return results, lines, _warnings(p)


def cmd_yoneda_k2(args):
    warnings = []
    if args.algebra_file:
        try:
            alg = parse_algebra(Path(args.algebra_file).read_text(encoding="utf-8"), source=args.algebra_file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.algebra_file}: {exc.strerror}") from None
        field_ = _field(args)
        source = "algebra file"
    else:
        if not args.input:
            raise UsageError("yoneda-k2 needs a presentation file or --algebra-file")
        p = _load(args.input)
        field_ = _field(args, p)
        alg = _build_ext(p, args.max_level).algebra
        warnings = _warnings(p)
        source = "E(A)"
    summary = k2_low_degree_test(alg, d_max=args.cohdeg_max, field_=field_, with_witnesses=args.witnesses)
    first = summary.first_failure_degree
    results = {
        "algebra": source,
        "dimension": alg.dim,
        "field": summary.field,
        "d_max": summary.d_max,
        "tor": {str(i): {str(d): v for d, v in summary.tor_by_degree(i).items()} for i in (1, 2, 3)},
        "tor1_support": summary.tor1_support,
        "coproduct_kernel": {str(d): v for d, v in summary.kernel_dims.items()},
        "verdict": summary.verdict,
        "first_failure": None if first is None else {"cohomological_degree": 3, "internal_degree": first},
    }
    if args.witnesses:
        results["witnesses"] = {
            str(d): [w.as_pairs(alg, field_) for w in ws] for d, ws in summary.witnesses.items()
        }
    lines = [f"{source}: dimension {alg.dim}, field {summary.field}, internal degrees <= {summary.d_max}"]
    for i in (1, 2, 3):
        lines.append(f"Tor_{i} by degree: " + ", ".join(f"{d}:{v}" for d, v in summary.tor_by_degree(i).items()))
    lines.append("coproduct kernel on Tor_3 by degree: " + ", ".join(f"{d}:{v}" for d, v in summary.kernel_dims.items()))
    if first is None:
        lines.append("verdict: generated-by-lower (Ext^3 generated by Ext^1 and Ext^2)")
    else:
        lines.append(
            f"verdict: new-generators-found: not generated by E^1 and E^2 - witness at cohomological degree 3, internal degree {first}"
        )
        if source == "E(A)":
            lines.append("E(A) is not a K2 algebra")
    if args.witnesses:
        for d, ws in summary.witnesses.items():
            for w in ws:
                lines.append(f"  witness (3, {d}): {w.format(alg, field_)}")
    return results, lines, warnings


def cmd_paper_demo(args):
    field_ = _field(args)
    try:
        report = run_demo(field_, args.max_level)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    results = {
        "field": report.field,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        "all_passed": report.all_passed,
    }
    lines = [c.line() for c in report.checks]
    lines.append(f"{sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed over {report.field}")
    if report.all_passed:
        lines.append("A is K2, but E(A) is not K2")
    return results, lines, report.warnings


COMMANDS = {
    "hilbert": cmd_hilbert,
    "betti": cmd_betti,
    "chains": cmd_chains,
    "check-k2": cmd_check_k2,
    "ext-table": cmd_ext_table,
    "yoneda-k2": cmd_yoneda_k2,
    "paper-demo": cmd_paper_demo,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="k2yoneda", description="Homological invariants of graded monomial algebras.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--field", default=None, help="prime p, or Q for the rationals (default 32003)")
    common.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL)
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("hilbert", "betti", "chains", "check-k2", "ext-table"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input")
        if name == "ext-table":
            sp.add_argument("--export", metavar="PATH", help="write the structure-constant file")
    sp = sub.add_parser("yoneda-k2", parents=[common])
    sp.add_argument("input", nargs="?")
    sp.add_argument("--algebra-file", metavar="PATH", help="analyse a structure-constant file directly")
    sp.add_argument("--cohdeg-max", type=int, default=None, help="largest internal degree of E(A) examined")
    sp.add_argument("--witnesses", action="store_true", help="print witness cycles")
    sub.add_parser("paper-demo", parents=[common])
    return parser


def validate_args(args) -> None:
    if args.max_level < 1:
        raise UsageError("--max-level must be >= 1")
    if args.max_degree < 0:
        raise UsageError("--max-degree must be >= 0")
    if args.field is not None:
        try:
            Field.parse(args.field)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if getattr(args, "cohdeg_max", None) is not None and args.cohdeg_max < 1:
        raise UsageError("--cohdeg-max must be >= 1")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        validate_args(args)
        results, lines, warnings = COMMANDS[args.command](args)
    except (UsageError, PresentationError, AlgebraFormatError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        doc = {"command": args.command, "input": getattr(args, "input", None), "results": results, "warnings": warnings}
        if getattr(args, "algebra_file", None):
            doc["input"] = args.algebra_file
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for w in warnings:
            out.write(f"warning: {w}\n")
        out.write("\n".join(lines) + "\n")
    if args.command == "paper-demo" and not results["all_passed"]:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
