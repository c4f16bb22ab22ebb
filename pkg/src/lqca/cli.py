"""``qca`` command line tool.

Exit codes: 0 well-formed or success, 1 not well-formed, 2 usage, parse,
resource or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import oracle
from .core import Interval, ext, idom
from .decider import DEFAULT_SPAN_LIMIT, Verdict, decide, normalize, simplify
from .errors import ConsistencyError, LqcaError
from .exact import format_rational
from .io import (
    parse_config,
    parse_lqca,
    parse_plqca,
    render_config,
    render_lqca,
    render_normalized,
)
from .plqca import check_theorem_equivalence, compose

EXIT_OK, EXIT_REJECT, EXIT_ERROR = 0, 1, 2

REPORT_KEYS = ("well_formed", "n", "r", "span", "expansion_factor",
               "norm_check", "orthogonality_check", "witness", "elapsed_ms")


def _norm_witness(a, f) -> dict:
    return {
        "kind": "norm",
        "config": render_config(f.config, a.alphabet),
        "sq_norm": format_rational(f.sq_norm),
        "cycle": [a.alphabet.word_name(w) for w in f.cycle.labels],
    }


def _ortho_witness(a, f) -> dict:
    return {
        "kind": "orthogonality",
        "config": render_config(f.config, a.alphabet),
        "config2": render_config(f.config2, a.alphabet),
        "inner_product": str(f.inner),
        "walk": [[a.alphabet.word_name(w1), a.alphabet.word_name(w2)] for w1, w2 in f.walk],
    }


def _status(checked: bool, failure) -> str:
    if not checked:
        return "skipped"
    return "failed" if failure is not None else "passed"


def build_report(a, verdict: Verdict, elapsed_ms: float, emit_witness: bool = False) -> dict:
    nb = a.neighborhood
    norm_w = _norm_witness(a, verdict.norm_failure) if verdict.norm_failure else None
    orth_w = _ortho_witness(a, verdict.orthogonality_failure) if verdict.orthogonality_failure else None
    norm_check = {"status": _status(verdict.norm_checked, norm_w)}
    orth_check = {"status": _status(verdict.orthogonality_checked, orth_w)}
    witness = None
    if emit_witness:
        norm_check["witness"] = norm_w
        orth_check["witness"] = orth_w
        witness = norm_w or orth_w
    return {
        "well_formed": verdict.well_formed,
        "n": a.size,
        "r": nb.size,
        "span": nb.span,
        "expansion_factor": format_rational(nb.expansion_factor),
        "norm_check": norm_check,
        "orthogonality_check": orth_check,
        "witness": witness,
        "elapsed_ms": round(elapsed_ms, 3),
    }


def format_text(name: str, report: dict, verdict: Verdict, a) -> str:
    lines = [f"{name}: {'well-formed' if report['well_formed'] else 'NOT well-formed'}",
             f"  n = {report['n']}, r = {report['r']}, span = {report['span']}, "
             f"expansion factor = {report['expansion_factor']}"]
    if verdict.simplification is not None:
        lines.append(f"  simplified to size n' = {verdict.simplification.new_size}")
    lines.append(f"  norm check: {report['norm_check']['status']}")
    f = verdict.norm_failure
    if f is not None:
        lines.append(f"    witness: config {render_config(f.config, a.alphabet)!r} "
                     f"has column squared norm {format_rational(f.sq_norm)}")
        lines.append(f"    cycle: {' | '.join(a.alphabet.word_name(w) for w in f.cycle.labels)}")
    lines.append(f"  orthogonality check: {report['orthogonality_check']['status']}")
    g = verdict.orthogonality_failure
    if g is not None:
        lines.append(f"    witness: configs {render_config(g.config, a.alphabet)!r} and "
                     f"{render_config(g.config2, a.alphabet)!r} have column inner product {g.inner}")
    lines.append(f"  elapsed: {report['elapsed_ms']} ms")
    return "\n".join(lines)


def check_file(path: Path, args) -> tuple[dict, Verdict, object]:
    a = parse_lqca(path.read_text())
    t0 = time.perf_counter()
    verdict = decide(a, full_report=args.full_report, span_limit=args.span_limit)
    elapsed = (time.perf_counter() - t0) * 1000
    return build_report(a, verdict, elapsed, args.emit_witness), verdict, a


def cmd_check(args) -> int:
    path = Path(args.path)
    if path.is_dir():
        return _check_batch(path, args)
    report, verdict, a = check_file(path, args)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(format_text(path.name, report, verdict, a))
    return EXIT_OK if verdict.well_formed else EXIT_REJECT


def _check_batch(directory: Path, args) -> int:
    files = sorted(p for p in directory.iterdir() if p.suffix == ".lqca")
    entries = []
    texts = []
    counts = {"well_formed": 0, "not_well_formed": 0, "errors": 0}
    for p in files:
        try:
            report, verdict, a = check_file(p, args)
        except (LqcaError, ConsistencyError, OSError) as exc:
            counts["errors"] += 1
            entries.append({"file": p.name, "error": str(exc)})
            texts.append(f"{p.name}: error: {exc}")
            continue
        counts["well_formed" if verdict.well_formed else "not_well_formed"] += 1
        entries.append({"file": p.name, "report": report})
        texts.append(format_text(p.name, report, verdict, a))
    if args.format == "json":
        print(json.dumps({"files": entries, "summary": counts}, indent=2))
    else:
        texts.append(f"{len(files)} files: {counts['well_formed']} well-formed, "
                     f"{counts['not_well_formed']} not well-formed, {counts['errors']} errors")
        print("\n".join(texts))
    if counts["errors"]:
        return EXIT_ERROR
    return EXIT_REJECT if counts["not_well_formed"] else EXIT_OK


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_normalize(args) -> int:
    a = parse_lqca(Path(args.path).read_text())
    doc, scales = render_normalized(normalize(a))
    if args.output is None:
        sys.stdout.write(doc)
        sys.stderr.write(scales)
    else:
        Path(args.output).write_text(doc)
        Path(args.output + ".scales").write_text(scales)
    return EXIT_OK


def cmd_simplify(args) -> int:
    a = parse_lqca(Path(args.path).read_text())
    simple, report = simplify(a, args.span_limit)
    _write(render_lqca(simple), args.output)
    print(f"span {report.span}, expansion factor {format_rational(report.expansion_factor)}, "
          f"size {report.size} -> {report.new_size}", file=sys.stderr)
    return EXIT_OK


def _interval(text: str) -> Interval:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise LqcaError(f"interval must look like LO:HI, got {text!r}")
    return Interval(int(lo), int(hi))


def cmd_oracle(args) -> int:
    a = parse_lqca(Path(args.path).read_text())
    alpha = a.alphabet
    if args.what == "norm":
        c = parse_config(args.config, alpha)
        print(format_rational(oracle.column_sq_norm(a, c)))
    elif args.what == "inner":
        c = parse_config(args.config, alpha)
        c2 = parse_config(args.config2, alpha)
        if args.direct:
            interval = (_interval(args.interval) if args.interval
                        else ext(idom(c), a.neighborhood).hull(ext(idom(c2), a.neighborhood)))
            print(oracle.column_inner_product_direct(a, c, c2, interval, args.bound))
        else:
            print(oracle.column_inner_product(a, c, c2))
    elif args.what == "step":
        c = parse_config(args.config, alpha)
        window = _interval(args.window) if args.window else idom(c)
        out = oracle.step(a, oracle.WindowSuperposition.basis(window, c), args.bound)
        for d in sorted(out.amps, key=oracle.window_order):
            print(f"{out.amps[d]}\t{render_config(d, alpha)!r}")
    else:
        v = oracle.window_check(a, args.radius, args.bound)
        if v is None:
            print("no violation")
            return EXIT_OK
        if v.kind == "norm":
            print(f"norm violation: {render_config(v.config, alpha)!r} "
                  f"has column squared norm {format_rational(v.value)}")
        else:
            print(f"orthogonality violation: {render_config(v.config, alpha)!r} and "
                  f"{render_config(v.config2, alpha)!r} have column inner product {v.value}")
        return EXIT_REJECT
    return EXIT_OK


def cmd_plqca(args) -> int:
    p = parse_plqca(Path(args.path).read_text())
    if args.what == "compose":
        _write(render_lqca(compose(p)), args.output)
        return EXIT_OK
    report = check_theorem_equivalence(p)
    result = {"unitary": report.unitary, "well_formed": report.well_formed, "agree": report.agree}
    if args.format == "json":
        print(json.dumps(result, indent=2))
    else:
        print(f"Q unitary: {report.unitary}\ncomposed automaton well-formed: {report.well_formed}")
    return EXIT_OK if report.well_formed else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qca", description="Well-formedness of linear quantum cellular automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide well-formedness of a .lqca file or every .lqca in a directory")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--emit-witness", action="store_true", help="include witnesses in JSON output")
    p.add_argument("--full-report", action="store_true", help="run the orthogonality check even after a norm failure")
    p.add_argument("--span-limit", type=int, default=DEFAULT_SPAN_LIMIT)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", help="renormalize every rule to unit norm")
    p.add_argument("path")
    p.add_argument("-o", "--output", help="document path; squared scales go to OUTPUT.scales")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("simplify", help="fill the neighborhood to an interval")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.add_argument("--span-limit", type=int, default=DEFAULT_SPAN_LIMIT)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("oracle", help="brute-force evaluation on small configurations")
    p.add_argument("what", choices=("norm", "inner", "step", "window"))
    p.add_argument("path")
    p.add_argument("--config", default="")
    p.add_argument("--config2", default="")
    p.add_argument("--direct", action="store_true", help="inner: sum over all words instead of the product formula")
    p.add_argument("--interval", help="inner --direct: summation interval LO:HI")
    p.add_argument("--window", help="step: input window LO:HI (default: idom of the config)")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--bound", type=int, default=None, help="enumeration bound (default QCA_RESOURCE_BOUND or 10^6)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("plqca", help="partitioned automata")
    p.add_argument("what", choices=("compose", "check"))
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_plqca)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"qca: internal consistency failure: {exc}", file=sys.stderr)
    except (LqcaError, OSError, ValueError) as exc:
        print(f"qca: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())
