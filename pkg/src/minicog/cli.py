"""Command line front end.

Subcommands:
    analyze   — metrics report for one file, or aggregated over a corpus
    weyuker   — property conformance matrix (verdicts are data, not failures)
    generate  — emit a seeded random program

Exit codes: 0 success, 1 analysis diagnostics, 2 I/O or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import Analysis, analyze_source
from .errors import AnalysisError, EmptyProgram
from .generator import generate
from .ledger import SiMode
from .metrics import WeightTable
from .weyuker import MatrixResult, run_matrix

EMIT_CHOICES = ("metrics", "erm", "ledger", "granules")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minicog", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="compute metrics for MiniC sources")
    analyze.add_argument("inputs", nargs="+", help="source file (or directories with --corpus)")
    analyze.add_argument("--format", choices=("text", "json"), default="text")
    analyze.add_argument("--si-mode", choices=[m.value for m in SiMode], default="delta")
    analyze.add_argument("--weights", help="JSON weight table file")
    analyze.add_argument("--emit", default="metrics",
                         help="comma-separated sections: metrics,erm,ledger,granules")
    analyze.add_argument("--corpus", action="store_true",
                         help="treat inputs as a corpus (directories expand to *.mc) and aggregate")

    weyuker = sub.add_parser("weyuker", help="run the property conformance matrix")
    weyuker.add_argument("--corpus", default=None,
                         help="directory of fixture programs (default: ./corpus if present)")
    weyuker.add_argument("--seed", type=int, default=0)
    weyuker.add_argument("--count", type=int, default=500, help="number of generated programs")
    weyuker.add_argument("--si-mode", choices=[m.value for m in SiMode], default=None,
                         help="restrict to one mode (default: all three)")
    weyuker.add_argument("--weights", help="JSON weight table file")
    weyuker.add_argument("--format", choices=("text", "json"), default="text")

    gen = sub.add_parser("generate", help="emit a seeded random program")
    gen.add_argument("--seed", type=int, required=True)

    return parser


# ------------------------------------------------------------------ reports

def _span_obj(span) -> dict | None:
    if span is None:
        return None
    return {
        "file": span.file,
        "line_start": span.line_start,
        "col_start": span.col_start,
        "line_end": span.line_end,
        "col_end": span.col_end,
    }


def _granule_obj(granule) -> dict:
    return {
        "label": granule.label,
        "kind": granule.kind.value,
        "stmts": list(granule.stmts),
        "children": [_granule_obj(c) for c in granule.children],
    }


def report_obj(analysis: Analysis, mode: SiMode, weights: WeightTable, emit: set[str]) -> dict:
    rep = analysis.report(mode, weights)
    out = {
        "file": analysis.file,
        "si_mode": mode.value,
        "loc": rep.loc,
        "i_l": rep.i_l,
        "escim": rep.escim,
        "efficiency": str(rep.efficiency),
        "functions": [
            {
                "name": fn.name,
                "recursive": fn.recursive,
                "escim": fn.escim,
                "granules": [
                    {
                        "label": row.label,
                        "kind": row.kind,
                        "weight": row.weight,
                        "si": row.si,
                        "ancestor_product": row.ancestor_product,
                        "term": row.term,
                    }
                    for row in fn.leaves
                ],
                "erm": list(fn.erm),
            }
            for fn in rep.functions
        ],
        "diagnostics": [],
    }
    if "ledger" in emit:
        out["ledger"] = analysis.ledger.dump()
    if "granules" in emit:
        out["granule_trees"] = [
            {"function": gt.function, "recursive": gt.recursive,
             "granules": [_granule_obj(root) for root in gt.roots]}
            for gt in analysis.granules
        ]
    return out


def diagnostic_obj(file: str, mode: SiMode, exc: Exception) -> dict:
    span = getattr(exc, "span", None)
    return {
        "file": file,
        "si_mode": mode.value,
        "diagnostics": [{"span": _span_obj(span), "message": str(exc)}],
    }


def _report_text(obj: dict, emit: set[str]) -> list[str]:
    lines = [obj["file"]]
    if obj.get("diagnostics"):
        for diag in obj["diagnostics"]:
            span = diag["span"]
            where = f"{span['file']}:{span['line_start']}:{span['col_start']}: " if span else ""
            lines.append(f"  error: {where}{diag['message']}")
        return lines
    lines.append(
        f"  si-mode {obj['si_mode']}   loc {obj['loc']}   I(L) {obj['i_l']}   "
        f"ESCIM {obj['escim']}   E {obj['efficiency']}"
    )
    for fn in obj["functions"]:
        flag = "  (recursive)" if fn["recursive"] else ""
        lines.append(f"  function {fn['name']}   ESCIM {fn['escim']}{flag}")
        for row in fn["granules"]:
            lines.append(
                f"    {row['label']:<12} {row['kind']:<8} w={row['weight']} si={row['si']} "
                f"anc={row['ancestor_product']} term={row['term']}"
            )
        if "erm" in emit:
            if fn["erm"]:
                lines.append("    erm:")
                lines.extend(f"      {fact}" for fact in fn["erm"])
            else:
                lines.append("    erm: (none)")
    if "ledger" in emit and "ledger" in obj:
        lines.append("  ledger:")
        for row in obj["ledger"]:
            lines.append(
                f"    #{row['ordinal']:<3} {row['variable']:<16} scope={row['scope']} "
                f"{row['role']:<17} delta={row['delta']} icn={row['icn_after']} sicn={row['sicn_after']}"
            )
    if "granules" in emit and "granule_trees" in obj:
        lines.append("  granules:")

        def walk(node: dict, depth: int) -> None:
            lines.append("    " + "  " * depth + f"{node['label']} [{node['kind']}] stmts={node['stmts']}")
            for child in node["children"]:
                walk(child, depth + 1)

        for gt in obj["granule_trees"]:
            lines.append(f"    {gt['function']}:")
            for root in gt["granules"]:
                walk(root, 1)
    return lines


# ------------------------------------------------------------------ analyze

def _expand_corpus(inputs: list[str]) -> list[Path]:
    paths: list[Path] = []
    for raw in inputs:
        p = Path(raw)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.mc")))
        else:
            paths.append(p)
    return sorted(set(paths))


def run_analyze(args) -> int:
    try:
        weights = WeightTable.from_file(args.weights) if args.weights else WeightTable.default()
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"minicog: bad weight table: {exc}", file=sys.stderr)
        return 2
    emit = set(filter(None, args.emit.split(",")))
    unknown = emit - set(EMIT_CHOICES)
    if unknown:
        print(f"minicog: unknown emit sections: {sorted(unknown)}", file=sys.stderr)
        return 2
    mode = SiMode(args.si_mode)

    if args.corpus:
        paths = _expand_corpus(args.inputs)
    else:
        if len(args.inputs) != 1:
            print("minicog: analyze expects exactly one input file (use --corpus for many)",
                  file=sys.stderr)
            return 2
        paths = [Path(args.inputs[0])]

    reports: list[dict] = []
    had_diagnostics = False
    for path in paths:
        try:
            source = path.read_text(encoding="utf-8")
        except OSError as exc:
            print(f"minicog: cannot read {path}: {exc}", file=sys.stderr)
            return 2
        try:
            analysis = analyze_source(source, str(path))
            reports.append(report_obj(analysis, mode, weights, emit))
        except (AnalysisError, EmptyProgram) as exc:
            had_diagnostics = True
            reports.append(diagnostic_obj(str(path), mode, exc))

    if args.corpus:
        ok = [r for r in reports if not r.get("diagnostics")]
        payload = {
            "files": reports,
            "totals": {
                "files": len(reports),
                "analyzed": len(ok),
                "loc": sum(r["loc"] for r in ok),
                "escim": sum(r["escim"] for r in ok),
            },
        }
        if args.format == "json":
            print(json.dumps(payload, indent=2))
        else:
            for rep in reports:
                for line in _report_text(rep, emit):
                    print(line)
            totals = payload["totals"]
            print(f"totals   files {totals['files']}   analyzed {totals['analyzed']}   "
                  f"loc {totals['loc']}   ESCIM {totals['escim']}")
    else:
        rep = reports[0]
        if args.format == "json":
            print(json.dumps(rep, indent=2))
        else:
            for line in _report_text(rep, emit):
                print(line)
    return 1 if had_diagnostics else 0


# ------------------------------------------------------------------ weyuker

def _matrix_obj(result: MatrixResult) -> dict:
    rows = []
    for prop in dict.fromkeys(v.prop for v in result.verdicts):
        row: dict = {"property": prop}
        for mode in result.modes:
            verdict = result.verdict(prop, mode)
            cell: dict = {"status": verdict.status}
            if verdict.note:
                cell["note"] = verdict.note
            if verdict.witness is not None:
                cell["witness"] = verdict.witness
            row[mode.value] = cell
        rows.append(row)
    return {
        "seed": result.seed,
        "generated": result.generated,
        "corpus": result.corpus,
        "modes": [m.value for m in result.modes],
        "rows": rows,
    }


def _matrix_text(result: MatrixResult) -> list[str]:
    width = 18
    header = "property  " + "".join(m.value.ljust(width) for m in result.modes)
    lines = [header, "-" * len(header)]
    notes: list[str] = []
    for prop in dict.fromkeys(v.prop for v in result.verdicts):
        cells = []
        for mode in result.modes:
            verdict = result.verdict(prop, mode)
            status = verdict.status
            if verdict.note:
                notes.append(f"[{prop}/{mode.value}] {verdict.note}")
                status += "*"
            cells.append(status.ljust(width))
        lines.append(f"{prop:<10}" + "".join(cells))
    lines.append(f"corpus: {len(result.corpus)} programs; generated: {result.generated}; "
                 f"seed: {result.seed}")
    if notes:
        lines.append("notes:")
        lines.extend(f"  {note}" for note in notes)
    return lines


def run_weyuker(args) -> int:
    try:
        weights = WeightTable.from_file(args.weights) if args.weights else WeightTable.default()
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"minicog: bad weight table: {exc}", file=sys.stderr)
        return 2
    corpus_dir = args.corpus
    if corpus_dir is None and Path("corpus").is_dir():
        corpus_dir = "corpus"
    corpus: list[tuple[str, str]] = []
    if corpus_dir is not None:
        root = Path(corpus_dir)
        if not root.is_dir():
            print(f"minicog: corpus directory not found: {root}", file=sys.stderr)
            return 2
        for path in sorted(root.glob("*.mc")):
            try:
                corpus.append((path.name, path.read_text(encoding="utf-8")))
            except OSError as exc:
                print(f"minicog: cannot read {path}: {exc}", file=sys.stderr)
                return 2
    modes = [SiMode(args.si_mode)] if args.si_mode else None
    result = run_matrix(corpus, seed=args.seed, n_generated=args.count,
                        modes=modes, weights=weights)
    if args.format == "json":
        print(json.dumps(_matrix_obj(result), indent=2))
    else:
        for line in _matrix_text(result):
            print(line)
    return 0


# ------------------------------------------------------------------ generate

def run_generate(args) -> int:
    sys.stdout.write(generate(args.seed))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze":
        return run_analyze(args)
    if args.command == "weyuker":
        return run_weyuker(args)
    return run_generate(args)


if __name__ == "__main__":
    sys.exit(main())
