#!/usr/bin/env python3
"""Summarize the metric landscape over the fixture corpus.

Prints one row per fixture with every mode's value side by side, plus the
name-blind baseline, so the scope-aware gap is visible at a glance.

Usage: python scripts/corpus_report.py [corpus-dir]
"""

import sys
from pathlib import Path

from minicog import analyze_source, cyclomatic
from minicog.ledger import SiMode

corpus = Path(sys.argv[1] if len(sys.argv) > 1 else "corpus")
rows = []
for path in sorted(corpus.glob("*.mc")):
    analysis = analyze_source(path.read_text(encoding="utf-8"), path.name)
    report = analysis.report()
    rows.append((
        path.name,
        report.loc,
        report.i_l,
        analysis.escim_value(SiMode.DELTA),
        analysis.escim_value(SiMode.MINMAX),
        analysis.escim_value(SiMode.ABSOLUTE),
        str(report.efficiency),
        cyclomatic(analysis.tree),
    ))

header = f"{'fixture':<18} {'loc':>4} {'I(L)':>5} {'delta':>6} {'minmax':>7} {'abs':>5} {'E':>8} {'cyclo':>6}"
print(header)
print("-" * len(header))
for name, loc, il, d, m, a, eff, cyc in rows:
    print(f"{name:<18} {loc:>4} {il:>5} {d:>6} {m:>7} {a:>5} {eff:>8} {cyc:>6}")
