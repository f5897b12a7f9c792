#!/usr/bin/env python3
"""Run the full property conformance matrix and show witnesses.

Like `minicog weyuker` but also prints the witness programs for one chosen
property, which is handy when exploring why a mode separates or fails to
separate compositions.

Usage: python scripts/weyuker_matrix.py [--seed N] [--count N] [--show PROP]
"""

import argparse
from pathlib import Path

from minicog.weyuker import run_matrix

parser = argparse.ArgumentParser()
parser.add_argument("--corpus", default="corpus")
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--count", type=int, default=500)
parser.add_argument("--show", default=None, help="print witness programs for this property id")
args = parser.parse_args()

corpus = [(p.name, p.read_text(encoding="utf-8"))
          for p in sorted(Path(args.corpus).glob("*.mc"))]
result = run_matrix(corpus, seed=args.seed, n_generated=args.count)

width = 18
print("property  " + "".join(m.value.ljust(width) for m in result.modes))
for prop in dict.fromkeys(v.prop for v in result.verdicts):
    cells = "".join(result.verdict(prop, m).status.ljust(width) for m in result.modes)
    print(f"{prop:<10}{cells}")

if args.show:
    for mode in result.modes:
        verdict = result.verdict(args.show, mode)
        print(f"\n=== property {args.show}, {mode.value}: {verdict.status} ===")
        if verdict.note:
            print(f"note: {verdict.note}")
        if verdict.witness:
            for role, value in verdict.witness.items():
                if isinstance(value, dict) and "text" in value:
                    print(f"--- {role} ({value['name']}) ---")
                    print(value["text"].rstrip())
                else:
                    print(f"{role}: {value}")
