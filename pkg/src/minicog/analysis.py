"""End-to-end pipeline: source text to a metrics report.

Parsing, resolution, ledger construction and decomposition run once per
program; per-mode metric evaluation is cached so the property validator can
score the same program under all three scope-information modes cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import SyntaxTree
from .granules import GranuleTree, decompose
from .ledger import OccurrenceLedger, SiMode, build_ledger
from .metrics import MetricsReport, WeightTable, coding_efficiency, escim, loc
from .parser import parse_source
from .scopes import Resolution, resolve


@dataclass
class Analysis:
    file: str
    source: str
    tree: SyntaxTree
    resolution: Resolution
    ledger: OccurrenceLedger
    granules: list[GranuleTree]
    _reports: dict = field(default_factory=dict, repr=False)

    def report(self, mode: SiMode = SiMode.DELTA, weights: WeightTable | None = None) -> MetricsReport:
        weights = weights or WeightTable.default()
        key = (mode, weights.key())
        if key not in self._reports:
            rep = escim(self.granules, self.ledger, weights, mode)
            rep.loc = loc(self.source)
            rep.efficiency = coding_efficiency(rep.escim, rep.loc)
            self._reports[key] = rep
        return self._reports[key]

    def escim_value(self, mode: SiMode = SiMode.DELTA, weights: WeightTable | None = None) -> int:
        return self.report(mode, weights).escim

    def si_program(self, mode: SiMode = SiMode.DELTA) -> int:
        return self.ledger.si(self.ledger.all_anchors(), mode)

    def icn_by_name(self) -> dict[str, int]:
        return self.ledger.icn_max_by_name(self.ledger.all_anchors())


def analyze_source(source: str, file: str = "<input>") -> Analysis:
    tree = parse_source(source, file)
    resolution = resolve(tree)
    ledger = build_ledger(resolution)
    granules = decompose(tree, resolution)
    return Analysis(file, source, tree, resolution, ledger, granules)
