"""Occurrence ledger: the counting core.

Two counters run over the occurrence stream in textual order. The name-keyed
counter (ICN) is scope-blind: every variable called ``x`` shares one count.
The scope-keyed counter (SICN) is per ScopedVariable, so shadowed variables
count separately; a record variable's count is the sum over its members.

An assignment-target occurrence contributes ``delta = 1 + ops`` where ``ops``
is the operator count of its statement or clause (compound assignment and
``++``/``--`` count themselves; the plain ``=`` does not). Reads and bare
declarations contribute zero but still appear in the ledger carrying the
current values, which is what region minima/maxima are taken over.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum

from .ast import SyntaxTree
from .scopes import ROLE_TARGET, OccurrenceRef, Resolution, ScopedVariable


class SiMode(str, Enum):
    DELTA = "delta"
    MINMAX = "minmax"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class LedgerEntry:
    occurrence: OccurrenceRef
    delta: int
    icn_after: int
    sicn_after: int


@dataclass
class OccurrenceLedger:
    entries: list[LedgerEntry]
    variables: dict[int, ScopedVariable]
    tree: SyntaxTree
    resolution: Resolution
    by_variable: dict[int, list[int]] = field(default_factory=dict)
    by_name: dict[str, list[int]] = field(default_factory=dict)
    by_anchor: dict[int, list[int]] = field(default_factory=dict)
    member_totals: dict[tuple[int, str | None], int] = field(default_factory=dict)

    # -------------------------------------------------------------- regions

    def all_anchors(self) -> set[int]:
        return set(self.by_anchor)

    def region_ordinals(self, anchors: set[int]) -> list[int]:
        ordinals: list[int] = []
        for anchor in anchors:
            ordinals.extend(self.by_anchor.get(anchor, ()))
        ordinals.sort()
        return ordinals

    def _value_before(self, vid: int, ordinal: int) -> int:
        """SICN of variable `vid` just before the given ordinal."""
        ords = self.by_variable.get(vid, [])
        i = bisect_left(ords, ordinal)
        if i == 0:
            return 0
        return self.entries[ords[i - 1]].sicn_after

    def sicn_max(self, vid: int, anchors: set[int]) -> int:
        """Highest SICN among the variable's occurrences in the region; 0 if absent."""
        inside = set(self.region_ordinals(anchors))
        best = 0
        for o in self.by_variable.get(vid, ()):
            if o in inside:
                best = max(best, self.entries[o].sicn_after)
        return best

    def sicn_min(self, vid: int, anchors: set[int]) -> int | None:
        inside = set(self.region_ordinals(anchors))
        values = [self.entries[o].sicn_after for o in self.by_variable.get(vid, ()) if o in inside]
        return min(values) if values else None

    def si(self, anchors: set[int], mode: SiMode = SiMode.DELTA) -> int:
        ordinals = self.region_ordinals(anchors)
        if not ordinals:
            return 0
        region_start = ordinals[0]
        per_var: dict[int, list[int]] = {}
        for o in ordinals:
            entry = self.entries[o]
            per_var.setdefault(entry.occurrence.variable, []).append(entry.sicn_after)
        total = 0
        for vid, values in per_var.items():
            if mode is SiMode.ABSOLUTE:
                total += max(values)
            elif mode is SiMode.MINMAX:
                total += max(values) - min(values)
            else:
                total += max(values) - self._value_before(vid, region_start)
        return total

    def info_icn(self, anchors: set[int]) -> int:
        """The scope-blind baseline: sum over names of the highest ICN in the region."""
        return sum(self.icn_max_by_name(anchors).values())

    def icn_max_by_name(self, anchors: set[int]) -> dict[str, int]:
        out: dict[str, int] = {}
        for o in self.region_ordinals(anchors):
            entry = self.entries[o]
            name = self.variables[entry.occurrence.variable].name
            out[name] = max(out.get(name, 0), entry.icn_after)
        return out

    def member_sicn(self, vid: int, member: str | None) -> int:
        return self.member_totals.get((vid, member), 0)

    def dump(self) -> list[dict]:
        rows = []
        for entry in self.entries:
            occ = entry.occurrence
            var = self.variables[occ.variable]
            name = var.name if occ.member is None else f"{var.name}.{occ.member}"
            rows.append(
                {
                    "ordinal": occ.ordinal,
                    "variable": name,
                    "scope": var.scope,
                    "role": occ.role,
                    "delta": entry.delta,
                    "icn_after": entry.icn_after,
                    "sicn_after": entry.sicn_after,
                }
            )
        return rows


def build_ledger(resolution: Resolution) -> OccurrenceLedger:
    entries: list[LedgerEntry] = []
    name_count: dict[str, int] = {}
    var_count: dict[int, int] = {}
    member_totals: dict[tuple[int, str | None], int] = {}
    ledger = OccurrenceLedger(
        entries=entries,
        variables=resolution.variables,
        tree=resolution.tree,
        resolution=resolution,
        member_totals=member_totals,
    )
    for occ in resolution.occurrences:
        var = resolution.variables[occ.variable]
        delta = 1 + occ.op_unit if occ.role == ROLE_TARGET else 0
        if delta:
            name_count[var.name] = name_count.get(var.name, 0) + delta
            var_count[occ.variable] = var_count.get(occ.variable, 0) + delta
            key = (occ.variable, occ.member)
            member_totals[key] = member_totals.get(key, 0) + delta
        entries.append(
            LedgerEntry(
                occ, delta,
                icn_after=name_count.get(var.name, 0),
                sicn_after=var_count.get(occ.variable, 0),
            )
        )
        ledger.by_variable.setdefault(occ.variable, []).append(occ.ordinal)
        ledger.by_name.setdefault(var.name, []).append(occ.ordinal)
        ledger.by_anchor.setdefault(occ.anchor, []).append(occ.ordinal)
    return ledger


# Spec-shaped free functions over the ledger.

def sicn_max(vid: int, region: set[int], ledger: OccurrenceLedger) -> int:
    return ledger.sicn_max(vid, region)


def si(region: set[int], ledger: OccurrenceLedger, mode: SiMode = SiMode.DELTA) -> int:
    return ledger.si(region, mode)


def info_icn(region: set[int], ledger: OccurrenceLedger) -> int:
    return ledger.info_icn(region)
