"""Decomposition of function bodies into a control-structure granule hierarchy.

Each level of the hierarchy is a linear sequence of granules: maximal runs of
simple statements become leaf granules, each branching/looping statement
becomes a structured granule whose children decompose its arms or body, and
partitioning stops at linear leaves. Blocks and statement labels are
transparent. Header expressions (loop conditions, for clauses, if conditions,
switch scrutinees) belong to the structured granule and their occurrences are
carried by one designated child leaf: the first for head-tested structures,
the last for do-while (keeping every leaf's occurrence window contiguous).
An empty leaf is inserted when that position is not already a leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import ast
from .ast import SyntaxTree
from .scopes import Resolution, resolve


class BcsKind(str, Enum):
    LINEAR = "linear"
    GOTO = "goto"
    IF = "if"
    CASE = "case"
    WHILE = "while"
    DO_WHILE = "do_while"
    FOR = "for"
    CALL = "call"
    RECURSION = "recursion"


_SIMPLE = (
    ast.DeclStmt, ast.ExprStmt, ast.ReturnStmt, ast.BreakStmt,
    ast.ContinueStmt, ast.GotoStmt, ast.EmptyStmt,
)
_STRUCTURED_KIND = {
    ast.IfStmt: BcsKind.IF,
    ast.SwitchStmt: BcsKind.CASE,
    ast.WhileStmt: BcsKind.WHILE,
    ast.DoWhileStmt: BcsKind.DO_WHILE,
    ast.ForStmt: BcsKind.FOR,
}


def classify_bcs(stmt: ast.Stmt) -> BcsKind:
    """Table-driven statement classification."""
    while isinstance(stmt, ast.LabeledStmt):
        stmt = stmt.stmt
    if isinstance(stmt, ast.GotoStmt):
        return BcsKind.GOTO
    for cls, kind in _STRUCTURED_KIND.items():
        if isinstance(stmt, cls):
            return kind
    return BcsKind.LINEAR


@dataclass(eq=False)
class Granule:
    label: str
    kind: BcsKind
    stmts: list[int]                      # leaf: covered statement ids; structured: [own id]
    children: list["Granule"] = field(default_factory=list)
    arm_starts: list[int] = field(default_factory=list)  # child index where each arm begins
    header_attach: str = "first"          # which child leaf carries header occurrences

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def header_carrier(self) -> "Granule":
        child = self.children[0] if self.header_attach == "first" else self.children[-1]
        return child

    def covered_ids(self) -> set[int]:
        out = set(self.stmts)
        for child in self.children:
            out |= child.covered_ids()
        return out

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(eq=False)
class GranuleTree:
    """Decomposition of one function: its top-level granule run."""
    function: str
    recursive: bool
    roots: list[Granule]
    tree: SyntaxTree

    def walk(self):
        for root in self.roots:
            yield from root.walk()

    def leaves(self):
        return [g for g in self.walk() if g.is_leaf]


def _flatten(stmts: list[ast.Stmt]) -> list[ast.Stmt]:
    units: list[ast.Stmt] = []
    for stmt in stmts:
        inner = stmt
        while isinstance(inner, ast.LabeledStmt):
            inner = inner.stmt
        if isinstance(inner, ast.Block):
            units.extend(_flatten(inner.stmts))
        else:
            units.append(inner)
    return units


def _body_list(stmt: ast.Stmt | None) -> list[ast.Stmt]:
    if stmt is None:
        return []
    return stmt.stmts if isinstance(stmt, ast.Block) else [stmt]


def _empty_leaf() -> Granule:
    return Granule(label="", kind=BcsKind.LINEAR, stmts=[])


def _decompose_run(stmts: list[ast.Stmt]) -> list[Granule]:
    granules: list[Granule] = []
    run: list[int] = []

    def flush() -> None:
        if run:
            granules.append(Granule(label="", kind=BcsKind.LINEAR, stmts=list(run)))
            run.clear()

    for unit in _flatten(stmts):
        if isinstance(unit, _SIMPLE):
            run.append(unit.nid)
            continue
        flush()
        granules.append(_structured(unit))
    flush()
    return granules


def _structured(stmt: ast.Stmt) -> Granule:
    kind = _STRUCTURED_KIND[type(stmt)]
    g = Granule(label="", kind=kind, stmts=[stmt.nid])
    if isinstance(stmt, ast.IfStmt):
        arms = [_body_list(stmt.then)]
        if stmt.orelse is not None:
            arms.append(_body_list(stmt.orelse))
    elif isinstance(stmt, ast.SwitchStmt):
        arms = [list(arm.body) for arm in stmt.arms] or [[]]
    else:
        arms = [_body_list(stmt.body)]

    arm_lists = [_decompose_run(arm) or [_empty_leaf()] for arm in arms]
    g.header_attach = "last" if kind is BcsKind.DO_WHILE else "first"
    # The header-carrying position must be a leaf.
    if g.header_attach == "first":
        if not arm_lists[0][0].is_leaf:
            arm_lists[0].insert(0, _empty_leaf())
    else:
        if not arm_lists[-1][-1].is_leaf:
            arm_lists[-1].append(_empty_leaf())

    children: list[Granule] = []
    starts: list[int] = []
    for arm in arm_lists:
        starts.append(len(children))
        children.extend(arm)
    g.children = children
    g.arm_starts = starts
    return g


def _assign_labels(roots: list[Granule]) -> None:
    def label_of(path: tuple[int, ...]) -> str:
        if len(path) == 1:
            return f"G{path[0]}"
        return "G(" + ",".join(str(p) for p in path) + ")"

    def visit(g: Granule, path: tuple[int, ...]) -> None:
        g.label = label_of(path)
        for j, child in enumerate(g.children, start=1):
            visit(child, path + (j,))

    for i, root in enumerate(roots, start=1):
        visit(root, (i,))


def detect_recursion(tree: SyntaxTree, resolution: Resolution | None = None) -> set[str]:
    """Functions on a cycle of the static call graph (self or mutual)."""
    res = resolution if resolution is not None else resolve(tree)
    graph = res.call_graph
    recursive: set[str] = set()
    for start in graph:
        seen: set[str] = set()
        stack = list(graph[start])
        while stack:
            fn = stack.pop()
            if fn == start:
                recursive.add(start)
                break
            if fn in seen:
                continue
            seen.add(fn)
            stack.extend(graph.get(fn, ()))
    return recursive


def decompose(tree: SyntaxTree, resolution: Resolution | None = None) -> list[GranuleTree]:
    """Granule hierarchy per function, in source order."""
    res = resolution if resolution is not None else resolve(tree)
    recursive = detect_recursion(tree, res)
    out: list[GranuleTree] = []
    for item in tree.items:
        if not isinstance(item, ast.FuncDef):
            continue
        roots = _decompose_run(item.body.stmts)
        _assign_labels(roots)
        out.append(GranuleTree(item.name, item.name in recursive, roots, tree))
    return out
