"""Lexical scopes and identifier binding.

Every identifier occurrence binds to a ScopedVariable; variables with the
same name in different scopes are distinct (shadowing-aware). Bindings are
positional: a declaration is visible from its own statement onward, so a use
before an inner redeclaration still binds to the outer variable. ``::name``
always binds in the global scope. Functions are visible program-wide so that
mutually recursive definitions resolve.

Each occurrence records the statement it is anchored to (header expressions
of if/while/do/for/switch anchor to the structured statement itself) and the
operator count of its counting unit, which the ledger turns into deltas.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ast
from .ast import SyntaxTree, operator_count
from .errors import DuplicateDeclaration, UnresolvedName
from .lexer import SourceSpan

BUILTINS = frozenset({"print", "read"})

ROLE_DECL = "declaration"
ROLE_TARGET = "assignment-target"
ROLE_READ = "read"


@dataclass(frozen=True)
class ScopeNode:
    sid: int
    parent: int | None
    kind: str  # global | function | block | for-init | switch-body
    span: SourceSpan


@dataclass
class ScopeTree:
    nodes: dict[int, ScopeNode]
    root: int = 0


@dataclass(frozen=True)
class ScopedVariable:
    vid: int
    name: str
    scope: int
    decl_span: SourceSpan
    is_record: bool = False
    members: tuple[str, ...] = ()


@dataclass(frozen=True)
class OccurrenceRef:
    variable: int
    member: str | None
    node: int
    ordinal: int
    role: str
    anchor: int       # nid of the anchoring statement (or function def for params)
    op_unit: int      # operator count of the statement/clause containing this occurrence


@dataclass
class Resolution:
    tree: SyntaxTree
    scopes: ScopeTree
    variables: dict[int, ScopedVariable]
    occurrences: list[OccurrenceRef]
    functions: dict[str, ast.FuncDef]
    records: dict[str, ast.RecordDef]
    call_graph: dict[str, set[str]]
    calls_by_anchor: dict[int, int]


class _Resolver:
    def __init__(self, tree: SyntaxTree):
        self.tree = tree
        self.scope_nodes: dict[int, ScopeNode] = {}
        self.scope_vars: dict[int, dict[str, int]] = {}
        self.stack: list[int] = []
        self.variables: dict[int, ScopedVariable] = {}
        self.occurrences: list[OccurrenceRef] = []
        self.functions: dict[str, ast.FuncDef] = {}
        self.records: dict[str, ast.RecordDef] = {}
        self.call_graph: dict[str, set[str]] = {}
        self.calls_by_anchor: dict[int, int] = {}
        self.current_function: str | None = None

    # ------------------------------------------------------------ scopes

    def push_scope(self, kind: str, span: SourceSpan) -> int:
        sid = len(self.scope_nodes)
        parent = self.stack[-1] if self.stack else None
        self.scope_nodes[sid] = ScopeNode(sid, parent, kind, span)
        self.scope_vars[sid] = {}
        self.stack.append(sid)
        return sid

    def pop_scope(self) -> None:
        self.stack.pop()

    def declare(self, name: str, type_name: str, span: SourceSpan) -> int:
        sid = self.stack[-1]
        if name in self.scope_vars[sid]:
            raise DuplicateDeclaration(f"'{name}' already declared in this scope", span)
        is_record = type_name in self.records
        members = tuple(f.name for f in self.records[type_name].fields) if is_record else ()
        vid = len(self.variables)
        self.variables[vid] = ScopedVariable(vid, name, sid, span, is_record, members)
        self.scope_vars[sid][name] = vid
        return vid

    def lookup(self, name: str, span: SourceSpan) -> int:
        for sid in reversed(self.stack):
            vid = self.scope_vars[sid].get(name)
            if vid is not None:
                return vid
        raise UnresolvedName(f"undeclared name '{name}'", span)

    def lookup_global(self, name: str, span: SourceSpan) -> int:
        vid = self.scope_vars[0].get(name)
        if vid is None:
            raise UnresolvedName(f"no global named '{name}'", span)
        return vid

    def check_type(self, ty: ast.TypeRef) -> None:
        if ty.name not in ("int", "float", "bool") and ty.name not in self.records:
            raise UnresolvedName(f"unknown type '{ty.name}'", ty.span)

    # ------------------------------------------------------------ occurrences

    def occurrence(self, vid: int, member: str | None, node: ast.Node, role: str,
                   anchor: int, ops: int) -> None:
        self.occurrences.append(
            OccurrenceRef(vid, member, node.nid, len(self.occurrences), role, anchor, ops)
        )

    def _target_root(self, expr: ast.Expr) -> tuple[int, str | None, ast.Expr, list[ast.Expr]]:
        """Resolve an lvalue to (vid, member, root node, read subexpressions)."""
        reads: list[ast.Expr] = []
        member: str | None = None
        node = expr
        while True:
            if isinstance(node, ast.Index):
                reads.append(node.index)
                node = node.base
            elif isinstance(node, ast.Member):
                if member is not None:
                    raise UnresolvedName("nested member access is not supported", node.span)
                member = node.member
                node = node.obj
            elif isinstance(node, ast.VarRef):
                vid = self.lookup(node.name, node.span)
                break
            elif isinstance(node, ast.GlobalRef):
                vid = self.lookup_global(node.name, node.span)
                break
            else:
                raise UnresolvedName("invalid assignment target", node.span)
        if member is not None:
            var = self.variables[vid]
            if not var.is_record or member not in var.members:
                raise UnresolvedName(f"'{member}' is not a member of '{var.name}'", expr.span)
        return vid, member, node, reads

    def walk_expr(self, expr: ast.Expr, anchor: int, ops: int, role: str = ROLE_READ) -> None:
        if isinstance(expr, ast.Literal) or expr is None:
            return
        if isinstance(expr, (ast.VarRef, ast.GlobalRef, ast.Member, ast.Index)):
            vid, member, root, reads = self._target_root(expr)
            self.occurrence(vid, member, root, role, anchor, ops)
            for sub in reversed(reads):  # reads were collected outer-first
                self.walk_expr(sub, anchor, ops)
            return
        if isinstance(expr, ast.Assign):
            self.walk_expr(expr.target, anchor, ops, ROLE_TARGET)
            self.walk_expr(expr.value, anchor, ops)
            return
        if isinstance(expr, ast.CompoundAssign):
            self.walk_expr(expr.target, anchor, ops, ROLE_TARGET)
            self.walk_expr(expr.value, anchor, ops)
            return
        if isinstance(expr, (ast.Increment, ast.Decrement)):
            self.walk_expr(expr.target, anchor, ops, ROLE_TARGET)
            return
        if isinstance(expr, ast.Call):
            if expr.callee not in BUILTINS:
                if expr.callee not in self.functions:
                    raise UnresolvedName(f"unknown function '{expr.callee}'", expr.span)
                if self.current_function is not None:
                    self.call_graph[self.current_function].add(expr.callee)
                self.calls_by_anchor[anchor] = self.calls_by_anchor.get(anchor, 0) + 1
            for arg in expr.args:
                self.walk_expr(arg, anchor, ops)
            return
        if isinstance(expr, ast.Unary):
            self.walk_expr(expr.operand, anchor, ops)
            return
        if isinstance(expr, ast.Binary):
            self.walk_expr(expr.lhs, anchor, ops)
            self.walk_expr(expr.rhs, anchor, ops)
            return
        raise TypeError(f"unexpected expression {type(expr).__name__}")

    # ------------------------------------------------------------ statements

    def walk_decl(self, decl: ast.DeclStmt, anchor: int) -> None:
        self.check_type(decl.type)
        vid = self.declare(decl.name, decl.type.name, decl.span)
        self.occurrence(vid, None, decl, ROLE_DECL, anchor, 0)
        if decl.init is not None:
            ops = operator_count(decl.init)
            self.occurrence(vid, None, decl, ROLE_TARGET, anchor, ops)
            self.walk_expr(decl.init, anchor, ops)
        elif decl.init_list is not None:
            ops = sum(operator_count(e) for e in decl.init_list)
            self.occurrence(vid, None, decl, ROLE_TARGET, anchor, ops)
            for e in decl.init_list:
                self.walk_expr(e, anchor, ops)

    def walk_stmt(self, stmt: ast.Stmt) -> None:
        if isinstance(stmt, ast.DeclStmt):
            self.walk_decl(stmt, stmt.nid)
        elif isinstance(stmt, ast.ExprStmt):
            self.walk_expr(stmt.expr, stmt.nid, operator_count(stmt.expr))
        elif isinstance(stmt, ast.Block):
            self.push_scope("block", stmt.span)
            for inner in stmt.stmts:
                self.walk_stmt(inner)
            self.pop_scope()
        elif isinstance(stmt, ast.IfStmt):
            self.walk_expr(stmt.cond, stmt.nid, operator_count(stmt.cond))
            self.walk_stmt(stmt.then)
            if stmt.orelse is not None:
                self.walk_stmt(stmt.orelse)
        elif isinstance(stmt, ast.WhileStmt):
            self.walk_expr(stmt.cond, stmt.nid, operator_count(stmt.cond))
            self.walk_stmt(stmt.body)
        elif isinstance(stmt, ast.DoWhileStmt):
            self.walk_stmt(stmt.body)
            self.walk_expr(stmt.cond, stmt.nid, operator_count(stmt.cond))
        elif isinstance(stmt, ast.ForStmt):
            self.push_scope("for-init", stmt.span)
            if isinstance(stmt.init, ast.DeclStmt):
                self.walk_decl(stmt.init, stmt.nid)
            elif isinstance(stmt.init, ast.ExprStmt):
                self.walk_expr(stmt.init.expr, stmt.nid, operator_count(stmt.init.expr))
            if stmt.cond is not None:
                self.walk_expr(stmt.cond, stmt.nid, operator_count(stmt.cond))
            if stmt.update is not None:
                self.walk_expr(stmt.update, stmt.nid, operator_count(stmt.update))
            self.walk_stmt(stmt.body)
            self.pop_scope()
        elif isinstance(stmt, ast.SwitchStmt):
            self.walk_expr(stmt.scrutinee, stmt.nid, operator_count(stmt.scrutinee))
            self.push_scope("switch-body", stmt.span)
            for arm in stmt.arms:
                for inner in arm.body:
                    self.walk_stmt(inner)
            self.pop_scope()
        elif isinstance(stmt, ast.ReturnStmt):
            if stmt.value is not None:
                self.walk_expr(stmt.value, stmt.nid, operator_count(stmt.value))
        elif isinstance(stmt, ast.LabeledStmt):
            self.walk_stmt(stmt.stmt)
        elif isinstance(stmt, (ast.BreakStmt, ast.ContinueStmt, ast.GotoStmt, ast.EmptyStmt)):
            pass
        else:
            raise TypeError(f"unexpected statement {type(stmt).__name__}")

    # ------------------------------------------------------------ driver

    def run(self) -> Resolution:
        spans = [item.span for item in self.tree.items if item.span is not None]
        if spans:
            whole = SourceSpan(
                self.tree.file, 1, 1,
                max(s.line_end for s in spans), max(s.col_end for s in spans),
            )
        else:
            whole = SourceSpan(self.tree.file, 1, 1, 1, 1)
        self.push_scope("global", whole)

        for item in self.tree.items:
            if isinstance(item, ast.RecordDef):
                self.records[item.name] = item
            elif isinstance(item, ast.FuncDef):
                if item.name in self.functions:
                    raise DuplicateDeclaration(f"function '{item.name}' already defined", item.span)
                self.functions[item.name] = item
                self.call_graph[item.name] = set()

        for item in self.tree.items:
            if isinstance(item, ast.RecordDef):
                for rfield in item.fields:
                    self.check_type(rfield.type)
            elif isinstance(item, ast.DeclStmt):
                self.walk_decl(item, item.nid)
            elif isinstance(item, ast.FuncDef):
                self.current_function = item.name
                self.push_scope("function", item.span)
                for param in item.params:
                    self.check_type(param.type)
                    vid = self.declare(param.name, param.type.name, param.span)
                    self.occurrence(vid, None, param, ROLE_DECL, item.nid, 0)
                    self.occurrence(vid, None, param, ROLE_TARGET, item.nid, 0)
                for inner in item.body.stmts:
                    self.walk_stmt(inner)
                self.pop_scope()
                self.current_function = None

        return Resolution(
            tree=self.tree,
            scopes=ScopeTree(self.scope_nodes, root=0),
            variables=self.variables,
            occurrences=self.occurrences,
            functions=self.functions,
            records=self.records,
            call_graph=self.call_graph,
            calls_by_anchor=self.calls_by_anchor,
        )


def resolve(tree: SyntaxTree) -> Resolution:
    """Bind every identifier; raises DuplicateDeclaration or UnresolvedName."""
    return _Resolver(tree).run()


def build_scope_tree(tree: SyntaxTree) -> ScopeTree:
    return resolve(tree).scopes


def resolve_occurrences(tree: SyntaxTree, scopes: ScopeTree | None = None) -> list[OccurrenceRef]:
    return resolve(tree).occurrences
