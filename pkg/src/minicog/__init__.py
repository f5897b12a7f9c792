"""Scope-aware cognitive complexity metrics for MiniC programs."""

from .analysis import Analysis, analyze_source
from .erm import ErmExpression, Fact, parse_erm, render_erm, serialize_erm
from .errors import (
    AnalysisError, ComposeError, DuplicateDeclaration, EmptyProgram,
    ErmSyntaxError, InconsistentInput, InvalidPermutation, LexError,
    ParseError, RenameCollision, UnresolvedName,
)
from .granules import BcsKind, Granule, GranuleTree, classify_bcs, decompose, detect_recursion
from .ledger import LedgerEntry, OccurrenceLedger, SiMode, build_ledger
from .lexer import SourceSpan, Token, tokenize
from .metrics import (
    DEFAULT_WEIGHTS, MetricsReport, WeightTable, coding_efficiency, cyclomatic, escim, loc,
)
from .parser import parse, parse_source
from .printer import pretty_print
from .scopes import (
    OccurrenceRef, Resolution, ScopedVariable, ScopeTree,
    build_scope_tree, resolve, resolve_occurrences,
)

__version__ = "0.1.0"
