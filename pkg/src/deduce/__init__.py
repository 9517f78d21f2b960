"""Parsing as deduction: items, inference rules, one agenda-driven engine.

A deduction system packages axioms, goals, and compiled rule clauses
over first-order terms; the engine closes the axioms under the rules
with a chart and FIFO agenda, and remembers how each item was proved so
that derivation forests can be unpacked afterwards.
"""

from .derivations import (
    DerivationError,
    DerivationTree,
    ParseTree,
    UnsupportedSystemError,
    extract,
    render_derivation_tree,
    render_parse_tree,
    to_parse_tree,
    tree_yield,
)
from .engine import (
    EngineError,
    ParseOptions,
    ParseResult,
    check_soundness,
    naive_closure,
    parse,
)
from .grammar import (
    CcgLexicon,
    CfGrammar,
    GrammarError,
    InputString,
    TagGrammar,
    load_ccg,
    load_cf,
    load_tag,
    tokenize,
    validate_cnf,
)
from .store import History, INITIAL, ItemStore
from .systems import (
    DeductionSystem,
    GrammarNotCnf,
    SYSTEM_NAMES,
    SystemAuthoringError,
    eval_side_condition,
    make_bottomup,
    make_ccg,
    make_cyk,
    make_earley,
    make_tag,
    make_topdown,
    register_builtin,
    render_item,
    system_for,
)
from .terms import (
    Compound,
    Const,
    Substitution,
    Term,
    TermSyntaxError,
    Var,
    VarSource,
    abstract_depth,
    canonical,
    match,
    parse_term,
    render_term,
    rename_apart,
    subsumes,
    unify,
    variant,
)

__version__ = "0.1.0"

__all__ = [
    "CcgLexicon",
    "CfGrammar",
    "Compound",
    "Const",
    "DeductionSystem",
    "DerivationError",
    "DerivationTree",
    "EngineError",
    "GrammarError",
    "GrammarNotCnf",
    "History",
    "INITIAL",
    "InputString",
    "ItemStore",
    "ParseOptions",
    "ParseResult",
    "ParseTree",
    "Substitution",
    "SYSTEM_NAMES",
    "SystemAuthoringError",
    "TagGrammar",
    "Term",
    "TermSyntaxError",
    "UnsupportedSystemError",
    "Var",
    "VarSource",
    "abstract_depth",
    "canonical",
    "check_soundness",
    "eval_side_condition",
    "extract",
    "load_ccg",
    "load_cf",
    "load_tag",
    "make_bottomup",
    "make_ccg",
    "make_cyk",
    "make_earley",
    "make_tag",
    "make_topdown",
    "match",
    "naive_closure",
    "parse",
    "parse_term",
    "register_builtin",
    "render_derivation_tree",
    "render_item",
    "render_parse_tree",
    "render_term",
    "rename_apart",
    "subsumes",
    "system_for",
    "to_parse_tree",
    "tokenize",
    "tree_yield",
    "unify",
    "validate_cnf",
    "variant",
]
