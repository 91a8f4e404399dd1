"""Self-similar groupoid actions on finite graphs."""

from .action import (
    Budget,
    ClosureExceeded,
    DomainError,
    Outcome,
    SelfSimilarAction,
    Verdict,
    contracting_closure,
    element_equal,
    nucleus,
    pseudo_free_check,
)
from .graph import Graph, Path
from .homology import Chain, delta1, delta2, h0_truncated, index_class, normalize_to_level
from .io import load_action, load_table
from .semigroup import ZERO, Triple, multiply
from .tables import GTable, compose, equal, inverse, transposition_hat
from .words import Word

__version__ = "0.1.0"

__all__ = [
    "Budget", "ClosureExceeded", "DomainError", "Outcome", "SelfSimilarAction", "Verdict",
    "contracting_closure", "element_equal", "nucleus", "pseudo_free_check",
    "Graph", "Path",
    "Chain", "delta1", "delta2", "h0_truncated", "index_class", "normalize_to_level",
    "load_action", "load_table",
    "ZERO", "Triple", "multiply",
    "GTable", "compose", "equal", "inverse", "transposition_hat",
    "Word",
]
