"""Quantum set theory over finite-dimensional projection lattices.

Exact rational arithmetic throughout: truth values are projections,
represented by canonical subspace bases and compared by identity.
"""

from .evaluate import (
    REFORMED, TAKEUTI, Environment, Evaluator, NotDelta0Error, SemanticsMode,
    UnboundNameError, eval_classical, eval_equal, eval_member, evaluate,
)
from .formula import FormulaError, FormulaSyntaxError, parse, to_text
from .logic import (
    Projection, commutator_algebra, commutator_finite, commutator_kernel, commutator_pair,
    commutes, join, leq, meet, one, ortho, sasaki_arrow, sasaki_star, span, zero,
)
from .universe import QSet, check_embed, check_ordinal, make_qset, restrict, support

__version__ = "0.1.0"

__all__ = [
    "REFORMED", "TAKEUTI", "Environment", "Evaluator", "NotDelta0Error", "SemanticsMode",
    "UnboundNameError", "eval_classical", "eval_equal", "eval_member", "evaluate",
    "FormulaError", "FormulaSyntaxError", "parse", "to_text",
    "Projection", "commutator_algebra", "commutator_finite", "commutator_kernel",
    "commutator_pair", "commutes", "join", "leq", "meet", "one", "ortho", "sasaki_arrow",
    "sasaki_star", "span", "zero",
    "QSet", "check_embed", "check_ordinal", "make_qset", "restrict", "support",
]
