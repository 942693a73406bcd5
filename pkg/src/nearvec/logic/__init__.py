"""First-order logic of near vector spaces: syntax, QE and a model-checking oracle."""

from .linear import eval_linear, linear_form, normalize_atom, normalize_term
from .oracle import EquivalenceReport, adequate_dimension, equivalent, evaluate, model_space
from .parser import parse_formula, parse_term
from .qe import (
    BlockCardinality, QuantifierEliminator, block_formula, eliminate_quantifiers,
    simplify, to_syntax,
)
from .syntax import (
    FALSE, TRUE, Add, And, Bottom, Equation, Exists, Forall, Formula, Implies,
    LinearAtom, Neg, Not, Or, Scale, Term, Top, Var, Zero, count_atoms,
    count_quantifiers, format_formula, format_term, free_vars, is_quantifier_free,
)

__all__ = [name for name in dir() if not name.startswith("_")]
