from folsquare.fol.ast import (
    Atom,
    Binary,
    BinOp,
    Const,
    Formula,
    Func,
    Not,
    Quant,
    Quantified,
    Term,
    Var,
    alpha_normalize,
    and_,
    atom,
    constants,
    exists,
    forall,
    free_variables,
    has_functions,
    iff,
    implies,
    not_,
    or_,
    predicates,
    render,
    substitute,
    xor,
)
from folsquare.fol.parser import parse_formula
from folsquare.fol.validate import ValidationFailure, ValidationReport, validate_cfg

render_formula = render

__all__ = [
    "Atom", "Binary", "BinOp", "Const", "Formula", "Func", "Not", "Quant",
    "Quantified", "Term", "Var", "alpha_normalize", "and_", "atom",
    "constants", "exists", "forall", "free_variables", "has_functions",
    "iff", "implies", "not_", "or_", "predicates", "render",
    "render_formula", "substitute", "xor", "parse_formula",
    "ValidationFailure", "ValidationReport", "validate_cfg",
]
