"""Grammar-and-structure validation for formula text.

A formula is valid when it parses, its quantifier scoping is proper (no
shadowed binders, no free variables when a closed formula is required),
predicate arities are consistent within the input, and no function symbols
appear. Failures are reported as data, never raised.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from folsquare.errors import ParseError
from folsquare.fol.ast import (
    Atom,
    Binary,
    Formula,
    Func,
    Not,
    Quantified,
    Term,
    free_variables,
)
from folsquare.fol.parser import parse_formula

CHECKS = ("QuantifierScope", "PredicateStructure", "ConnectivePlacement", "Lexical", "Function")


@dataclass(frozen=True)
class ValidationFailure:
    check: str
    location: tuple[int, int]
    message: str


@dataclass
class ValidationReport:
    valid: bool
    failures: list[ValidationFailure] = field(default_factory=list)
    formula: Formula | None = None


def _name_span(text: str, name: str) -> tuple[int, int]:
    m = re.search(rf"(?<!\w){re.escape(name)}(?!\w)", text)
    if m:
        return m.span()
    return (0, len(text))


def _walk_terms(t: Term, out: list[Func]) -> None:
    if isinstance(t, Func):
        out.append(t)
        for a in t.args:
            _walk_terms(a, out)


def _collect(f: Formula, scope: tuple[str, ...], shadowed: list[str],
             arities: dict[str, set[int]], funcs: list[Func]) -> None:
    if isinstance(f, Atom):
        arities.setdefault(f.pred, set()).add(len(f.args))
        for a in f.args:
            _walk_terms(a, funcs)
    elif isinstance(f, Not):
        _collect(f.sub, scope, shadowed, arities, funcs)
    elif isinstance(f, Binary):
        _collect(f.left, scope, shadowed, arities, funcs)
        _collect(f.right, scope, shadowed, arities, funcs)
    elif isinstance(f, Quantified):
        if f.var in scope:
            shadowed.append(f.var)
        _collect(f.body, scope + (f.var,), shadowed, arities, funcs)


def validate_cfg(text: str, require_closed: bool = True) -> ValidationReport:
    """Validate formula text; ``require_closed`` flags free variables."""
    failures: list[ValidationFailure] = []
    try:
        formula = parse_formula(text)
    except ParseError as err:
        failures.append(ValidationFailure(err.check, err.span, err.message))
        return ValidationReport(valid=False, failures=failures)

    shadowed: list[str] = []
    arities: dict[str, set[int]] = {}
    funcs: list[Func] = []
    _collect(formula, (), shadowed, arities, funcs)

    for var in shadowed:
        failures.append(
            ValidationFailure(
                "QuantifierScope", _name_span(text, var),
                f"variable {var!r} is bound twice in nested scopes",
            )
        )
    if require_closed:
        for var in sorted(free_variables(formula)):
            failures.append(
                ValidationFailure(
                    "QuantifierScope", _name_span(text, var),
                    f"free variable {var!r} in a closed-formula context",
                )
            )
    for pred, seen in sorted(arities.items()):
        if len(seen) > 1:
            failures.append(
                ValidationFailure(
                    "PredicateStructure", _name_span(text, pred),
                    f"predicate {pred!r} used with arities {sorted(seen)}",
                )
            )
    for fn in funcs:
        failures.append(
            ValidationFailure(
                "Function", _name_span(text, fn.name),
                f"function symbol {fn.name!r} is not supported",
            )
        )

    return ValidationReport(valid=not failures, failures=failures, formula=formula)
