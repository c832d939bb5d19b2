"""Negation transforms: strict contradictories via standard equivalences.

``simplify_negations`` drives a formula to negation normal form extended
with exclusive-or: negations end up on atoms only, except that a negated
biconditional becomes A ⊕ B (and, for closure, a negated exclusive-or
becomes A ↔ B). Positive connectives are left untouched. Rewrites apply
top-down to a fixed point and every step lands in the trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from folsquare.fol.ast import (
    Atom,
    Binary,
    BinOp,
    Formula,
    Not,
    Quant,
    Quantified,
)

RULES = ("QuantNeg", "DeMorganAnd", "DeMorganOr", "ImplNeg", "IffNeg", "XorNeg", "DoubleNeg")


@dataclass(frozen=True)
class SimplificationStep:
    rule: str
    before: Formula
    after: Formula


@dataclass
class SimplificationTrace:
    steps: list[SimplificationStep]


def negate(f: Formula) -> Formula:
    """Wrap in a negation; no simplification."""
    return Not(f)


_DUAL = {Quant.FORALL: Quant.EXISTS, Quant.EXISTS: Quant.FORALL}


def _rewrite_negation(f: Not) -> tuple[str, Formula] | None:
    """One top-level rewrite of ¬g, or None when ¬g is already literal."""
    g = f.sub
    if isinstance(g, Not):
        return ("DoubleNeg", g.sub)
    if isinstance(g, Quantified):
        return ("QuantNeg", Quantified(_DUAL[g.quant], g.var, Not(g.body)))
    if isinstance(g, Binary):
        if g.op == BinOp.AND:
            return ("DeMorganAnd", Binary(BinOp.OR, Not(g.left), Not(g.right)))
        if g.op == BinOp.OR:
            return ("DeMorganOr", Binary(BinOp.AND, Not(g.left), Not(g.right)))
        if g.op == BinOp.IMPLIES:
            return ("ImplNeg", Binary(BinOp.AND, g.left, Not(g.right)))
        if g.op == BinOp.IFF:
            return ("IffNeg", Binary(BinOp.XOR, g.left, g.right))
        if g.op == BinOp.XOR:
            return ("XorNeg", Binary(BinOp.IFF, g.left, g.right))
    return None


def simplify_negations(f: Formula) -> tuple[Formula, SimplificationTrace]:
    steps: list[SimplificationStep] = []

    def walk(g: Formula) -> Formula:
        if isinstance(g, Not):
            rewrite = _rewrite_negation(g)
            if rewrite is not None:
                rule, after = rewrite
                steps.append(SimplificationStep(rule, g, after))
                return walk(after)
            return Not(walk(g.sub))
        if isinstance(g, Binary):
            return Binary(g.op, walk(g.left), walk(g.right))
        if isinstance(g, Quantified):
            return Quantified(g.quant, g.var, walk(g.body))
        return g

    result = walk(f)
    return result, SimplificationTrace(steps)


def contradictory(f: Formula) -> Formula:
    """The strict negation of ``f``, pushed to normal form."""
    result, _ = simplify_negations(negate(f))
    return result


def is_nnf(f: Formula) -> bool:
    """Negations on atoms only (the normal form the simplifier targets)."""
    if isinstance(f, Atom):
        return True
    if isinstance(f, Not):
        return isinstance(f.sub, Atom)
    if isinstance(f, Binary):
        return is_nnf(f.left) and is_nnf(f.right)
    if isinstance(f, Quantified):
        return is_nnf(f.body)
    raise TypeError(f"not a formula: {f!r}")
