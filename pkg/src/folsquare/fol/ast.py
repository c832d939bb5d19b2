"""Abstract syntax for the function-free first-order fragment.

Nodes are immutable; structural equality is dataclass equality. Function
applications can appear in term position after parsing but are rejected by
validation, so everything downstream of a validated formula may assume
constants and variables only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from folsquare.errors import CaptureError

# Lexical convention: these single letters (optionally digit-suffixed) are
# variables even when free; any identifier bound by a quantifier is a
# variable within its scope.
VARIABLE_LETTERS = frozenset("xyzuvw")


def is_variable_name(name: str) -> bool:
    if not name:
        return False
    return name[0] in VARIABLE_LETTERS and (len(name) == 1 or name[1:].isdigit())


def is_binder_name(name: str) -> bool:
    """Quantifier binders may be any single lowercase ASCII letter, digit-suffixed."""
    if not name:
        return False
    head, rest = name[0], name[1:]
    return head.isascii() and head.isalpha() and head.islower() and (rest == "" or rest.isdigit())


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Func(Term):
    """Function application. Parseable, but validation rejects it."""

    name: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


class BinOp(Enum):
    AND = "∧"
    OR = "∨"
    XOR = "⊕"
    IMPLIES = "→"
    IFF = "↔"


class Quant(Enum):
    FORALL = "∀"
    EXISTS = "∃"


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class Binary(Formula):
    op: BinOp
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Quantified(Formula):
    quant: Quant
    var: str
    body: Formula


# Constructor shorthands, mostly for tests and demos.
def atom(pred: str, *args: Term | str) -> Atom:
    terms = tuple(a if isinstance(a, Term) else (Var(a) if is_variable_name(a) else Const(a)) for a in args)
    return Atom(pred, terms)


def not_(f: Formula) -> Not:
    return Not(f)


def and_(l: Formula, r: Formula) -> Binary:
    return Binary(BinOp.AND, l, r)


def or_(l: Formula, r: Formula) -> Binary:
    return Binary(BinOp.OR, l, r)


def xor(l: Formula, r: Formula) -> Binary:
    return Binary(BinOp.XOR, l, r)


def implies(l: Formula, r: Formula) -> Binary:
    return Binary(BinOp.IMPLIES, l, r)


def iff(l: Formula, r: Formula) -> Binary:
    return Binary(BinOp.IFF, l, r)


def forall(var: str, body: Formula) -> Quantified:
    return Quantified(Quant.FORALL, var, body)


def exists(var: str, body: Formula) -> Quantified:
    return Quantified(Quant.EXISTS, var, body)


def _term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Func):
        out: frozenset[str] = frozenset()
        for a in t.args:
            out |= _term_vars(a)
        return out
    return frozenset()


def free_variables(f: Formula) -> frozenset[str]:
    """Variables not bound by any enclosing quantifier."""
    if isinstance(f, Atom):
        out: frozenset[str] = frozenset()
        for a in f.args:
            out |= _term_vars(a)
        return out
    if isinstance(f, Not):
        return free_variables(f.sub)
    if isinstance(f, Binary):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, Quantified):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def constants(f: Formula) -> frozenset[str]:
    """All constant names occurring in ``f``."""

    def term_consts(t: Term) -> frozenset[str]:
        if isinstance(t, Const):
            return frozenset((t.name,))
        if isinstance(t, Func):
            out: frozenset[str] = frozenset()
            for a in t.args:
                out |= term_consts(a)
            return out
        return frozenset()

    if isinstance(f, Atom):
        out: frozenset[str] = frozenset()
        for a in f.args:
            out |= term_consts(a)
        return out
    if isinstance(f, Not):
        return constants(f.sub)
    if isinstance(f, Binary):
        return constants(f.left) | constants(f.right)
    if isinstance(f, Quantified):
        return constants(f.body)
    raise TypeError(f"not a formula: {f!r}")


def predicates(f: Formula) -> frozenset[tuple[str, int]]:
    """(name, arity) pairs of all predicates occurring in ``f``."""
    if isinstance(f, Atom):
        return frozenset(((f.pred, len(f.args)),))
    if isinstance(f, Not):
        return predicates(f.sub)
    if isinstance(f, Binary):
        return predicates(f.left) | predicates(f.right)
    if isinstance(f, Quantified):
        return predicates(f.body)
    raise TypeError(f"not a formula: {f!r}")


def has_functions(f: Formula) -> bool:
    def term_has(t: Term) -> bool:
        return isinstance(t, Func)

    if isinstance(f, Atom):
        return any(term_has(a) for a in f.args)
    if isinstance(f, Not):
        return has_functions(f.sub)
    if isinstance(f, Binary):
        return has_functions(f.left) or has_functions(f.right)
    if isinstance(f, Quantified):
        return has_functions(f.body)
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, var: str, t: Term) -> Formula:
    """Replace free occurrences of ``var`` by ``t``, refusing capture."""
    t_vars = _term_vars(t)

    def sub_term(term: Term) -> Term:
        if isinstance(term, Var) and term.name == var:
            return t
        if isinstance(term, Func):
            return Func(term.name, tuple(sub_term(a) for a in term.args))
        return term

    def walk(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(sub_term(a) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.sub))
        if isinstance(g, Binary):
            return Binary(g.op, walk(g.left), walk(g.right))
        if isinstance(g, Quantified):
            if g.var == var:
                return g  # var is bound here; no free occurrences below
            if g.var in t_vars and var in free_variables(g.body):
                raise CaptureError(
                    f"substituting {t} for {var} would capture {g.var} under {g.quant.value}{g.var}"
                )
            return Quantified(g.quant, g.var, walk(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return walk(f)


def alpha_normalize(f: Formula) -> Formula:
    """Rename bound variables to a canonical v0, v1, ... sequence.

    Used for structural comparison up to bound-variable names.
    """
    counter = [0]

    def walk(g: Formula, env: dict[str, str]) -> Formula:
        if isinstance(g, Atom):
            def ren(t: Term) -> Term:
                if isinstance(t, Var):
                    return Var(env.get(t.name, t.name))
                if isinstance(t, Func):
                    return Func(t.name, tuple(ren(a) for a in t.args))
                return t

            return Atom(g.pred, tuple(ren(a) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.sub, env))
        if isinstance(g, Binary):
            return Binary(g.op, walk(g.left, env), walk(g.right, env))
        if isinstance(g, Quantified):
            fresh = f"v{counter[0]}"
            counter[0] += 1
            return Quantified(g.quant, fresh, walk(g.body, {**env, g.var: fresh}))
        raise TypeError(f"not a formula: {g!r}")

    return walk(f, {})


def render(f: Formula) -> str:
    """Render to the interchange syntax; parses back to an equal AST.

    Atoms are bare; binary nodes are always parenthesized; a negated
    quantifier is parenthesized so negation scope survives embedding.
    """
    if isinstance(f, Atom):
        return f"{f.pred}({', '.join(str(a) for a in f.args)})"
    if isinstance(f, Not):
        if isinstance(f.sub, Quantified):
            return f"¬({render(f.sub)})"
        return f"¬{render(f.sub)}"  # atoms bare, Binary self-parenthesizes
    if isinstance(f, Binary):
        # A quantified child must be grouped or the re-parse would extend
        # its scope across the operator (longest-scope convention).
        def side(g: Formula) -> str:
            return f"({render(g)})" if isinstance(g, Quantified) else render(g)

        return f"({side(f.left)} {f.op.value} {side(f.right)})"
    if isinstance(f, Quantified):
        return f"{f.quant.value}{f.var} {render(f.body)}"
    raise TypeError(f"not a formula: {f!r}")
