"""Finite-model enumeration: truth evaluation, satisfiability, entailment.

Entailment here is checked over explicit small domains (default sizes 1-3),
which is sound for refutation and adequate for the function-free, bounded
fragment the rest of the package emits, but not complete for full
first-order validity. Constant maps are enumerated with the first constant
pinned to element 0; closed-formula truth is permutation-invariant, so no
models are lost.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from folsquare.errors import InconsistentPremisesWarning, OracleBudgetExceeded, UnmappedConstant
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
    Var,
    constants,
    predicates,
)

DEFAULT_DOMAIN_SIZES = (1, 2, 3)
DEFAULT_BUDGET = 200_000


class Label(Enum):
    TRUE = "True"
    FALSE = "False"
    UNCERTAIN = "Uncertain"


class Source(Enum):
    ORACLE = "Oracle"
    SOLVER = "Solver"
    DIRECT_RESOLUTION = "DirectResolution"
    QUICK_REFLECTION = "QuickReflection"
    DEEP_REFLECTION = "DeepReflection"
    DEFAULT = "Default"


@dataclass(frozen=True)
class Verdict:
    label: Label
    source: Source

    def negated(self) -> "Verdict":
        if self.label == Label.TRUE:
            return Verdict(Label.FALSE, self.source)
        if self.label == Label.FALSE:
            return Verdict(Label.TRUE, self.source)
        return self


@dataclass
class FiniteModel:
    domain: tuple[int, ...]
    interpretation: dict[tuple[str, int], frozenset[tuple[int, ...]]]
    constant_map: dict[str, int]

    def describe(self) -> str:
        preds = ", ".join(
            f"{name}/{arity}={sorted(tuples)}"
            for (name, arity), tuples in sorted(self.interpretation.items())
        )
        consts = ", ".join(f"{c}↦{e}" for c, e in sorted(self.constant_map.items()))
        return f"domain={list(self.domain)}; {preds}" + (f"; {consts}" if consts else "")


@dataclass(frozen=True)
class Vocabulary:
    predicates: tuple[tuple[str, int], ...]
    constants: tuple[str, ...]

    @classmethod
    def from_formulas(cls, formulas: Iterable[Formula]) -> "Vocabulary":
        preds: set[tuple[str, int]] = set()
        consts: set[str] = set()
        for f in formulas:
            preds |= predicates(f)
            consts |= constants(f)
        return cls(tuple(sorted(preds)), tuple(sorted(consts)))

    def merged(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(
            tuple(sorted(set(self.predicates) | set(other.predicates))),
            tuple(sorted(set(self.constants) | set(other.constants))),
        )


def _term_value(t, env: dict[str, int], constant_map: dict[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnmappedConstant(f"unbound variable {t.name!r} (formula not closed)")
    if isinstance(t, Const):
        try:
            return constant_map[t.name]
        except KeyError:
            raise UnmappedConstant(f"constant {t.name!r} has no interpretation")
    if isinstance(t, Func):
        raise UnmappedConstant(f"function symbol {t.name!r} has no finite-model semantics")
    raise TypeError(f"not a term: {t!r}")


def eval_formula(f: Formula, m: FiniteModel, env: dict[str, int] | None = None) -> bool:
    """Classical truth of a closed formula in ``m``; ⊕ is exclusive-or."""
    env = env or {}

    def ev(g: Formula, env: dict[str, int]) -> bool:
        if isinstance(g, Atom):
            tup = tuple(_term_value(t, env, m.constant_map) for t in g.args)
            return tup in m.interpretation.get((g.pred, len(g.args)), frozenset())
        if isinstance(g, Not):
            return not ev(g.sub, env)
        if isinstance(g, Binary):
            if g.op == BinOp.AND:
                return ev(g.left, env) and ev(g.right, env)
            if g.op == BinOp.OR:
                return ev(g.left, env) or ev(g.right, env)
            if g.op == BinOp.XOR:
                return ev(g.left, env) != ev(g.right, env)
            if g.op == BinOp.IMPLIES:
                return (not ev(g.left, env)) or ev(g.right, env)
            return ev(g.left, env) == ev(g.right, env)
        if isinstance(g, Quantified):
            if g.quant == Quant.FORALL:
                return all(ev(g.body, {**env, g.var: e}) for e in m.domain)
            return any(ev(g.body, {**env, g.var: e}) for e in m.domain)
        raise TypeError(f"not a formula: {g!r}")

    return ev(f, env)


def model_count(vocabulary: Vocabulary, domain_size: int) -> int:
    """Interpretations of the vocabulary over the given domain size."""
    total = 1
    for _, arity in vocabulary.predicates:
        cells = domain_size ** arity
        if cells > 60:
            return 2 ** 61  # effectively unbounded; trips any sane budget
        total *= 1 << cells
        if total > 2 ** 61:
            return total
    free_constants = max(0, len(vocabulary.constants) - 1)
    total *= domain_size ** free_constants
    return total


def enumerate_models(
    vocabulary: Vocabulary,
    domain_size: int,
    filters: Iterable[Formula] = (),
    budget: int = DEFAULT_BUDGET,
) -> Iterator[FiniteModel]:
    """All models of the given size satisfying every filter formula.

    Deterministic order: constant maps vary fastest, predicate subsets in
    bitmask order. Raises OracleBudgetExceeded before yielding anything if
    the interpretation space is larger than ``budget``.
    """
    if domain_size < 1:
        raise ValueError("domain_size must be >= 1")
    if model_count(vocabulary, domain_size) > budget:
        raise OracleBudgetExceeded(
            f"{model_count(vocabulary, domain_size)} interpretations exceed budget {budget}"
        )
    domain = tuple(range(domain_size))
    filters = tuple(filters)

    cells_per_pred = [
        list(itertools.product(domain, repeat=arity)) for _, arity in vocabulary.predicates
    ]
    const_choices: list[tuple[int, ...]]
    if vocabulary.constants:
        free = len(vocabulary.constants) - 1
        const_choices = [(0,) + rest for rest in itertools.product(domain, repeat=free)]
    else:
        const_choices = [()]

    for masks in itertools.product(*(range(1 << len(cells)) for cells in cells_per_pred)):
        interp = {
            key: frozenset(
                cells[i] for i in range(len(cells)) if masks[p] >> i & 1
            )
            for p, (key, cells) in enumerate(zip(vocabulary.predicates, cells_per_pred))
        }
        for mapping in const_choices:
            model = FiniteModel(
                domain=domain,
                interpretation=interp,
                constant_map=dict(zip(vocabulary.constants, mapping)),
            )
            if all(eval_formula(f, model) for f in filters):
                yield model


def entail(
    premises: Iterable[Formula],
    query: Formula,
    domain_sizes: Iterable[int] = DEFAULT_DOMAIN_SIZES,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Three-valued entailment by exhaustive premise-model checking.

    True when every premise-model over every listed size satisfies the
    query (and at least one premise-model exists); False when every
    premise-model refutes it; Uncertain otherwise, including the
    inconsistent-premises case, which additionally raises an
    InconsistentPremisesWarning.
    """
    premises = tuple(premises)
    vocab = Vocabulary.from_formulas(premises + (query,))
    found = False
    all_true = True
    all_false = True
    for size in domain_sizes:
        for model in enumerate_models(vocab, size, filters=premises, budget=budget):
            found = True
            if eval_formula(query, model):
                all_false = False
            else:
                all_true = False
            if not all_true and not all_false:
                return Verdict(Label.UNCERTAIN, Source.ORACLE)
    if not found:
        warnings.warn(
            InconsistentPremisesWarning("no model of the premises at any checked size")
        )
        return Verdict(Label.UNCERTAIN, Source.ORACLE)
    if all_true:
        return Verdict(Label.TRUE, Source.ORACLE)
    if all_false:
        return Verdict(Label.FALSE, Source.ORACLE)
    return Verdict(Label.UNCERTAIN, Source.ORACLE)


def satisfiable(
    formulas: Iterable[Formula],
    domain_sizes: Iterable[int] = DEFAULT_DOMAIN_SIZES,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    formulas = tuple(formulas)
    vocab = Vocabulary.from_formulas(formulas)
    for size in domain_sizes:
        for _ in enumerate_models(vocab, size, filters=formulas, budget=budget):
            return True
    return False


def find_model(
    formulas: Iterable[Formula],
    domain_sizes: Iterable[int] = DEFAULT_DOMAIN_SIZES,
    budget: int = DEFAULT_BUDGET,
) -> FiniteModel | None:
    """First model satisfying all formulas, or None."""
    formulas = tuple(formulas)
    vocab = Vocabulary.from_formulas(formulas)
    for size in domain_sizes:
        for model in enumerate_models(vocab, size, filters=formulas, budget=budget):
            return model
    return None


def equivalent(
    f: Formula,
    g: Formula,
    domain_sizes: Iterable[int] = DEFAULT_DOMAIN_SIZES,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Same truth value in every model of every listed size."""
    vocab = Vocabulary.from_formulas((f, g))
    for size in domain_sizes:
        for model in enumerate_models(vocab, size, budget=budget):
            if eval_formula(f, model) != eval_formula(g, model):
                return False
    return True
