"""Semiotic squares over first-order formulas.

A square holds a proposition S1, its strict negation ¬S1, a contrary S2,
and the contrary's negation ¬S2. Contraries come from six root templates
(three strict, three conditional) or, beyond template coverage, from a
pluggable generator. Conditional templates carry import constraints; a
constraint, once checked against the premises, contributes a guard formula
that restricts the model class over which contrariety and the two
implication relations are verified. Contradiction relations are verified
over the unrestricted class.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from folsquare.errors import TemplateMismatch
from folsquare.fol.ast import (
    Atom,
    Binary,
    BinOp,
    Formula,
    Not,
    Quant,
    Quantified,
    free_variables,
    render,
)
from folsquare.fol.validate import validate_cfg
from folsquare.oracle import (
    DEFAULT_BUDGET,
    FiniteModel,
    Label,
    Vocabulary,
    entail,
    enumerate_models,
    eval_formula,
    satisfiable,
)
from folsquare.transform import contradictory, simplify_negations

RULE_NAMES = ("Rule1", "Rule2", "Rule3", "Rule4", "Rule5", "Rule6")
STRICT_RULES = ("Rule1", "Rule2", "Rule3")
CONDITIONAL_RULES = ("Rule4", "Rule5", "Rule6")


@dataclass(frozen=True)
class SquarePosition:
    statement: str
    formula: Formula | None
    usable: bool = True


UNUSABLE = SquarePosition(statement="", formula=None, usable=False)


@dataclass(frozen=True)
class ImportConstraint:
    kind: str  # NonEmptyDomain | SatisfiableAntecedent | AntecedentExclusion | InstantiableVariable
    target: Formula
    satisfied: bool | None = None


@dataclass(frozen=True)
class RelationReport:
    pair: str  # Contrariety | Contradiction | Implication
    positions: tuple[str, str]
    holds: bool
    witness: FiniteModel | None
    domains_checked: tuple[int, ...]


@dataclass
class SquareValidation:
    truth_table_ok: bool = False
    cfg_ok: bool = False
    llm_ok: bool | None = None


@dataclass
class SemioticSquare:
    s1: SquarePosition
    s2: SquarePosition
    not_s1: SquarePosition
    not_s2: SquarePosition
    contrary_kind: str  # Strict | Conditional | ModelAssisted | Absent
    constraints: list[ImportConstraint] = field(default_factory=list)
    validation: SquareValidation = field(default_factory=SquareValidation)
    concept_a: str = ""
    concept_b: str = ""

    def to_record(self) -> dict:
        def pos(p: SquarePosition) -> dict:
            return {"statement": p.statement, "FOL": render(p.formula) if p.formula else ""}

        return {
            "concept_A": self.concept_a,
            "concept_B": self.concept_b,
            "S1": pos(self.s1),
            "S2": pos(self.s2),
            "not_S1": pos(self.not_s1),
            "not_S2": pos(self.not_s2),
        }


ContraryGenerator = Callable[[SquarePosition, Sequence[Formula]], Iterable[SquarePosition]]


def classify_template(f: Formula) -> str:
    """Match the outermost structure against the six contrary templates."""
    if isinstance(f, Quantified):
        return "Rule1" if f.quant == Quant.FORALL else "Rule4"
    if isinstance(f, Binary):
        return {
            BinOp.AND: "Rule2",
            BinOp.IFF: "Rule3",
            BinOp.IMPLIES: "Rule5",
            BinOp.OR: "Rule6",
        }.get(f.op, "Other")
    return "Other"


def _negated(f: Formula) -> Formula:
    result, _ = simplify_negations(Not(f))
    return result


def contrary_strict(f: Formula) -> Formula:
    """Strict contrary for the universal, conjunction, and biconditional roots.

    A universal over an implication body contraries the consequent, so
    "always B" becomes "always not B" under the same antecedent; other
    universal bodies are negated whole.
    """
    rule = classify_template(f)
    if rule == "Rule1":
        body = f.body
        if isinstance(body, Binary) and body.op == BinOp.IMPLIES:
            new_body = Binary(BinOp.IMPLIES, body.left, _negated(body.right))
        else:
            new_body = _negated(body)
        return Quantified(Quant.FORALL, f.var, new_body)
    if rule == "Rule2":
        return Binary(BinOp.AND, f.left, _negated(f.right))
    if rule == "Rule3":
        return Binary(BinOp.IFF, f.left, _negated(f.right))
    raise TemplateMismatch(f"{rule} root is not a strict-contrary template")


def contrary_conditional(f: Formula) -> tuple[Formula, list[ImportConstraint]]:
    """Conditional contrary plus its unevaluated import constraints."""
    rule = classify_template(f)
    if rule == "Rule4":
        s2 = Quantified(Quant.EXISTS, f.var, _negated(f.body))
        return s2, [ImportConstraint("NonEmptyDomain", f)]
    if rule == "Rule5":
        s2 = Binary(BinOp.IMPLIES, f.left, _negated(f.right))
        return s2, [ImportConstraint("SatisfiableAntecedent", f.left)]
    if rule == "Rule6":
        s2 = Binary(BinOp.OR, f.left, _negated(f.right))
        return s2, [ImportConstraint("AntecedentExclusion", f.left)]
    raise TemplateMismatch(f"{rule} root is not a conditional-contrary template")


def _implicit_constraints(f: Formula) -> list[ImportConstraint]:
    """Import constraints a strict template still needs to avoid vacuity.

    A universal over an implication is vacuously true when nothing satisfies
    the antecedent, so its contrariety only holds where the antecedent is
    instantiated.
    """
    if classify_template(f) == "Rule1":
        body = f.body
        if isinstance(body, Binary) and body.op == BinOp.IMPLIES:
            return [
                ImportConstraint(
                    "SatisfiableAntecedent",
                    Quantified(Quant.EXISTS, f.var, body.left),
                )
            ]
    return []


def existential_closure(f: Formula) -> Formula:
    for v in sorted(free_variables(f), reverse=True):
        f = Quantified(Quant.EXISTS, v, f)
    return f


def _predicate_witness_formulas(f: Formula) -> list[Formula]:
    """One ∃-closed atom per predicate of ``f`` (its extension is non-empty)."""
    from folsquare.fol.ast import Var, predicates

    out = []
    for name, arity in sorted(predicates(f)):
        args = tuple(Var(f"u{i}") for i in range(arity))
        body: Formula = Atom(name, args)
        for v in sorted((a.name for a in args), reverse=True):
            body = Quantified(Quant.EXISTS, v, body)
        out.append(body)
    return out


def guard_formulas(constraint: ImportConstraint) -> list[Formula]:
    """Model-class restriction the constraint imposes once satisfied."""
    if constraint.kind == "SatisfiableAntecedent":
        return [existential_closure(constraint.target)]
    if constraint.kind == "AntecedentExclusion":
        return [_negated(existential_closure(constraint.target))]
    if constraint.kind in ("NonEmptyDomain", "InstantiableVariable"):
        # subjects instantiable: every predicate of the target has a witness
        return _predicate_witness_formulas(constraint.target)
    raise ValueError(f"unknown constraint kind {constraint.kind!r}")


def existential_import_check(
    constraints: Sequence[ImportConstraint],
    premises: Sequence[Formula],
    max_domain: int = 3,
    budget: int = DEFAULT_BUDGET,
) -> list[ImportConstraint]:
    """Evaluate each constraint against the premises; returns copies with
    ``satisfied`` set."""
    sizes = tuple(range(1, max_domain + 1))
    out = []
    for c in constraints:
        if c.kind == "AntecedentExclusion":
            verdict = entail(premises, existential_closure(c.target), sizes, budget)
            ok = verdict.label != Label.TRUE
        elif c.kind == "NonEmptyDomain":
            ok = satisfiable(
                list(premises) + _predicate_witness_formulas(c.target), sizes, budget
            )
        else:  # SatisfiableAntecedent, InstantiableVariable
            ok = satisfiable(
                list(premises) + [existential_closure(c.target)], sizes, budget
            )
        out.append(replace(c, satisfied=ok))
    return out


def _pair_holds_everywhere(
    left: Formula,
    right: Formula,
    check,
    class_filters: Sequence[Formula],
    max_domain: int,
    budget: int,
) -> tuple[bool, FiniteModel | None]:
    """check(l_truth, r_truth) must hold in every model of the filters."""
    vocab = Vocabulary.from_formulas([left, right, *class_filters])
    for size in range(1, max_domain + 1):
        for model in enumerate_models(vocab, size, filters=class_filters, budget=budget):
            if not check(eval_formula(left, model), eval_formula(right, model)):
                return False, model
    return True, None


def verify_relations(
    square: SemioticSquare,
    max_domain: int = 3,
    premises: Sequence[Formula] = (),
    budget: int = DEFAULT_BUDGET,
) -> list[RelationReport]:
    """Model-check the square's contradiction, contrariety, and implication
    relations.

    Contradictions are required in every model; contrariety and the two
    implications are checked over models satisfying the premises plus the
    guards of the square's satisfied import constraints. A countermodel is
    attached whenever a relation fails.
    """
    sizes = tuple(range(1, max_domain + 1))
    guards: list[Formula] = list(premises)
    for c in square.constraints:
        if c.satisfied:
            guards.extend(guard_formulas(c))

    reports: list[RelationReport] = []

    def add(pair, positions, left, right, check, filters):
        holds, witness = _pair_holds_everywhere(left, right, check, filters, max_domain, budget)
        reports.append(RelationReport(pair, positions, holds, witness, sizes))

    add(
        "Contradiction", ("S1", "NotS1"),
        square.s1.formula, square.not_s1.formula,
        lambda a, b: a != b, (),
    )
    if square.s2.usable and square.s2.formula is not None:
        add(
            "Contradiction", ("S2", "NotS2"),
            square.s2.formula, square.not_s2.formula,
            lambda a, b: a != b, (),
        )
        add(
            "Contrariety", ("S1", "S2"),
            square.s1.formula, square.s2.formula,
            lambda a, b: not (a and b), guards,
        )
        add(
            "Implication", ("S1", "NotS2"),
            square.s1.formula, square.not_s2.formula,
            lambda a, b: (not a) or b, guards,
        )
        add(
            "Implication", ("S2", "NotS1"),
            square.s2.formula, square.not_s1.formula,
            lambda a, b: (not a) or b, guards,
        )
    return reports


def both_false_witness(
    square: SemioticSquare,
    max_domain: int = 3,
    premises: Sequence[Formula] = (),
    budget: int = DEFAULT_BUDGET,
) -> FiniteModel | None:
    """A guarded model where S1 and S2 are both false, if one exists.

    Such a witness separates genuine contrariety from a degenerate
    contradiction pair.
    """
    if not (square.s2.usable and square.s2.formula is not None):
        return None
    filters: list[Formula] = list(premises)
    for c in square.constraints:
        if c.satisfied:
            filters.extend(guard_formulas(c))
    vocab = Vocabulary.from_formulas(
        [square.s1.formula, square.s2.formula, *filters]
    )
    for size in range(1, max_domain + 1):
        for model in enumerate_models(vocab, size, filters=filters, budget=budget):
            if not eval_formula(square.s1.formula, model) and not eval_formula(
                square.s2.formula, model
            ):
                return model
    return None


def _passthrough(formula: Formula) -> SquarePosition:
    return SquarePosition(statement=render(formula), formula=formula)


def build_square(
    s1: SquarePosition,
    premises: Sequence[Formula] = (),
    generator: ContraryGenerator | None = None,
    max_domain: int = 3,
    budget: int = DEFAULT_BUDGET,
    concept_a: str = "",
    concept_b: str = "",
) -> SemioticSquare:
    """Construct the full square from an S1 position.

    ¬S1 is the strict negation. S2 comes from the matching template, or
    from the generator beyond template coverage. A contrary survives only
    if its import constraints check out against the premises and the
    relation suite verifies; otherwise the square degrades to an absent
    contrary, which downstream adjudication treats as contradiction-only.
    """
    formula = s1.formula
    if formula is None:
        raise ValueError("S1 position has no formula")
    not_s1 = _passthrough(contradictory(formula))

    rule = classify_template(formula)
    candidates: list[tuple[str, SquarePosition, list[ImportConstraint]]] = []
    if rule in STRICT_RULES:
        candidates.append(("Strict", _passthrough(contrary_strict(formula)), _implicit_constraints(formula)))
    elif rule in CONDITIONAL_RULES:
        s2_formula, constraints = contrary_conditional(formula)
        candidates.append(("Conditional", _passthrough(s2_formula), constraints))
    elif generator is not None:
        for candidate in generator(s1, tuple(premises)):
            if candidate.formula is None:
                continue
            if not validate_cfg(render(candidate.formula)).valid:
                continue
            candidates.append(("ModelAssisted", candidate, [ImportConstraint("InstantiableVariable", candidate.formula)]))

    for kind, s2, constraints in candidates:
        checked = existential_import_check(constraints, premises, max_domain, budget)
        if not all(c.satisfied for c in checked):
            continue
        square = SemioticSquare(
            s1=s1,
            s2=s2,
            not_s1=not_s1,
            not_s2=_passthrough(contradictory(s2.formula)),
            contrary_kind=kind,
            constraints=checked,
            concept_a=concept_a,
            concept_b=concept_b,
        )
        reports = verify_relations(square, max_domain, premises, budget)
        square.validation.truth_table_ok = all(r.holds for r in reports)
        square.validation.cfg_ok = all(
            validate_cfg(render(p.formula)).valid
            for p in (square.s1, square.s2, square.not_s1, square.not_s2)
        )
        if square.validation.truth_table_ok:
            return square

    square = SemioticSquare(
        s1=s1,
        s2=UNUSABLE,
        not_s1=not_s1,
        not_s2=UNUSABLE,
        contrary_kind="Absent",
        constraints=[],
        concept_a=concept_a,
        concept_b=concept_b,
    )
    reports = verify_relations(square, max_domain, premises, budget)
    square.validation.truth_table_ok = all(r.holds for r in reports)
    square.validation.cfg_ok = validate_cfg(render(formula)).valid
    return square


def canonicalize_antonyms(f: Formula, antonyms: dict[str, str] | None = None) -> Formula:
    """Rewrite declared antonym predicates to negations of their base form.

    The default table maps Unjust to ¬Just; truth-table checks need the
    square's positions to share one vocabulary.
    """
    table = {"Unjust": "Just"} if antonyms is None else antonyms

    def walk(g: Formula) -> Formula:
        if isinstance(g, Atom):
            if g.pred in table:
                return Not(Atom(table[g.pred], g.args))
            return g
        if isinstance(g, Not):
            return Not(walk(g.sub))
        if isinstance(g, Binary):
            return Binary(g.op, walk(g.left), walk(g.right))
        if isinstance(g, Quantified):
            return Quantified(g.quant, g.var, walk(g.body))
        return g

    return walk(f)
