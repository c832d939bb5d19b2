import random

import pytest

from folsquare.errors import ParseError
from folsquare.fol import (
    Atom,
    Binary,
    BinOp,
    Const,
    Not,
    Quant,
    Quantified,
    Var,
    parse_formula,
    render,
)
from genformulas import random_formula

# Formula strings carried by the bundled prompt templates, the worked case
# walkthrough, and the contrary-rule table (rows with schematic A/B fillers
# instantiated as unary atoms over the constant e).
PROMPT_FORMULAS = [
    "∀x (Debt(x) ∧ Repaid(x) → ¬Just(x))",
    "∀x (Debt(x) ∧ Repaid(x) → Just(x))",
    "∀x (Debt(x) ∧ Repaid(x) → Unjust(x))",
    "∃x (Just(x) ∧ Thief(x))",
    "∀x (Just(x) → ¬Guardian(x))",
    "∀x (Just(x) → ¬Thief(x))",
    "∃x (Just(x) ∧ Guardian(x))",
    "∃y (SkillfulAt(Strike, y) ∧ CanPerform(Defend, y))",
    "∀a (Just(a) → ∀y (Friend(y) → Beneficial(a,y)))",
]

RULE_TABLE_FORMULAS = [
    "∀x φ(x)",
    "¬∀x φ(x)",
    "∃x ¬φ(x)",
    "∀x ¬φ(x)",
    "∃x φ(x)",
    "¬∃x φ(x)",
    "A(e) ∧ B(e)",
    "¬A(e) ∨ ¬B(e)",
    "A(e) ∧ ¬B(e)",
    "A(e) ↔ B(e)",
    "A(e) ⊕ B(e)",
    "A(e) ↔ ¬B(e)",
    "A(e) → B(e)",
    "A(e) → ¬B(e)",
    "A(e) ∨ B(e)",
    "¬A(e) ∧ ¬B(e)",
    "A(e) ∨ ¬B(e)",
]


@pytest.mark.parametrize("text", PROMPT_FORMULAS + RULE_TABLE_FORMULAS)
def test_canonical_formulas_parse_and_round_trip(text):
    f = parse_formula(text)
    assert parse_formula(render(f)) == f


def test_debt_rule_ast_shape():
    f = parse_formula("∀x (Debt(x) ∧ Repaid(x) → ¬Just(x))")
    x = Var("x")
    expected = Quantified(
        Quant.FORALL,
        "x",
        Binary(
            BinOp.IMPLIES,
            Binary(BinOp.AND, Atom("Debt", (x,)), Atom("Repaid", (x,))),
            Not(Atom("Just", (x,))),
        ),
    )
    assert f == expected


def test_minimal_atom():
    assert parse_formula("P(a)") == Atom("P", (Const("a"),))


def test_trailing_operator_is_rejected():
    with pytest.raises(ParseError) as exc:
        parse_formula("∀x P(x) ∧")
    assert exc.value.span[0] >= 9


@pytest.mark.parametrize(
    "text",
    [
        "P(",
        "(P(a)",
        "P(a) Q(b)",
        "∧ P(a)",
        "P()",
        "P(a,)",
        "P",
        "",
        "∀x ∧ P(x)",
        "P(a) ∧ ∧ Q(a)",
    ],
)
def test_malformed_inputs_raise_with_span(text):
    with pytest.raises(ParseError) as exc:
        parse_formula(text)
    start, end = exc.value.span
    assert 0 <= start < end <= max(1, len(text)) + 1


def test_ascii_and_unicode_spellings_agree():
    pairs = [
        ("∀x (P(x) → Q(x))", "forall x (P(x) -> Q(x))"),
        ("∃y ¬P(y)", "exists y ~P(y)"),
        ("(P(a) ∧ Q(a)) ∨ R(a)", "(P(a) & Q(a)) | R(a)"),
        ("P(a) ⊕ Q(a)", "P(a) ^ Q(a)"),
        ("P(a) ↔ Q(a)", "P(a) <-> Q(a)"),
    ]
    for uni, ascii_ in pairs:
        assert parse_formula(uni) == parse_formula(ascii_)


def test_whitespace_insensitive():
    assert parse_formula("∀x(P(x)→Q(x))") == parse_formula("∀x ( P(x) →  Q(x) )")


def test_precedence_not_over_and_over_or_over_implies():
    f = parse_formula("¬P(a) ∧ Q(a) ∨ R(a) → P(b)")
    assert f == Binary(
        BinOp.IMPLIES,
        Binary(
            BinOp.OR,
            Binary(BinOp.AND, Not(Atom("P", (Const("a"),))), Atom("Q", (Const("a"),))),
            Atom("R", (Const("a"),)),
        ),
        Atom("P", (Const("b"),)),
    )


def test_left_associativity_within_level():
    f = parse_formula("P(a) ∧ Q(a) ∧ R(a)")
    assert isinstance(f.left, Binary) and f.left.op == BinOp.AND
    g = parse_formula("P(a) → Q(a) → R(a)")
    assert isinstance(g.left, Binary) and g.left.op == BinOp.IMPLIES


def test_mixed_implies_iff_chain_requires_parens():
    with pytest.raises(ParseError):
        parse_formula("P(a) → Q(a) ↔ R(a)")
    assert parse_formula("(P(a) → Q(a)) ↔ R(a)")
    assert parse_formula("P(a) → (Q(a) ↔ R(a))")


def test_quantifier_binds_longest_formula():
    f = parse_formula("∀x P(x) ∧ Q(x)")
    assert isinstance(f, Quantified)
    assert isinstance(f.body, Binary) and f.body.op == BinOp.AND
    g = parse_formula("(∀x P(x)) ∧ Q(a)")
    assert isinstance(g, Binary)


def test_negated_quantifier_without_parens():
    f = parse_formula("¬∀x P(x)")
    assert f == Not(Quantified(Quant.FORALL, "x", Atom("P", (Var("x"),))))


def test_bound_name_outside_letter_pool_is_a_variable():
    f = parse_formula("∀a P(a)")
    assert f.body == Atom("P", (Var("a"),))
    # free occurrence of the same name lexes as a constant
    assert parse_formula("P(a)") == Atom("P", (Const("a"),))


def test_double_negation_parses():
    assert parse_formula("¬¬P(a)") == Not(Not(Atom("P", (Const("a"),))))


def test_parse_determinism():
    text = "∀x (Debt(x) ∧ Repaid(x) → ¬Just(x))"
    assert parse_formula(text) == parse_formula(text)


def test_round_trip_property_1000_random_formulas():
    rng = random.Random(20240901)
    for i in range(1000):
        f = random_formula(rng, max_depth=5, allow_dyadic=(i % 7 == 0), scope=("z",) if i % 5 == 0 else ())
        assert parse_formula(render(f)) == f, render(f)
