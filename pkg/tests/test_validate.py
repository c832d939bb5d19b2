from folsquare.fol import parse_formula, validate_cfg


def checks(report):
    return [f.check for f in report.failures]


def test_debt_rule_is_valid():
    report = validate_cfg("∀x (Debt(x) ∧ Repaid(x) → ¬Just(x))")
    assert report.valid
    assert report.failures == []


def test_shadowed_binder_flagged():
    report = validate_cfg("∀x ∀x P(x)")
    assert not report.valid
    assert "QuantifierScope" in checks(report)


def test_arity_mismatch_flagged():
    report = validate_cfg("∀x ∀y (P(x) ∧ P(x,y))")
    assert not report.valid
    assert "PredicateStructure" in checks(report)


def test_free_variable_flagged_in_closed_context():
    report = validate_cfg("P(x)")
    assert not report.valid
    assert "QuantifierScope" in checks(report)
    assert validate_cfg("P(x)", require_closed=False).valid


def test_function_symbols_rejected():
    report = validate_cfg("∀x P(f(x))")
    assert not report.valid
    assert "Function" in checks(report)


def test_parse_failures_become_data():
    report = validate_cfg("P(a")
    assert not report.valid
    assert len(report.failures) == 1
    start, end = report.failures[0].location
    assert start >= 0 and end >= start


def test_valid_implies_parse_succeeds():
    texts = [
        "∀x (Debt(x) ∧ Repaid(x) → ¬Just(x))",
        "∃x (Just(x) ∧ Thief(x))",
        "P(a) ∨ ¬Q(b)",
    ]
    for text in texts:
        report = validate_cfg(text)
        if report.valid:
            assert parse_formula(text) is not None
            assert report.formula == parse_formula(text)
