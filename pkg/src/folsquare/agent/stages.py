"""Pipeline stages: square structuring, premise translation, planning, solving.

Every stage degrades instead of failing: unparsable model output triggers
one re-prompt asking for the JSON block alone, and a second failure yields
the stage's declared fallback (empty premises, a one-step plan, an
Uncertain verdict).
"""

from __future__ import annotations

import logging
import re
import time
from dataclasses import dataclass, field

from folsquare.backend.base import Backend, CompletionRequest, estimate_tokens
from folsquare.backend.extract import ExtractedPayload, extract_payload
from folsquare.backend.prompts import (
    PLANNER,
    SEMANTIC_STRUCTURING,
    SOLVER,
    TRANSLATOR,
    PromptTemplate,
    render_prompt,
)
from folsquare.errors import ExtractionError, ParseError
from folsquare.fol.ast import Formula, render
from folsquare.fol.parser import parse_formula
from folsquare.fol.validate import validate_cfg
from folsquare.oracle import DEFAULT_BUDGET, Label, Source, Verdict, equivalent
from folsquare.semiotic import (
    SemioticSquare,
    SquarePosition,
    UNUSABLE,
    build_square,
    canonicalize_antonyms,
)
from folsquare.transform import contradictory

log = logging.getLogger(__name__)

POSITIONS = ("S1", "NotS1", "S2", "NotS2")


@dataclass
class Premise:
    statement: str
    formula: Formula


@dataclass
class Plan:
    steps: list[str]
    final_step_is_decision: bool = True


@dataclass
class ReasoningTrace:
    position: str
    plan: Plan
    steps: list[str]
    verdict: Verdict


@dataclass
class StageStats:
    calls: int = 0
    prompt_tokens: int = 0
    completion_tokens: int = 0
    wall_time: float = 0.0


@dataclass
class AgentContext:
    """Shared per-instance state: backend handle, config knobs, accounting."""

    backend: Backend
    instance_id: str = ""
    model_name: str = "scripted"
    temperature: float = 0.0
    max_tokens: int = 4096
    max_domain: int = 3
    oracle_budget: int = DEFAULT_BUDGET
    no_fol: bool = False
    no_statement: bool = False
    no_plan: bool = False
    antonyms: dict[str, str] | None = None
    stats: dict[str, StageStats] = field(default_factory=dict)

    def _complete(self, stage: str, template: PromptTemplate, prompt: str) -> str:
        started = time.perf_counter()
        req = CompletionRequest(
            prompt=prompt,
            model_name=self.model_name,
            temperature=self.temperature,
            max_tokens=self.max_tokens,
            tags={
                "stage": stage,
                "instance": self.instance_id,
                "template": template.name,
                "template_version": template.version,
            },
        )
        response = self.backend.complete(req)
        stats = self.stats.setdefault(stage, StageStats())
        stats.calls += 1
        stats.prompt_tokens += estimate_tokens(prompt)
        stats.completion_tokens += estimate_tokens(response)
        stats.wall_time += time.perf_counter() - started
        return response

    def call(
        self,
        stage: str,
        template: PromptTemplate,
        bindings: dict[str, str],
        schema: str,
        reminder: str = "Return only the JSON block.",
    ) -> ExtractedPayload:
        """Render, complete, extract; one re-prompt on malformed output."""
        prompt = render_prompt(template, bindings)
        raw = self._complete(stage, template, prompt)
        try:
            return extract_payload(raw, schema)
        except ExtractionError:
            raw = self._complete(stage, template, f"{prompt}\n\n{reminder}")
            return extract_payload(raw, schema)


def format_target(position: SquarePosition, ctx: AgentContext) -> str:
    """Dual-form target line; ablations strip one representation."""
    parts = []
    if not ctx.no_statement and position.statement:
        parts.append(f'"{position.statement}"')
    if not ctx.no_fol and position.formula is not None:
        parts.append(f'"{render(position.formula)}"')
    return ", ".join(parts) if parts else '""'


def format_premises(premises: list[Premise], ctx: AgentContext) -> str:
    lines = []
    for i, premise in enumerate(premises, start=1):
        bits = []
        if not ctx.no_statement and premise.statement:
            bits.append(premise.statement)
        if not ctx.no_fol and premise.formula is not None:
            bits.append(f"FOL: {render(premise.formula)}")
        lines.append(f"{i}. " + " | ".join(bits) if bits else f"{i}.")
    return "\n".join(lines) if lines else "(no premises)"


def _parse_position(entry: dict, ctx: AgentContext) -> SquarePosition:
    statement = str(entry.get("statement", ""))
    fol_text = str(entry.get("FOL", ""))
    formula = None
    if fol_text.strip():
        try:
            formula = canonicalize_antonyms(parse_formula(fol_text), ctx.antonyms)
            if not validate_cfg(render(formula)).valid:
                formula = None
        except ParseError:
            log.warning("position FOL failed to parse: %r", fol_text)
    return SquarePosition(statement=statement, formula=formula)


def _degraded_square(question: str) -> SemioticSquare:
    statement = extract_statement(question)
    return SemioticSquare(
        s1=SquarePosition(statement=statement, formula=None),
        s2=UNUSABLE,
        not_s1=SquarePosition(statement=f"It is not the case that {statement}", formula=None),
        not_s2=UNUSABLE,
        contrary_kind="Absent",
    )


def extract_statement(question: str) -> str:
    """The inner proposition of an "Is the statement '...' correct?" question."""
    m = re.search(r"[\"'](.+)[\"']", question)
    return m.group(1) if m else question


def semantic_structuring(
    ctx: AgentContext,
    question: str,
    context: str,
    premises: list[Premise] | None = None,
) -> SemioticSquare:
    """Build and validate the four-position square for a question.

    The model proposes statements and formulas; the contradictory is checked
    for oracle equivalence against the strict negation and rebuilt
    symbolically when it fails, and the proposed contrary is handed to
    build_square as a generator candidate so it undergoes the same import
    and relation checks as template contraries.
    """
    premise_formulas = [p.formula for p in (premises or []) if p.formula is not None]
    try:
        payload = ctx.call("structure", SEMANTIC_STRUCTURING, {"question": question}, "square")
    except (ExtractionError, LookupError) as err:
        log.warning("structuring degraded for %s: %s", ctx.instance_id or "?", err)
        return _degraded_square(question)

    record = payload.parsed
    s1 = _parse_position(record["S1"], ctx)
    if s1.formula is None:
        square = _degraded_square(question)
        square.s1 = SquarePosition(statement=s1.statement or extract_statement(question), formula=None)
        return square

    llm_not_s1 = _parse_position(record["not_S1"], ctx)
    llm_s2 = _parse_position(record.get("S2", {}), ctx) if record.get("S2") else None

    def generator(position, prems):
        if llm_s2 is not None and llm_s2.formula is not None:
            yield llm_s2

    square = build_square(
        s1,
        premises=premise_formulas,
        generator=generator,
        max_domain=ctx.max_domain,
        budget=ctx.oracle_budget,
        concept_a=str(record.get("concept_A", "")),
        concept_b=str(record.get("concept_B", "")),
    )
    # keep the model's contradictory wording when its formula is sound
    if llm_not_s1.formula is not None and equivalent(
        llm_not_s1.formula,
        contradictory(s1.formula),
        domain_sizes=range(1, ctx.max_domain + 1),
        budget=ctx.oracle_budget,
    ):
        square.not_s1 = llm_not_s1
    # keep the model's contrary wording when the adopted contrary matches it
    if (
        llm_s2 is not None
        and llm_s2.formula is not None
        and square.s2.usable
        and square.s2.formula == llm_s2.formula
    ):
        square.s2 = llm_s2
        not_s2 = _parse_position(record.get("not_S2", {}), ctx) if record.get("not_S2") else None
        if (
            not_s2 is not None
            and not_s2.formula is not None
            and equivalent(
                not_s2.formula,
                contradictory(llm_s2.formula),
                domain_sizes=range(1, ctx.max_domain + 1),
                budget=ctx.oracle_budget,
            )
        ):
            square.not_s2 = not_s2
    return square


def translate(ctx: AgentContext, context: str) -> list[Premise]:
    """Formalize the context into validated premises; bad ones are dropped."""
    if not context.strip():
        return []
    try:
        payload = ctx.call("translate", TRANSLATOR, {"context": context}, "premises")
    except (ExtractionError, LookupError) as err:
        log.warning("translation degraded for %s: %s", ctx.instance_id or "?", err)
        return []
    premises: list[Premise] = []
    for entry in payload.parsed["premises"]:
        statement = str(entry.get("statement", ""))
        fol_text = str(entry.get("FOL", ""))
        try:
            formula = canonicalize_antonyms(parse_formula(fol_text), ctx.antonyms)
        except ParseError as err:
            log.warning("premise dropped (unparsable FOL %r): %s", fol_text, err)
            continue
        if not validate_cfg(render(formula)).valid:
            log.warning("premise dropped (invalid formula %r)", fol_text)
            continue
        premises.append(Premise(statement=statement, formula=formula))
    return premises


_WHETHER_RE = re.compile(r"(?i)\b(?:whether|if)\b[^.;]*")
_CLAIM_RE = re.compile(
    r"(?i)\b(?:therefore|thus|hence)\b[^.;]*\b(?:true|false|uncertain)\b"
    r"|\bthe\s+(?:statement|conclusion|answer|goal)\s+is\s+(?:true|false|uncertain)\b"
    r"|\bverdict\s*[:=]"
)

FALLBACK_PLAN_STEP = (
    "Final Step: Evaluate the target against the premises directly and decide "
    "whether it is true, false, or uncertain."
)


def plan_states_verdict(steps: list[str]) -> bool:
    """Whether any step asserts a definitive label (the planner must not)."""
    for step in steps:
        neutral = _WHETHER_RE.sub("", step)
        if _CLAIM_RE.search(neutral):
            return True
    return False


def _fallback_plan() -> Plan:
    return Plan(steps=[FALLBACK_PLAN_STEP], final_step_is_decision=True)


def plan(ctx: AgentContext, premises: list[Premise], target: SquarePosition) -> Plan:
    """Reasoning blueprint for a position; never contains a verdict."""
    bindings = {
        "target_statement": format_target(target, ctx),
        "premises": format_premises(premises, ctx),
    }
    try:
        payload = ctx.call("plan", PLANNER, bindings, "plan")
        steps = [str(s) for s in payload.parsed["plan"]]
        if plan_states_verdict(steps):
            payload = ctx.call(
                "plan", PLANNER, bindings, "plan",
                reminder="Do not state the verdict anywhere in the plan. Return only the JSON block.",
            )
            steps = [str(s) for s in payload.parsed["plan"]]
            if plan_states_verdict(steps):
                return _fallback_plan()
        if not steps:
            return _fallback_plan()
        if not re.search(r"(?i)\b(decide|determine|final)\b", steps[-1]):
            steps.append(FALLBACK_PLAN_STEP)
        return Plan(steps=steps, final_step_is_decision=True)
    except (ExtractionError, LookupError):
        return _fallback_plan()


def solve(
    ctx: AgentContext,
    premises: list[Premise],
    target: SquarePosition,
    the_plan: Plan,
    position: str = "S1",
) -> ReasoningTrace:
    """Execute the blueprint and produce a three-valued verdict."""
    plan_text = "\n".join(the_plan.steps) if not ctx.no_plan else "(reason directly, step by step)"
    bindings = {
        "target_statement": format_target(target, ctx),
        "premises": format_premises(premises, ctx),
        "PLAN": plan_text,
    }
    try:
        payload = ctx.call("solve", SOLVER, bindings, "solution")
        label = Label(payload.parsed["verdict"])
        steps = [str(s) for s in payload.parsed["steps"]]
        return ReasoningTrace(position, the_plan, steps, Verdict(label, Source.SOLVER))
    except (ExtractionError, LookupError):
        return ReasoningTrace(position, the_plan, [], Verdict(Label.UNCERTAIN, Source.DEFAULT))
