"""Final-verdict adjudication over the S1 / ¬S1 verdict pairs.

Direct resolution settles the consistent pairs; a single Uncertain routes
to quick reflection (a verification prompt classified into six types); an
agreeing definite pair routes to deep reflection, which consults the
contrary corner of the square through its implication arrows. A rule-only
variant replaces reflection for the ablation runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from folsquare.agent.stages import (
    AgentContext,
    Plan,
    Premise,
    ReasoningTrace,
    plan as plan_stage,
    solve as solve_stage,
)
from folsquare.backend.prompts import REFLECTIVE_VERIFICATION
from folsquare.errors import ExtractionError
from folsquare.oracle import Label, Source, Verdict
from folsquare.semiotic import SemioticSquare

REFLECTION_TYPES = ("Type1", "Type2", "Type3", "Type4", "Type5", "Type6")


@dataclass(frozen=True)
class Resolution:
    outcome: str  # "final" | "quick" | "deep"
    verdict: Verdict | None = None


def direct_resolution(v1: Verdict, vneg: Verdict) -> Resolution:
    """Resolve the nine ordered pairs of (S1, ¬S1) verdicts.

    Complementary pairs settle immediately; a double Uncertain settles as
    Uncertain; exactly one Uncertain needs quick reflection; an agreeing
    definite pair needs deep reflection.
    """
    a, b = v1.label, vneg.label
    if a == Label.TRUE and b == Label.FALSE:
        return Resolution("final", Verdict(Label.TRUE, Source.DIRECT_RESOLUTION))
    if a == Label.FALSE and b == Label.TRUE:
        return Resolution("final", Verdict(Label.FALSE, Source.DIRECT_RESOLUTION))
    if a == Label.UNCERTAIN and b == Label.UNCERTAIN:
        return Resolution("final", Verdict(Label.UNCERTAIN, Source.DIRECT_RESOLUTION))
    if (a == Label.UNCERTAIN) != (b == Label.UNCERTAIN):
        return Resolution("quick")
    return Resolution("deep")


def ablation_resolution(v1: Verdict, vneg: Verdict) -> Verdict:
    """Rule-only resolution used when reflection is disabled.

    Extends direct resolution with the supplemental rows: keep S1 when only
    ¬S1 is Uncertain, negate ¬S1 when only S1 is Uncertain, and keep S1
    when both agree on a definite label.
    """
    a, b = v1.label, vneg.label
    if a != Label.UNCERTAIN and b == Label.UNCERTAIN:
        return Verdict(a, Source.DIRECT_RESOLUTION)
    if a == Label.UNCERTAIN and b != Label.UNCERTAIN:
        return Verdict(b, Source.DIRECT_RESOLUTION).negated()
    if a == b:
        return Verdict(a, Source.DIRECT_RESOLUTION)
    # remaining pairs are the complementary ones settled by direct resolution
    return direct_resolution(v1, vneg).verdict


def render_execution(trace_s1: ReasoningTrace, trace_neg: ReasoningTrace) -> str:
    def block(trace: ReasoningTrace) -> str:
        steps = "\n".join(trace.steps) if trace.steps else "(no steps)"
        return f"[{trace.position}] verdict: {trace.verdict.label.value}\n{steps}"

    return f"{block(trace_s1)}\n\n{block(trace_neg)}"


_TYPE_RE = re.compile(r"(?i)type\s*([1-6])")


def _mapped_label(type_no: int, trace_s1: ReasoningTrace, payload_verdict: str) -> Label:
    if type_no == 1:
        return trace_s1.verdict.label
    if type_no in (2, 3):
        return Label.UNCERTAIN
    if type_no == 4:
        return Label.FALSE
    if type_no == 5:
        return Label.TRUE
    return Label(payload_verdict)  # Type 6: independently verified result


def quick_reflection(
    ctx: AgentContext,
    trace_s1: ReasoningTrace,
    trace_neg: ReasoningTrace,
) -> tuple[Verdict, str | None]:
    """Verification pass over both traces; returns the refined verdict and
    the reflection type that produced it.

    The model's verdict must equal the label its reported type maps to;
    a mismatch earns one re-prompt, then the stage defaults to Uncertain.
    """
    execution = render_execution(trace_s1, trace_neg)
    bindings = {"EXECUTION": execution}

    def attempt(reminder: str | None) -> tuple[Verdict, str | None] | None:
        payload = ctx.call(
            "reflect", REFLECTIVE_VERIFICATION, bindings, "reflection",
            reminder=reminder or "Return only the JSON block.",
        )
        reason = payload.parsed.get("reason", "")
        verdict_str = payload.parsed["verdict"]
        m = _TYPE_RE.search(reason)
        if not m:
            return None
        type_no = int(m.group(1))
        expected = _mapped_label(type_no, trace_s1, verdict_str)
        if Label(verdict_str) != expected:
            return None
        return Verdict(expected, Source.QUICK_REFLECTION), f"Type{type_no}"

    try:
        result = attempt(None)
        if result is None:
            result = attempt(
                "The verdict must match the label your reflection type maps to. "
                "Return only the JSON block."
            )
        if result is None:
            return Verdict(Label.UNCERTAIN, Source.DEFAULT), None
        return result
    except (ExtractionError, LookupError):
        return Verdict(Label.UNCERTAIN, Source.DEFAULT), None


def deep_reflection(
    ctx: AgentContext,
    square: SemioticSquare,
    premises: list[Premise],
    traces: dict[str, ReasoningTrace],
    shared: Label,
) -> tuple[Verdict, str, str | None]:
    """Adjudicate an agreeing definite pair through the contrary corner.

    Both cases first solve S2; a True S2 refutes S1 through S2 ⇒ ¬S1. The
    both-True case additionally solves ¬S2, whose falsity refutes S1
    through S1 ⇒ ¬S2. Anything unresolved falls through to quick
    reflection. Returns (verdict, resolution path, reflection type).
    """

    def run_position(position: str):
        target = square.s2 if position == "S2" else square.not_s2
        if ctx.no_plan:
            the_plan = Plan(steps=[], final_step_is_decision=True)
        else:
            the_plan = plan_stage(ctx, premises, target)
        trace = solve_stage(ctx, premises, target, the_plan, position=position)
        traces[position] = trace
        return trace.verdict.label

    s2_label = run_position("S2")
    if s2_label == Label.TRUE:
        return Verdict(Label.FALSE, Source.DEEP_REFLECTION), "Deep", None

    if shared == Label.TRUE:
        not_s2_label = run_position("NotS2")
        if not_s2_label == Label.FALSE:
            return Verdict(Label.FALSE, Source.DEEP_REFLECTION), "Deep", None

    verdict, rtype = quick_reflection(ctx, traces["S1"], traces["NotS1"])
    return verdict, "DeepThenQuick", rtype
