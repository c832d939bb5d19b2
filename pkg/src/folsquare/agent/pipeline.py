"""End-to-end pipeline: structure, translate, reason on both contradiction
branches, adjudicate, and record everything.

Instances run concurrently up to a configured width; within an instance the
stages are sequential so scripted fixtures stay deterministic. Records
serialize without wall-clock fields, so a scripted run is byte-identical
across repetitions.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol

from folsquare.agent.adjudicate import (
    ablation_resolution,
    deep_reflection,
    direct_resolution,
    quick_reflection,
    render_execution,
)
from folsquare.agent.stages import (
    AgentContext,
    Plan,
    Premise,
    ReasoningTrace,
    extract_statement,
    plan as plan_stage,
    semantic_structuring,
    solve as solve_stage,
    translate,
)
from folsquare.backend.base import Backend, BudgetGuard
from folsquare.backend.extract import ExtractionError
from folsquare.backend.prompts import REFLECTIVE_VERIFICATION
from folsquare.errors import BudgetExceeded
from folsquare.fol.ast import render
from folsquare.oracle import DEFAULT_BUDGET, Label, Source, Verdict
from folsquare.semiotic import SemioticSquare, SquarePosition, UNUSABLE


class Instance(Protocol):
    id: str
    question: str
    context: str


@dataclass
class PipelineConfig:
    model_name: str = "scripted"
    temperature: float = 0.0
    max_tokens: int = 4096
    domain_sizes: tuple[int, ...] = (1, 2, 3)
    oracle_budget: int = DEFAULT_BUDGET
    token_budget: int = 64_000
    no_square: bool = False
    no_plan: bool = False
    no_reflect: bool = False
    no_fol: bool = False
    no_statement: bool = False
    two_label: bool = False
    concurrency: int = 1
    antonyms: dict[str, str] | None = None

    @property
    def max_domain(self) -> int:
        return max(self.domain_sizes)

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f for f in cls.__dataclass_fields__}
        kwargs = {k: v for k, v in data.items() if k in known}
        if "domain_sizes" in kwargs:
            kwargs["domain_sizes"] = tuple(int(s) for s in kwargs["domain_sizes"])
        for flag in data.get("ablations", ()):
            key = flag if flag.startswith("no_") else f"no_{flag}"
            if key in known:
                kwargs[key] = True
        return cls(**kwargs)


@dataclass
class PredictionRecord:
    instance_id: str
    square: SemioticSquare
    premises: list[Premise]
    traces: dict[str, ReasoningTrace]
    resolution_path: str  # Direct | Quick | Deep | DeepThenQuick | AblationDirect
    final: Verdict
    reflection_type: str | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        def trace_rec(trace: ReasoningTrace) -> dict:
            return {
                "plan": list(trace.plan.steps),
                "steps": list(trace.steps),
                "verdict": trace.verdict.label.value,
                "source": trace.verdict.source.value,
            }

        tokens = {
            stage: {
                "calls": stats.calls,
                "prompt_tokens": stats.prompt_tokens,
                "completion_tokens": stats.completion_tokens,
            }
            for stage, stats in sorted(self.diagnostics.items())
        }
        return {
            "instance_id": self.instance_id,
            "square": self.square.to_record(),
            "contrary_kind": self.square.contrary_kind,
            "premises": [
                {"statement": p.statement, "FOL": render(p.formula) if p.formula else ""}
                for p in self.premises
            ],
            "traces": {pos: trace_rec(t) for pos, t in sorted(self.traces.items())},
            "resolution_path": self.resolution_path,
            "final": self.final.label.value,
            "final_source": self.final.source.value,
            "reflection_type": self.reflection_type,
            "tokens": tokens,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, ensure_ascii=False)


def _two_label_coercion(
    ctx: AgentContext,
    traces: dict[str, ReasoningTrace],
    final: Verdict,
) -> Verdict:
    """Force a definite verdict in two-label mode.

    One extra reflection pass is asked to choose; if it will not, the
    answer defaults to False.
    """
    if final.label != Label.UNCERTAIN:
        return final
    if "S1" in traces and "NotS1" in traces:
        execution = (
            render_execution(traces["S1"], traces["NotS1"])
            + "\n\nThis task is two-valued: the final verdict must be True or False."
        )
        try:
            payload = ctx.call(
                "reflect", REFLECTIVE_VERIFICATION, {"EXECUTION": execution}, "reflection",
                reminder="You must answer True or False. Return only the JSON block.",
            )
            label = Label(payload.parsed["verdict"])
            if label != Label.UNCERTAIN:
                return Verdict(label, Source.QUICK_REFLECTION)
        except (ExtractionError, LookupError, BudgetExceeded):
            pass
    return Verdict(Label.FALSE, Source.DEFAULT)


def run_pipeline(instance: Instance, config: PipelineConfig, backend: Backend) -> PredictionRecord:
    """Process one instance; the record always completes."""
    ctx = AgentContext(
        backend=BudgetGuard(backend, config.token_budget),
        instance_id=str(instance.id),
        model_name=config.model_name,
        temperature=config.temperature,
        max_tokens=config.max_tokens,
        max_domain=config.max_domain,
        oracle_budget=config.oracle_budget,
        no_fol=config.no_fol,
        no_statement=config.no_statement,
        no_plan=config.no_plan,
        antonyms=config.antonyms,
    )

    premises = translate(ctx, instance.context)

    if config.no_square:
        square = SemioticSquare(
            s1=SquarePosition(statement=extract_statement(instance.question), formula=None),
            s2=UNUSABLE,
            not_s1=UNUSABLE,
            not_s2=UNUSABLE,
            contrary_kind="Absent",
        )
    else:
        square = semantic_structuring(ctx, instance.question, instance.context, premises=premises)

    traces: dict[str, ReasoningTrace] = {}

    def branch(position: str, target: SquarePosition) -> ReasoningTrace:
        if config.no_plan:
            the_plan = Plan(steps=[], final_step_is_decision=True)
        else:
            the_plan = plan_stage(ctx, premises, target)
        trace = solve_stage(ctx, premises, target, the_plan, position=position)
        traces[position] = trace
        return trace

    try:
        branch("S1", square.s1)
        reflection_type: str | None = None
        if config.no_square:
            final = traces["S1"].verdict
            path = "AblationDirect"
        else:
            branch("NotS1", square.not_s1)
            v1, vneg = traces["S1"].verdict, traces["NotS1"].verdict
            if config.no_reflect:
                final = ablation_resolution(v1, vneg)
                path = "AblationDirect"
            else:
                resolution = direct_resolution(v1, vneg)
                if resolution.outcome == "final":
                    final = resolution.verdict
                    path = "Direct"
                elif resolution.outcome == "quick":
                    final, reflection_type = quick_reflection(ctx, traces["S1"], traces["NotS1"])
                    path = "Quick"
                elif square.s2.usable:
                    final, path, reflection_type = deep_reflection(
                        ctx, square, premises, traces, v1.label
                    )
                else:
                    final, reflection_type = quick_reflection(ctx, traces["S1"], traces["NotS1"])
                    path = "Quick"
        if config.two_label:
            final = _two_label_coercion(ctx, traces, final)
    except BudgetExceeded:
        final = Verdict(Label.UNCERTAIN, Source.DEFAULT)
        path = "Direct"
        reflection_type = None
        if config.two_label:
            final = Verdict(Label.FALSE, Source.DEFAULT)

    return PredictionRecord(
        instance_id=str(instance.id),
        square=square,
        premises=premises,
        traces=traces,
        resolution_path=path,
        final=final,
        reflection_type=reflection_type,
        diagnostics=ctx.stats,
    )


def completed_ids(results_path: str | Path) -> set[str]:
    """Instance ids already present in a results file (resume support)."""
    path = Path(results_path)
    if not path.exists():
        return set()
    done = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            done.add(str(json.loads(line)["instance_id"]))
        except (json.JSONDecodeError, KeyError):
            continue
    return done


def run_instances(
    instances: Iterable[Instance],
    config: PipelineConfig,
    backend: Backend,
    results_path: str | Path | None = None,
    skip_ids: set[str] | None = None,
) -> list[PredictionRecord]:
    """Run the pipeline over many instances, appending records as JSON lines.

    Output preserves input order regardless of the concurrency width, so
    repeated scripted runs produce identical files.
    """
    todo = [i for i in instances if not skip_ids or str(i.id) not in skip_ids]
    if config.concurrency > 1:
        with ThreadPoolExecutor(max_workers=config.concurrency) as pool:
            records = list(pool.map(lambda i: run_pipeline(i, config, backend), todo))
    else:
        records = [run_pipeline(i, config, backend) for i in todo]
    if results_path is not None:
        with open(results_path, "a", encoding="utf-8") as handle:
            for record in records:
                handle.write(record.to_json_line() + "\n")
    return records
