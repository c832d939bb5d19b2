"""Ten-instance scripted fixture exercising every resolution path.

Builds the stage scripts, the dataset file, and (by recording one pipeline
pass) the fingerprint replay file the CLI's scripted backend consumes.
The hand tally below is the evaluation oracle: 9/10 correct, one planted
miss (i09), paths Direct x4, Quick x4, Deep, DeepThenQuick.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from folsquare.agent import PipelineConfig, run_instances
from folsquare.backend.base import RecordingBackend, ScriptedBackend
from folsquare.bench import ProblemInstance, write_dataset
from folsquare.oracle import Label
from agentfixtures import plan_json, premises_json, reflection_json, solution_json, square_json


@dataclass
class FixtureCase:
    id: str
    gold: str
    s1_verdict: str
    neg_verdict: str
    absent: bool = False
    deep_solves: list[str] = field(default_factory=list)
    reflections: list[tuple[str, int]] = field(default_factory=list)
    expect_final: str = ""
    expect_path: str = ""
    expect_type: str | None = None


CASES = [
    FixtureCase("i01", "True", "True", "False", expect_final="True", expect_path="Direct"),
    FixtureCase("i02", "False", "False", "True", expect_final="False", expect_path="Direct"),
    FixtureCase("i03", "Uncertain", "Uncertain", "Uncertain", expect_final="Uncertain", expect_path="Direct"),
    FixtureCase("i04", "False", "Uncertain", "True", reflections=[("False", 4)],
                expect_final="False", expect_path="Quick", expect_type="Type4"),
    FixtureCase("i05", "True", "True", "Uncertain", reflections=[("True", 1)],
                expect_final="True", expect_path="Quick", expect_type="Type1"),
    FixtureCase("i06", "False", "True", "True", deep_solves=["True"],
                expect_final="False", expect_path="Deep"),
    FixtureCase("i07", "Uncertain", "False", "False", deep_solves=["Uncertain"],
                reflections=[("Uncertain", 3)],
                expect_final="Uncertain", expect_path="DeepThenQuick", expect_type="Type3"),
    FixtureCase("i08", "True", "Uncertain", "False", reflections=[("True", 5)],
                expect_final="True", expect_path="Quick", expect_type="Type5"),
    FixtureCase("i09", "False", "True", "False", expect_final="True", expect_path="Direct"),
    FixtureCase("i10", "False", "True", "True", absent=True, reflections=[("False", 6)],
                expect_final="False", expect_path="Quick", expect_type="Type6"),
]

EXPECTED_OVERALL = {"count": 10, "correct": 9, "accuracy": 0.9}
EXPECTED_PER_LABEL = {
    "True": {"count": 3, "correct": 3, "accuracy": 1.0},
    "False": {"count": 5, "correct": 4, "accuracy": 0.8},
    "Uncertain": {"count": 2, "correct": 2, "accuracy": 1.0},
}
EXPECTED_BY_RELATION = {
    "contrary_cases": {"count": 9, "correct": 8, "accuracy": round(8 / 9, 6)},
    "contradictory_only": {"count": 1, "correct": 1, "accuracy": 1.0},
}
EXPECTED_PER_PATH = {"Direct": 4, "Quick": 4, "Deep": 1, "DeepThenQuick": 1}


def instance_for(case: FixtureCase) -> ProblemInstance:
    n = case.id[1:]
    return ProblemInstance(
        id=case.id,
        context=f"Premise text for case {case.id}.",
        question=f"Is the statement 'claim {n}' correct?",
        gold_label=Label(case.gold),
        dataset="Custom",
    )


def stage_scripts(case: FixtureCase) -> dict[tuple[str, str], list[str]]:
    n = case.id[1:]
    if case.absent:
        square = square_json(
            s1=(f"claim {n}", f"¬P{n}(a)"),
            not_s1=(f"not claim {n}", f"P{n}(a)"),
        )
    else:
        square = square_json(
            s1=(f"claim {n}", f"P{n}(a) ∧ Q{n}(a)"),
            not_s1=(f"not claim {n}", f"¬P{n}(a) ∨ ¬Q{n}(a)"),
        )
    solves = [solution_json(case.s1_verdict), solution_json(case.neg_verdict)]
    solves += [solution_json(v) for v in case.deep_solves]
    plans = [plan_json() for _ in range(len(solves))]
    scripts = {
        (case.id, "translate"): [premises_json((f"p{n} holds", f"P{n}(a)"))],
        (case.id, "structure"): [square],
        (case.id, "plan"): plans,
        (case.id, "solve"): solves,
    }
    if case.reflections:
        scripts[(case.id, "reflect")] = [reflection_json(v, t) for v, t in case.reflections]
    return scripts


def build_fixture(root: Path) -> dict:
    """Materialize dataset, replay file, and config under ``root``."""
    root.mkdir(parents=True, exist_ok=True)
    instances = [instance_for(c) for c in CASES]
    dataset_path = root / "dataset.jsonl"
    write_dataset(instances, dataset_path)

    merged: dict[tuple[str, str], list[str]] = {}
    for case in CASES:
        merged.update(stage_scripts(case))
    recorder = RecordingBackend(ScriptedBackend(stage_scripts=merged))
    records = run_instances(instances, PipelineConfig(), recorder)

    replay_path = root / "replay.json"
    recorder.save(replay_path)
    config_path = root / "config.json"
    config_path.write_text(
        json.dumps({"backend": "scripted", "replay_file": str(replay_path)}),
        encoding="utf-8",
    )
    return {
        "instances": instances,
        "records": records,
        "dataset": dataset_path,
        "replay": replay_path,
        "config": config_path,
    }
