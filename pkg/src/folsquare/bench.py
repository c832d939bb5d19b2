"""Dataset loading, accuracy evaluation, and report writing.

Each supported dataset format is a thin adapter from its upstream field
names onto a common record (id, context, question, gold label, optional
explanation). Files are line-delimited JSON. Evaluation splits accuracy by
gold label and by whether the pipeline found a usable contrary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from folsquare.errors import MissingPrediction, SchemaError
from folsquare.oracle import Label

DATASETS = ("ProntoQA", "ProofWriter", "FOLIO", "ProverQA", "RepublicQA", "Custom")

TWO_LABEL_DATASETS = ("ProntoQA",)


@dataclass
class ProblemInstance:
    id: str
    context: str
    question: str
    gold_label: Label
    dataset: str = "Custom"
    gold_explanation: list[str] | None = None


def _normalize_label(value, line_no: int) -> Label:
    if isinstance(value, bool):
        return Label.TRUE if value else Label.FALSE
    text = str(value).strip().lower().rstrip(".")
    mapping = {
        "true": Label.TRUE,
        "a": Label.TRUE,
        "yes": Label.TRUE,
        "false": Label.FALSE,
        "b": Label.FALSE,
        "no": Label.FALSE,
        "uncertain": Label.UNCERTAIN,
        "unknown": Label.UNCERTAIN,
        "c": Label.UNCERTAIN,
    }
    if text not in mapping:
        raise SchemaError(f"unrecognized label {value!r}", line_no)
    return mapping[text]


def _first(record: dict, *keys: str):
    for key in keys:
        if key in record and record[key] is not None:
            return record[key]
    return None


# Adapter tables: canonical field -> upstream candidates, per format.
_ADAPTERS: dict[str, dict[str, tuple[str, ...]]] = {
    "prontoqa": {
        "context": ("context", "question", "theory"),
        "question": ("query", "proposition", "conclusion"),
        "label": ("answer", "label"),
    },
    "proofwriter": {
        "context": ("theory", "context"),
        "question": ("question", "conclusion", "query"),
        "label": ("answer", "label"),
    },
    "folio": {
        "context": ("premises", "context"),
        "question": ("conclusion", "question"),
        "label": ("label", "answer"),
    },
    "proverqa": {
        "context": ("context", "premises"),
        "question": ("question", "conclusion"),
        "label": ("answer", "label"),
    },
    "republicqa": {
        "context": ("context",),
        "question": ("proposition", "question"),
        "label": ("label", "answer"),
        "explanation": ("explanation", "explanation_steps", "gold_explanation"),
    },
    "custom": {
        "context": ("context",),
        "question": ("question", "proposition"),
        "label": ("label", "answer", "gold_label"),
        "explanation": ("explanation", "gold_explanation"),
    },
}

_CANONICAL_NAME = {
    "prontoqa": "ProntoQA",
    "proofwriter": "ProofWriter",
    "folio": "FOLIO",
    "proverqa": "ProverQA",
    "republicqa": "RepublicQA",
    "custom": "Custom",
}


def load_dataset(path: str | Path, format_name: str = "custom") -> list[ProblemInstance]:
    """Parse a line-delimited dataset file; collects per-line schema errors."""
    fmt = format_name.lower()
    if fmt not in _ADAPTERS:
        raise ValueError(f"unknown dataset format {format_name!r}; choose from {sorted(_ADAPTERS)}")
    adapter = _ADAPTERS[fmt]
    dataset_name = _CANONICAL_NAME[fmt]

    text = Path(path).read_text(encoding="utf-8")
    instances: list[ProblemInstance] = []
    errors: list[str] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as err:
            errors.append(f"line {line_no}: invalid JSON ({err.msg})")
            continue
        try:
            instances.append(_adapt(record, adapter, dataset_name, line_no))
        except SchemaError as err:
            errors.append(str(err))
    if errors:
        raise SchemaError(f"{len(errors)} bad line(s): " + "; ".join(errors))
    return instances


def _adapt(record: dict, adapter: dict, dataset_name: str, line_no: int) -> ProblemInstance:
    context = _first(record, *adapter["context"])
    question = _first(record, *adapter["question"])
    raw_label = _first(record, *adapter["label"])
    if question is None or raw_label is None:
        raise SchemaError("missing question or label field", line_no)
    if isinstance(context, list):
        context = "\n".join(str(c) for c in context)
    label = _normalize_label(raw_label, line_no)
    if dataset_name in TWO_LABEL_DATASETS and label == Label.UNCERTAIN:
        raise SchemaError(f"{dataset_name} is two-valued; got label {raw_label!r}", line_no)
    explanation = None
    if "explanation" in adapter:
        raw = _first(record, *adapter["explanation"])
        if raw is not None:
            explanation = [str(s) for s in raw] if isinstance(raw, list) else [str(raw)]
    return ProblemInstance(
        id=str(_first(record, "id", "example_id", "idx") or f"{dataset_name.lower()}-{line_no}"),
        context=str(context or ""),
        question=str(question),
        gold_label=label,
        dataset=dataset_name,
        gold_explanation=explanation,
    )


def write_dataset(instances: list[ProblemInstance], path: str | Path) -> None:
    """Serialize instances in the custom format (load round-trips)."""
    with open(path, "w", encoding="utf-8") as handle:
        for inst in instances:
            record = {
                "id": inst.id,
                "context": inst.context,
                "question": inst.question,
                "label": inst.gold_label.value,
            }
            if inst.gold_explanation is not None:
                record["explanation"] = inst.gold_explanation
            handle.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")


@dataclass
class SliceStats:
    count: int = 0
    correct: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.count if self.count else 0.0

    def to_dict(self) -> dict:
        return {"count": self.count, "correct": self.correct, "accuracy": round(self.accuracy, 6)}


@dataclass
class EvalReport:
    overall: SliceStats
    per_label: dict[str, SliceStats]
    contrary_cases: SliceStats
    contradictory_only: SliceStats
    per_path: dict[str, int]
    per_dataset: dict[str, SliceStats]
    run_metadata: dict = field(default_factory=dict)

    @property
    def overall_accuracy(self) -> float:
        return self.overall.accuracy

    def to_dict(self) -> dict:
        return {
            "overall": self.overall.to_dict(),
            "per_label": {k: v.to_dict() for k, v in sorted(self.per_label.items())},
            "by_relation": {
                "contrary_cases": self.contrary_cases.to_dict(),
                "contradictory_only": self.contradictory_only.to_dict(),
            },
            "per_path": dict(sorted(self.per_path.items())),
            "per_dataset": {k: v.to_dict() for k, v in sorted(self.per_dataset.items())},
            "run_metadata": self.run_metadata,
        }


def _contrary_available(record) -> bool:
    square = getattr(record, "square", None)
    kind = getattr(square, "contrary_kind", None) or getattr(record, "contrary_kind", None)
    return kind not in (None, "Absent")


def evaluate(records, instances: list[ProblemInstance], run_metadata: dict | None = None) -> EvalReport:
    """Accuracy report over prediction records aligned to instances by id."""
    by_id = {str(getattr(r, "instance_id")): r for r in records}
    overall = SliceStats()
    per_label: dict[str, SliceStats] = {}
    contrary = SliceStats()
    contradictory = SliceStats()
    per_path: dict[str, int] = {}
    per_dataset: dict[str, SliceStats] = {}

    for inst in instances:
        record = by_id.get(str(inst.id))
        if record is None:
            raise MissingPrediction(f"no prediction for instance {inst.id!r}")
        predicted = record.final.label
        hit = predicted == inst.gold_label

        for stats in (
            overall,
            per_label.setdefault(inst.gold_label.value, SliceStats()),
            contrary if _contrary_available(record) else contradictory,
            per_dataset.setdefault(inst.dataset, SliceStats()),
        ):
            stats.count += 1
            stats.correct += int(hit)
        path = getattr(record, "resolution_path", "Unknown")
        per_path[path] = per_path.get(path, 0) + 1

    return EvalReport(
        overall=overall,
        per_label=per_label,
        contrary_cases=contrary,
        contradictory_only=contradictory,
        per_path=per_path,
        per_dataset=per_dataset,
        run_metadata=run_metadata or {},
    )


def render_markdown(report: EvalReport) -> str:
    lines = ["# Evaluation report", ""]
    lines.append("| dataset | instances | accuracy |")
    lines.append("|---|---|---|")
    for name, stats in sorted(report.per_dataset.items()):
        lines.append(f"| {name} | {stats.count} | {stats.accuracy:.4f} |")
    lines.append(f"| **overall** | {report.overall.count} | {report.overall.accuracy:.4f} |")
    lines.append("")
    lines.append("| gold label | count | accuracy |")
    lines.append("|---|---|---|")
    for name, stats in sorted(report.per_label.items()):
        lines.append(f"| {name} | {stats.count} | {stats.accuracy:.4f} |")
    lines.append("")
    lines.append("| relation slice | count | accuracy |")
    lines.append("|---|---|---|")
    lines.append(
        f"| contrary available | {report.contrary_cases.count} | {report.contrary_cases.accuracy:.4f} |"
    )
    lines.append(
        f"| contradictory only | {report.contradictory_only.count} | {report.contradictory_only.accuracy:.4f} |"
    )
    lines.append("")
    lines.append("| resolution path | count |")
    lines.append("|---|---|")
    for name, count in sorted(report.per_path.items()):
        lines.append(f"| {name} | {count} |")
    lines.append("")
    return "\n".join(lines)


def write_report(report: EvalReport, path: str | Path, style: str = "json") -> None:
    """Deterministic serialization; identical reports produce identical bytes."""
    path = Path(path)
    if style == "json":
        path.write_text(
            json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
    elif style == "markdown":
        path.write_text(render_markdown(report), encoding="utf-8")
    else:
        raise ValueError(f"unknown report style {style!r}")


def load_report(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
