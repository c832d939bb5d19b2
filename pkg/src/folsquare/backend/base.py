"""Completion interface: request type, scripted/replay backends, budget guard."""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

from folsquare.errors import BudgetExceeded


@dataclass(frozen=True)
class CompletionRequest:
    prompt: str
    model_name: str = "scripted"
    temperature: float = 0.0
    max_tokens: int = 4096
    tags: dict[str, str] = field(default_factory=dict)


class Backend(Protocol):
    def complete(self, req: CompletionRequest) -> str: ...


def fingerprint(req: CompletionRequest) -> str:
    payload = f"{req.model_name}\x00{req.temperature}\x00{req.prompt}"
    return hashlib.sha256(payload.encode()).hexdigest()


def estimate_tokens(text: str) -> int:
    return max(1, len(text) // 4)


class ScriptedBackend:
    """Deterministic backend for tests and replayed runs.

    Responses resolve by exact request fingerprint first (the replay-file
    contract), then by per-(instance, stage) queues keyed from request
    tags. Raises LookupError when nothing matches.
    """

    def __init__(
        self,
        table: dict[str, str] | None = None,
        stage_scripts: dict[tuple[str, str], list[str]] | None = None,
    ):
        self.table = dict(table or {})
        self.stage_scripts = {k: list(v) for k, v in (stage_scripts or {}).items()}
        self.calls = 0
        self._lock = threading.Lock()

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedBackend":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(table=data)

    def complete(self, req: CompletionRequest) -> str:
        with self._lock:
            self.calls += 1
            key = fingerprint(req)
            if key in self.table:
                return self.table[key]
            stage_key = (req.tags.get("instance", ""), req.tags.get("stage", ""))
            queue = self.stage_scripts.get(stage_key)
            if queue:
                return queue.pop(0)
            raise LookupError(
                f"no scripted response for stage={stage_key[1]!r} instance={stage_key[0]!r}"
            )


class RecordingBackend:
    """Wraps a live backend and captures fingerprint→response pairs."""

    def __init__(self, inner: Backend):
        self.inner = inner
        self.recorded: dict[str, str] = {}
        self._lock = threading.Lock()

    def complete(self, req: CompletionRequest) -> str:
        response = self.inner.complete(req)
        with self._lock:
            self.recorded[fingerprint(req)] = response
        return response

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.recorded, indent=2, sort_keys=True, ensure_ascii=False),
            encoding="utf-8",
        )


class BudgetGuard:
    """Per-instance token ceiling over an inner backend."""

    def __init__(self, inner: Backend, max_tokens: int = 64_000):
        self.inner = inner
        self.max_tokens = max_tokens
        self.used = 0
        self._lock = threading.Lock()

    def complete(self, req: CompletionRequest) -> str:
        prompt_cost = estimate_tokens(req.prompt)
        with self._lock:
            if self.used + prompt_cost > self.max_tokens:
                raise BudgetExceeded(
                    f"token budget {self.max_tokens} exhausted ({self.used} used)"
                )
            self.used += prompt_cost
        response = self.inner.complete(req)
        with self._lock:
            self.used += estimate_tokens(response)
        return response
