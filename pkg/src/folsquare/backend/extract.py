"""Structured-output extraction from raw model text.

Finds the last well-formed JSON block, applying bounded repair first:
code fences stripped, trailing commas removed, missing closing brackets
appended. Each pipeline stage declares a schema the block must satisfy.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from folsquare.errors import ExtractionError

LABELS = ("True", "False", "Uncertain")

_FENCE_RE = re.compile(r"```[a-zA-Z]*\n?|```")
_TRAILING_COMMA_RE = re.compile(r",(\s*[}\]])")


@dataclass
class ExtractedPayload:
    raw: str
    parsed: dict[str, Any]
    repair_applied: bool


def normalize_label(value: str) -> str:
    """Case-insensitive mapping onto the three verdict labels."""
    cleaned = value.strip().strip('."\'').lower()
    if cleaned == "true":
        return "True"
    if cleaned == "false":
        return "False"
    if cleaned in ("uncertain", "unknown"):
        return "Uncertain"
    raise ExtractionError(f"unrecognized verdict label {value!r}")


def _candidate_blocks(text: str) -> list[str]:
    """Balanced {...} spans, innermost-last ordering preserved."""
    spans: list[str] = []
    stack: list[int] = []
    for i, ch in enumerate(text):
        if ch == "{":
            stack.append(i)
        elif ch == "}" and stack:
            start = stack.pop()
            if not stack:  # top-level block only
                spans.append(text[start : i + 1])
    # an unterminated block at the end is still worth a repair attempt
    if stack:
        spans.append(text[stack[0] :])
    return spans


def _try_load(block: str) -> tuple[dict[str, Any] | None, bool]:
    repaired = False
    try:
        value = json.loads(block)
        return (value if isinstance(value, dict) else None), repaired
    except json.JSONDecodeError:
        pass
    fixed = _TRAILING_COMMA_RE.sub(r"\1", block)
    opens = fixed.count("{") - fixed.count("}")
    brackets = fixed.count("[") - fixed.count("]")
    if 0 < brackets <= 3:
        fixed += "]" * brackets
    if 0 < opens <= 3:
        fixed += "}" * opens
    if fixed != block:
        repaired = True
        try:
            value = json.loads(fixed)
            return (value if isinstance(value, dict) else None), repaired
        except json.JSONDecodeError:
            pass
    return None, repaired


def _check_position(value: Any, key: str) -> None:
    if not isinstance(value, dict) or not isinstance(value.get("statement"), str) or not isinstance(value.get("FOL"), str):
        raise ExtractionError(f"square position {key!r} needs statement and FOL strings")


def _validate(parsed: dict[str, Any], schema_name: str) -> dict[str, Any]:
    if schema_name == "square":
        for key in ("S1", "not_S1"):
            if key not in parsed:
                raise ExtractionError(f"square payload missing {key!r}")
            _check_position(parsed[key], key)
        for key in ("S2", "not_S2"):
            if key in parsed and parsed[key]:
                _check_position(parsed[key], key)
        return parsed
    if schema_name == "premises":
        items = parsed.get("premises")
        if not isinstance(items, list):
            raise ExtractionError("premises payload needs a 'premises' list")
        for item in items:
            if not isinstance(item, dict) or "statement" not in item or "FOL" not in item:
                raise ExtractionError("each premise needs statement and FOL")
        return parsed
    if schema_name == "plan":
        steps = parsed.get("plan")
        if not isinstance(steps, list) or not all(isinstance(s, str) for s in steps):
            raise ExtractionError("plan payload needs a list of step strings")
        return parsed
    if schema_name == "solution":
        steps = parsed.get("steps")
        if not isinstance(steps, list):
            raise ExtractionError("solution payload needs a 'steps' list")
        if "verdict" not in parsed:
            raise ExtractionError("solution payload needs a verdict")
        parsed["verdict"] = normalize_label(str(parsed["verdict"]))
        return parsed
    if schema_name == "reflection":
        if "verdict" not in parsed:
            raise ExtractionError("reflection payload needs a verdict")
        parsed["verdict"] = normalize_label(str(parsed["verdict"]))
        parsed.setdefault("reason", "")
        if not isinstance(parsed["reason"], str):
            raise ExtractionError("reflection reason must be a string")
        return parsed
    raise ValueError(f"unknown schema {schema_name!r}")


def extract_payload(raw: str, schema_name: str) -> ExtractedPayload:
    """Locate and validate the last structured block in ``raw``."""
    defenced = _FENCE_RE.sub("", raw)
    fence_repair = defenced != raw
    blocks = _candidate_blocks(defenced)
    last_error: Exception | None = None
    for block in reversed(blocks):
        parsed, repaired = _try_load(block)
        if parsed is None:
            continue
        try:
            validated = _validate(parsed, schema_name)
        except ExtractionError as err:
            last_error = err
            continue
        return ExtractedPayload(raw=raw, parsed=validated, repair_applied=repaired or fence_repair)
    detail = f": {last_error}" if last_error else ""
    raise ExtractionError(f"no valid {schema_name} block found{detail}")
