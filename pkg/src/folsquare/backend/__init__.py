from folsquare.backend.base import (
    Backend,
    BudgetGuard,
    CompletionRequest,
    RecordingBackend,
    ScriptedBackend,
    estimate_tokens,
    fingerprint,
)
from folsquare.backend.cache import CachedBackend, cache_stats, clear_cache
from folsquare.backend.extract import ExtractedPayload, extract_payload, normalize_label
from folsquare.backend.http import HttpBackend, HttpConfig
from folsquare.backend.prompts import (
    PLANNER,
    REFLECTIVE_VERIFICATION,
    SEMANTIC_STRUCTURING,
    SOLVER,
    TEMPLATES,
    TRANSLATOR,
    PromptTemplate,
    render_prompt,
)

__all__ = [
    "Backend", "BudgetGuard", "CompletionRequest", "RecordingBackend",
    "ScriptedBackend", "estimate_tokens", "fingerprint", "CachedBackend",
    "cache_stats", "clear_cache", "ExtractedPayload", "extract_payload",
    "normalize_label", "HttpBackend", "HttpConfig", "PromptTemplate",
    "render_prompt", "TEMPLATES", "PLANNER", "REFLECTIVE_VERIFICATION",
    "SEMANTIC_STRUCTURING", "SOLVER", "TRANSLATOR",
]
