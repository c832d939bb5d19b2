"""Content-addressed response cache.

Keys cover model, temperature, prompt, and the template name/version from
the request tags, so editing a prompt template invalidates its entries.
Writes are atomic (temp file + rename); rewriting an identical key is
benign.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from folsquare.backend.base import Backend, CompletionRequest


def cache_key(req: CompletionRequest) -> str:
    parts = (
        req.model_name,
        f"{req.temperature}",
        req.tags.get("template", ""),
        req.tags.get("template_version", ""),
        req.prompt,
    )
    return hashlib.sha256("\x00".join(parts).encode()).hexdigest()


class CachedBackend:
    def __init__(self, inner: Backend, cache_dir: str | Path):
        self.inner = inner
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.cache_dir / f"{key}.txt"

    def complete(self, req: CompletionRequest) -> str:
        path = self._path(cache_key(req))
        if path.exists():
            self.hits += 1
            return path.read_text(encoding="utf-8")
        response = self.inner.complete(req)
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".part")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(response)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.misses += 1
        return response


def cache_stats(cache_dir: str | Path) -> dict:
    root = Path(cache_dir)
    if not root.exists():
        return {"entries": 0, "bytes": 0}
    files = [p for p in root.glob("*.txt")]
    return {"entries": len(files), "bytes": sum(p.stat().st_size for p in files)}


def clear_cache(cache_dir: str | Path) -> int:
    root = Path(cache_dir)
    if not root.exists():
        return 0
    removed = 0
    for p in root.glob("*.txt"):
        p.unlink()
        removed += 1
    return removed
