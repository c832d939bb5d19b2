"""OpenAI-compatible chat-completions client with retry and backoff."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

import httpx

from folsquare.backend.base import CompletionRequest
from folsquare.errors import AuthError, TransportError

RETRYABLE_STATUS = (429, 500, 502, 503, 504)


@dataclass
class HttpConfig:
    base_url: str = "http://localhost:8000/v1"
    api_key: str = ""
    model_name: str = "gpt-4o"
    timeout: float = 120.0
    retries: int = 2
    backoff: float = 0.5

    @classmethod
    def load(cls, path: str | Path | None = None) -> "HttpConfig":
        """Config file values, then environment overrides."""
        cfg = cls()
        if path is not None:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            for key, value in data.items():
                if hasattr(cfg, key):
                    setattr(cfg, key, value)
        cfg.base_url = os.environ.get("FOLSQUARE_API_BASE", cfg.base_url)
        cfg.api_key = os.environ.get("FOLSQUARE_API_KEY", cfg.api_key)
        cfg.model_name = os.environ.get("FOLSQUARE_MODEL", cfg.model_name)
        return cfg


class HttpBackend:
    def __init__(self, config: HttpConfig, transport: httpx.BaseTransport | None = None):
        self.config = config
        limits = httpx.Limits(max_connections=8, max_keepalive_connections=4)
        self.client = httpx.Client(
            timeout=config.timeout, limits=limits, transport=transport
        )

    def complete(self, req: CompletionRequest) -> str:
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        headers = {"Content-Type": "application/json"}
        if self.config.api_key:
            headers["Authorization"] = f"Bearer {self.config.api_key}"
        payload = {
            "model": req.model_name or self.config.model_name,
            "messages": [{"role": "user", "content": req.prompt}],
            "temperature": req.temperature,
            "max_tokens": req.max_tokens,
        }
        last_error: Exception | None = None
        for attempt in range(self.config.retries + 1):
            try:
                response = self.client.post(url, headers=headers, json=payload)
                if response.status_code in (401, 403):
                    raise AuthError(f"endpoint rejected credentials ({response.status_code})")
                if response.status_code in RETRYABLE_STATUS:
                    last_error = TransportError(f"HTTP {response.status_code}")
                elif response.status_code >= 400:
                    raise TransportError(f"HTTP {response.status_code}: {response.text[:200]}")
                else:
                    data = response.json()
                    return data["choices"][0]["message"]["content"]
            except (httpx.TransportError, httpx.TimeoutException) as err:
                last_error = err
            if attempt < self.config.retries:
                time.sleep(self.config.backoff * (2 ** attempt))
        raise TransportError(f"completion failed after {self.config.retries + 1} attempts: {last_error}")

    def close(self) -> None:
        self.client.close()
