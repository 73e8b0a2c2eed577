"""Remote chat-completion provider.

Speaks the common hosted-model HTTP+JSON protocol: POST {base_url}/chat/completions
with a message array, reads choices[0].message.content. Responses are cached
on disk keyed by a digest of (template, inputs, model) so reruns are cheap
and reproducible.
"""

from __future__ import annotations

import hashlib
import json
import os
import time

import httpx

from . import TransportError
from .templates import TEMPLATES

RETRY_DELAYS = (1.0, 2.0, 4.0)  # seconds; 3 attempts total


class ResponseCache:
    """One file per request digest, containing the raw response text."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".txt")

    def get(self, key: str) -> str | None:
        path = self._path(key)
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return fh.read()
        return None

    def put(self, key: str, value: str) -> None:
        tmp = self._path(key) + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(value)
        os.replace(tmp, self._path(key))


class RemoteProvider:
    """HTTP provider with bounded retries and optional response caching."""

    name = "remote"

    def __init__(self, config, transport: httpx.BaseTransport | None = None):
        self.config = config
        self.cache = ResponseCache(config.cache_dir) if config.cache_dir else None
        self._client = httpx.Client(
            base_url=config.base_url,
            timeout=config.request_timeout,
            transport=transport,
        )

    def _digest(self, template_name: str, payload: dict) -> str:
        body = json.dumps(
            {"template": template_name, "payload": payload, "model": self.config.model_id},
            sort_keys=True,
        )
        return hashlib.sha256(body.encode("utf-8")).hexdigest()

    def _complete(self, template_name: str, values: dict, cache_salt: str = "") -> str:
        payload = dict(values)
        if cache_salt:
            payload["__salt"] = cache_salt
        key = self._digest(template_name, payload)
        if self.cache is not None:
            hit = self.cache.get(key)
            if hit is not None:
                return hit

        messages = TEMPLATES[template_name].render(**values)
        api_key = os.environ.get(self.config.api_key_env, "")
        request_body = {
            "model": self.config.model_id,
            "messages": messages,
            "temperature": self.config.temperature,
        }
        last_error: Exception | None = None
        for attempt, delay in enumerate(RETRY_DELAYS):
            try:
                response = self._client.post(
                    "/chat/completions",
                    json=request_body,
                    headers={"Authorization": f"Bearer {api_key}"},
                )
                response.raise_for_status()
                content = response.json()["choices"][0]["message"]["content"]
                if self.cache is not None:
                    self.cache.put(key, content)
                return content
            except (httpx.HTTPError, KeyError, ValueError) as exc:
                last_error = exc
                if attempt < len(RETRY_DELAYS) - 1:
                    time.sleep(delay)
        raise TransportError(f"provider unreachable after retries: {last_error}")

    # -- raw capabilities ----------------------------------------------------

    def segment(self, text: str) -> list[str]:
        content = self._complete("segmentation", {"text": text})
        try:
            return list(json.loads(content)["segments"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise TransportError(f"unparseable segmentation response: {exc}")

    def candidates(self, segment_text: str, target_words: int, n: int) -> list[str]:
        texts = []
        for j in range(n):
            texts.append(
                self._complete(
                    "candidate",
                    {"segment": segment_text, "target_length": target_words},
                    cache_salt=str(j),
                ).strip()
            )
        return texts

    def edit_type(self, before_text: str, after_text: str) -> str:
        return self._complete(
            "edit_type", {"before": before_text, "after": after_text}
        ).strip()

    def information(self, text: str) -> list[tuple[str, str, int]]:
        content = self._complete("information", {"text": text})
        try:
            bits = json.loads(content)["information_bits"]
            return [(b["title"], b["alignment"], int(b["importance"])) for b in bits]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise TransportError(f"unparseable information response: {exc}")

    def importances(self, titles: list[str], purpose: str, text: str) -> list[int]:
        content = self._complete(
            "importance",
            {
                "information_points": json.dumps(titles),
                "purpose": purpose or "general audience",
                "text": text,
            },
        )
        try:
            return [int(x) for x in json.loads(content)["importances"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise TransportError(f"unparseable importance response: {exc}")
