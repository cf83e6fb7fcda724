"""Black-box objectives: the remote scorer protocol and synthetic in-process
objectives for verification.

Wire protocol: HTTP POST {endpoint}/score with a JSON ScoreRequest, JSON
ScoreResponse back. Serialization is canonical (sorted keys, no spaces) so
golden fixtures round-trip byte-exactly. Protocol version is carried in the
X-PromptBO-Proto header.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import requests

from .space import PromptSpace, cardinality
from .vocab import Vocabulary, render_prompt

PROTO_HEADER = "X-PromptBO-Proto"
PROTO_VERSION = "1"
LOOKUP_MAX_CARDINALITY = 10**6

VALID_SPLITS = ("train", "dev", "test")


class EvaluationError(RuntimeError):
    """Objective evaluation failed (transport, schema, or non-finite score)."""


class ProtocolError(EvaluationError):
    """Malformed wire message."""


@dataclass(frozen=True)
class ScoreRequest:
    prompt_ids: tuple[int, ...]
    prompt_text: str
    split: str

    def __post_init__(self):
        if not self.split:
            raise ProtocolError("split must be non-empty")

    def serialize(self) -> str:
        return _canonical({
            "prompt_ids": list(self.prompt_ids),
            "prompt_text": self.prompt_text,
            "split": self.split,
        })

    @classmethod
    def parse(cls, text: str) -> "ScoreRequest":
        obj = _load_object(text)
        ids = obj.get("prompt_ids")
        if not isinstance(ids, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in ids):
            raise ProtocolError("prompt_ids must be a list of integers")
        if not isinstance(obj.get("prompt_text"), str):
            raise ProtocolError("prompt_text must be a string")
        if not isinstance(obj.get("split"), str) or not obj["split"]:
            raise ProtocolError("split must be a non-empty string")
        return cls(tuple(ids), obj["prompt_text"], obj["split"])


@dataclass(frozen=True)
class ScoreResponse:
    score: float
    n_examples: int
    predictions: Optional[tuple] = None
    labels: Optional[tuple] = None

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise ProtocolError(f"score must be finite, got {self.score}")
        if self.n_examples < 1:
            raise ProtocolError(f"n_examples must be positive, got {self.n_examples}")
        if self.predictions is not None and self.labels is not None:
            if len(self.predictions) != len(self.labels) or len(self.predictions) != self.n_examples:
                raise ProtocolError("predictions/labels lengths must equal n_examples")

    def serialize(self) -> str:
        obj = {"score": self.score, "n_examples": self.n_examples}
        if self.predictions is not None:
            obj["predictions"] = list(self.predictions)
        if self.labels is not None:
            obj["labels"] = list(self.labels)
        return _canonical(obj)

    @classmethod
    def parse(cls, text: str) -> "ScoreResponse":
        obj = _load_object(text)
        score = obj.get("score")
        if isinstance(score, bool) or not isinstance(score, (int, float)) or not math.isfinite(score):
            raise ProtocolError(f"score must be a finite number, got {score!r}")
        n = obj.get("n_examples")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ProtocolError(f"n_examples must be a positive integer, got {n!r}")
        preds = obj.get("predictions")
        labels = obj.get("labels")
        for name, v in (("predictions", preds), ("labels", labels)):
            if v is not None and not isinstance(v, list):
                raise ProtocolError(f"{name} must be a list")
        return cls(float(score), n,
                   tuple(preds) if preds is not None else None,
                   tuple(labels) if labels is not None else None)


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _load_object(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ProtocolError("message must be a JSON object")
    return obj


class LookupObjective:
    """Exhaustive seeded score table over a small space, with known optimum.

    Values are i.i.d. uniform on [0, 1); only constructible when |V|^L fits
    in memory (<= 1e6 prompts).
    """

    def __init__(self, space: PromptSpace, seed: int):
        card = cardinality(space)
        if card > LOOKUP_MAX_CARDINALITY:
            raise ValueError(f"space too large for lookup table: {card} > {LOOKUP_MAX_CARDINALITY}")
        self.space = space
        self.seed = seed
        self.table = np.random.default_rng(seed).random(card)
        flat_best = int(np.argmax(self.table))
        dims = (space.vocab_size,) * space.length
        self.known_optimum = (
            np.array(np.unravel_index(flat_best, dims), dtype=np.int64),
            float(self.table[flat_best]),
        )

    def evaluate(self, prompt: Sequence[int]) -> float:
        idx = self.space.validate_prompt(prompt)
        dims = (self.space.vocab_size,) * self.space.length
        return float(self.table[np.ravel_multi_index(tuple(idx), dims)])


def make_lookup_objective(space: PromptSpace, seed: int) -> LookupObjective:
    return LookupObjective(space, seed)


class RemoteObjective:
    """Objective backed by an HTTP scorer implementing POST {endpoint}/score."""

    def __init__(self, endpoint: str, space: PromptSpace, vocab: Optional[Vocabulary] = None,
                 split: str = "train", timeout: float = 30.0, retries: int = 2,
                 backoff: float = 0.5, session: Optional[requests.Session] = None):
        if not endpoint.startswith(("http://", "https://")):
            raise ValueError(f"not a well-formed endpoint URL: {endpoint!r}")
        self.url = endpoint.rstrip("/") + "/score"
        self.space = space
        self.vocab = vocab
        self.split = split
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self.session = session or requests.Session()

    def evaluate(self, prompt: Sequence[int]) -> float:
        idx = self.space.validate_prompt(prompt)
        text = render_prompt(self.vocab, idx) if self.vocab is not None else ""
        req = ScoreRequest(tuple(int(i) for i in idx), text, self.split)
        body = req.serialize().encode("utf-8")
        headers = {"Content-Type": "application/json", PROTO_HEADER: PROTO_VERSION}

        last_exc = None
        for attempt in range(self.retries + 1):
            try:
                resp = self.session.post(self.url, data=body, headers=headers, timeout=self.timeout)
            except requests.RequestException as exc:
                last_exc = exc
                if attempt < self.retries:
                    time.sleep(self.backoff * (2**attempt))
                continue
            if resp.status_code >= 400:
                raise EvaluationError(f"scorer returned HTTP {resp.status_code}: {resp.text[:500]}")
            return ScoreResponse.parse(resp.text).score
        raise EvaluationError(
            f"scorer unreachable after {self.retries + 1} attempts: {last_exc}"
        ) from last_exc


def remote_scorer(endpoint: str, space: PromptSpace, **kwargs) -> RemoteObjective:
    return RemoteObjective(endpoint, space, **kwargs)
