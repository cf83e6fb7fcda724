"""The sequential Bayesian-optimization loop over discrete prompts.

Flow: draw N uniform prompts and score them, fit the GP on the encoded
points, then for each of K iterations maximize the acquisition, round the
continuous argmax back to a discrete prompt, evaluate it, and refit the GP
on the snapped point (the point actually evaluated). The best-seen history
and per-observation wall time are recorded for every evaluation.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Tuple

import numpy as np

from . import gp
from .acquisition import AcquisitionConfig, maximize
from .space import PromptSpace, decode, encode, sample_uniform


@dataclass(frozen=True)
class RunConfig:
    n_init: int = 10
    budget: int = 90
    top_b: int = 5
    beta: float = 2.0
    seed: int = 0
    acquisition: AcquisitionConfig = field(default_factory=AcquisitionConfig)
    skip_duplicates: bool = False
    # "wall" records real elapsed seconds; "logical" counts evaluations,
    # giving byte-reproducible traces.
    timer: str = "wall"

    def __post_init__(self):
        if self.n_init < 1:
            raise ValueError(f"n_init must be >= 1, got {self.n_init}")
        if self.budget < 0:
            raise ValueError(f"budget must be >= 0, got {self.budget}")
        if not 1 <= self.top_b <= self.n_init + self.budget:
            raise ValueError(f"need 1 <= top_b <= n_init + budget, got {self.top_b}")
        if self.timer not in ("wall", "logical"):
            raise ValueError(f"timer must be 'wall' or 'logical', got {self.timer!r}")
        object.__setattr__(self, "acquisition", replace(self.acquisition, beta=self.beta))


@dataclass(frozen=True)
class Observation:
    iteration: int
    prompt: np.ndarray
    point: np.ndarray
    score: float
    elapsed_seconds: float


@dataclass(frozen=True)
class RunResult:
    observations: Tuple[Observation, ...]
    best_seen: Tuple[float, ...]

    @property
    def final_best(self) -> float:
        return self.best_seen[-1]

    def top_prompts(self, b: int):
        return top_b(self.observations, b)


class RunAborted(RuntimeError):
    """Objective evaluation failed mid-run; partial results are attached."""

    def __init__(self, message: str, partial: RunResult):
        super().__init__(message)
        self.partial = partial


TRACE_HEADER = ["iteration", "elapsed_seconds", "prompt_ids", "score", "best_seen"]


class TraceWriter:
    """Appends one CSV row per observation, flushed immediately."""

    def __init__(self, path):
        self._fh = open(path, "w", encoding="utf-8", newline="")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(TRACE_HEADER)
        self._fh.flush()

    def write(self, obs: Observation, best_seen: float):
        self._writer.writerow([
            obs.iteration,
            repr(obs.elapsed_seconds),
            " ".join(str(int(i)) for i in obs.prompt),
            repr(obs.score),
            repr(best_seen),
        ])
        self._fh.flush()

    def close(self):
        self._fh.close()


class _Recorder:
    def __init__(self, config: RunConfig, writer: Optional[TraceWriter]):
        self.observations: List[Observation] = []
        self.best_seen: List[float] = []
        self.writer = writer
        self._timer = config.timer
        self._start = time.perf_counter()
        self._last = 0.0

    def elapsed(self) -> float:
        if self._timer == "logical":
            return float(len(self.observations) + 1)
        t = time.perf_counter() - self._start
        self._last = max(self._last, t)
        return self._last

    def commit(self, prompt, point, score):
        obs = Observation(len(self.observations), np.asarray(prompt), np.asarray(point),
                          float(score), self.elapsed())
        best = max(self.best_seen[-1], obs.score) if self.best_seen else obs.score
        self.observations.append(obs)
        self.best_seen.append(best)
        if self.writer:
            self.writer.write(obs, best)

    def result(self) -> RunResult:
        return RunResult(tuple(self.observations), tuple(self.best_seen))


def _evaluate(objective, prompt, rec: _Recorder):
    try:
        return objective.evaluate(prompt)
    except Exception as exc:
        raise RunAborted(f"objective evaluation failed: {exc}", rec.result()) from exc


def run(objective, space: PromptSpace, config: RunConfig,
        trace_path=None) -> RunResult:
    """Execute the full BO loop. Deterministic given the seed, a
    deterministic objective, and the logical timer."""
    rng = np.random.default_rng(config.seed)
    writer = TraceWriter(trace_path) if trace_path is not None else None
    rec = _Recorder(config, writer)
    try:
        initial = [sample_uniform(space, rng) for _ in range(config.n_init)]
        for prompt in initial:
            score = _evaluate(objective, prompt, rec)
            rec.commit(prompt, encode(space, prompt), score)

        model = gp.fit(
            np.array([o.point for o in rec.observations]),
            np.array([o.score for o in rec.observations]),
        )
        seen = {tuple(o.prompt.tolist()) for o in rec.observations}
        for _ in range(config.budget):
            point = maximize(model, space, config.acquisition, rng)
            prompt = decode(space, point)
            if config.skip_duplicates and tuple(prompt.tolist()) in seen:
                prompt = sample_uniform(space, rng)
            seen.add(tuple(prompt.tolist()))
            snapped = encode(space, prompt)
            score = _evaluate(objective, prompt, rec)
            rec.commit(prompt, snapped, score)
            model = gp.update(model, snapped, score)
        return rec.result()
    finally:
        if writer:
            writer.close()


def top_b(observations, b: int):
    """The b highest-scoring observations, ties broken by earlier iteration."""
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    ranked = sorted(observations, key=lambda o: (-o.score, o.iteration))
    return [(o.prompt, o.score) for o in ranked[:b]]


def best_seen_trace(result: RunResult):
    """(elapsed_seconds, running best score) per observation."""
    if not result.observations:
        raise ValueError("empty result")
    return [(o.elapsed_seconds, b) for o, b in zip(result.observations, result.best_seen)]
