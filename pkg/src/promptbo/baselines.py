"""Budget-matched random search, sharing the optimizer's trace machinery."""

from __future__ import annotations

import numpy as np

from .optimizer import RunConfig, RunResult, TraceWriter, _evaluate, _Recorder
from .space import PromptSpace, encode, sample_uniform


def random_search(objective, space: PromptSpace, config: RunConfig,
                  trace_path=None) -> RunResult:
    """Evaluate n_init + budget uniform prompts sequentially."""
    rng = np.random.default_rng(config.seed)
    writer = TraceWriter(trace_path) if trace_path is not None else None
    rec = _Recorder(config, writer)
    try:
        for _ in range(config.n_init + config.budget):
            prompt = sample_uniform(space, rng)
            score = _evaluate(objective, prompt, rec)
            rec.commit(prompt, encode(space, prompt), score)
        return rec.result()
    finally:
        if writer:
            writer.close()
