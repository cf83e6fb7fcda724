"""Black-box prompt optimization over discrete token spaces via Bayesian
optimization on a continuous relaxation."""

from .acquisition import AcquisitionConfig, maximize, ucb
from .baselines import random_search
from .gp import GPModel, KernelParams, fit, log_marginal_likelihood, matern52, posterior, update
from .metrics import accuracy, f1_binary
from .objective import (
    LookupObjective,
    RemoteObjective,
    ScoreRequest,
    ScoreResponse,
    make_lookup_objective,
    remote_scorer,
)
from .optimizer import Observation, RunConfig, RunResult, best_seen_trace, run, top_b
from .presets import TASK_PRESETS, TaskPreset, get_preset
from .space import PromptSpace, cardinality, decode, encode, sample_uniform
from .vocab import Vocabulary, load_vocabulary, render_prompt

__version__ = "0.1.0"
