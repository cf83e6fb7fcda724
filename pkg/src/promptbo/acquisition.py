"""Upper-confidence-bound acquisition and its maximization over the unit box.

The maximizer is deliberately simple and auditable: rank a batch of uniform
probes by UCB, then run bounded finite-difference ascent from the best few,
and return the overall argmax. By construction the returned point's UCB is
never below the best raw probe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gp import GPModel, posterior_batch
from .space import PromptSpace

FD_STEP = 1e-6
INITIAL_STEP = 0.1


@dataclass(frozen=True)
class AcquisitionConfig:
    beta: float = 2.0
    n_restarts: int = 8
    n_raw_probes: int = 512
    max_ascent_steps: int = 50
    step_tolerance: float = 1e-4

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if not (self.n_raw_probes >= self.n_restarts >= 1):
            raise ValueError(
                f"need n_raw_probes >= n_restarts >= 1, got {self.n_raw_probes}, {self.n_restarts}"
            )
        if self.max_ascent_steps < 1 or self.step_tolerance <= 0:
            raise ValueError("invalid ascent settings")


def ucb(model: GPModel, x, beta: float) -> float:
    """mu(x) + beta * sigma(x)."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    return float(ucb_batch(model, np.asarray(x, dtype=np.float64)[None, :], beta)[0])


def ucb_batch(model: GPModel, X, beta: float) -> np.ndarray:
    means, variances = posterior_batch(model, X)
    return means + beta * np.sqrt(variances)


def _fd_gradients(model, X, beta):
    """Central finite-difference UCB gradients for a batch (R, L) of points.

    Steps are clipped at the box walls, so boundary gradients are one-sided.
    """
    R, L = X.shape
    plus = np.minimum(X + FD_STEP, 1.0)
    minus = np.maximum(X - FD_STEP, 0.0)
    probes = np.repeat(X, 2 * L, axis=0).reshape(R, 2 * L, L)
    for d in range(L):
        probes[:, 2 * d, d] = plus[:, d]
        probes[:, 2 * d + 1, d] = minus[:, d]
    vals = ucb_batch(model, probes.reshape(-1, L), beta).reshape(R, 2 * L)
    return (vals[:, 0::2] - vals[:, 1::2]) / (plus - minus)


def _ascend(model, X0, beta, max_steps, tol):
    """Projected gradient ascent on a batch of start points, clamped to [0,1].

    One trial step per iteration per point: accepted steps grow, rejected
    steps shrink; a point retires when its step drops below tol.
    """
    X = X0.copy()
    f = ucb_batch(model, X, beta)
    step = np.full(X.shape[0], INITIAL_STEP)
    active = np.ones(X.shape[0], dtype=bool)
    for _ in range(max_steps):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        grad = _fd_gradients(model, X[idx], beta)
        norms = np.linalg.norm(grad, axis=1)
        ok = norms > 0.0
        active[idx[~ok]] = False
        idx = idx[ok]
        if idx.size == 0:
            break
        direction = grad[ok] / norms[ok, None]
        cand = np.clip(X[idx] + step[idx, None] * direction, 0.0, 1.0)
        fc = ucb_batch(model, cand, beta)
        better = fc > f[idx]
        acc = idx[better]
        X[acc] = cand[better]
        f[acc] = fc[better]
        step[acc] *= 1.5
        rej = idx[~better]
        step[rej] *= 0.5
        active[rej[step[rej] < tol]] = False
    return X, f


def maximize(model: GPModel, space: PromptSpace, config: AcquisitionConfig,
             rng: np.random.Generator) -> np.ndarray:
    """Approximately maximize UCB over the unit box.

    Guarantee: the returned point's UCB is >= the UCB of every raw probe.
    Deterministic given the rng state.
    """
    if model.dim != space.length:
        raise ValueError(f"model dimension {model.dim} != space length {space.length}")
    probes = rng.random((config.n_raw_probes, space.length))
    vals = ucb_batch(model, probes, config.beta)
    order = np.argsort(-vals, kind="stable")

    starts = probes[order[: config.n_restarts]]
    ends, f_ends = _ascend(model, starts, config.beta,
                           config.max_ascent_steps, config.step_tolerance)

    best_x = probes[order[0]]
    best_f = vals[order[0]]
    for x, f in zip(ends, f_ends):
        if f > best_f:
            best_x, best_f = x, f
    return np.clip(best_x.copy(), 0.0, 1.0)
