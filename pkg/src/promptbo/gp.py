"""Exact Gaussian-process regression with a Matern-5/2 kernel.

Targets are standardized (zero mean, unit sample deviation when possible)
before fitting; hyperparameters are chosen by multi-start maximization of
the exact log marginal likelihood with analytic gradients, over fixed
bounds in log-parameter space. Models are immutable; `update` is a full
refit on the augmented dataset.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.optimize
from scipy.stats import qmc

from .kernels import matern52_cross

SQRT5 = math.sqrt(5.0)

JITTER_INIT = 1e-10
JITTER_MAX = 1e-6

# Bounds in (log lengthscale, log signal variance, log noise variance),
# standardized target units.
LOG_BOUNDS = (
    (math.log(0.005), math.log(10.0)),
    (math.log(0.05), math.log(20.0)),
    (math.log(1e-6), math.log(1.0)),
)
N_STARTS = 8


class GPError(RuntimeError):
    pass


class FactorizationError(GPError):
    """Kernel matrix could not be factorized even at maximum jitter."""


@dataclass(frozen=True)
class KernelParams:
    lengthscale: float
    signal_variance: float
    noise_variance: float

    def __post_init__(self):
        vals = (self.lengthscale, self.signal_variance, self.noise_variance)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError(f"non-finite kernel parameters: {vals}")
        if self.lengthscale <= 0 or self.signal_variance <= 0 or self.noise_variance < 0:
            raise ValueError(f"kernel parameters out of range: {vals}")


def matern52(a, b, params: KernelParams) -> float:
    """Matern-5/2 covariance between two points."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("non-finite input point")
    return float(matern52_cross(a[None, :], b[None, :], params.lengthscale, params.signal_variance)[0, 0])


def _cholesky_with_jitter(K, jitter=JITTER_INIT, max_jitter=JITTER_MAX):
    """Lower Cholesky factor of K + jitter*I, escalating jitter x10 on failure."""
    n = K.shape[0]
    j = jitter
    while True:
        try:
            return np.linalg.cholesky(K + j * np.eye(n)), j
        except np.linalg.LinAlgError:
            if j == 0.0:
                j = JITTER_INIT if max_jitter > 0 else None
            else:
                j *= 10.0
            if j is None or j > max_jitter:
                raise FactorizationError(
                    f"Cholesky failed at maximum jitter {max_jitter:g} "
                    "(degenerate inputs with near-zero noise?)"
                ) from None


def _kernel_matrix(X, params: KernelParams):
    K = matern52_cross(X, X, params.lengthscale, params.signal_variance)
    return K + params.noise_variance * np.eye(X.shape[0])


def log_marginal_likelihood(params: KernelParams, inputs, targets,
                            jitter=JITTER_INIT, max_jitter=JITTER_MAX) -> float:
    """Exact GP evidence: -1/2 y'(K+s_n I)^-1 y - 1/2 log|K+s_n I| - n/2 log 2pi."""
    X = np.asarray(inputs, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    n = X.shape[0]
    if n < 1:
        raise ValueError("empty dataset")
    L, _ = _cholesky_with_jitter(_kernel_matrix(X, params), jitter, max_jitter)
    alpha = scipy.linalg.cho_solve((L, True), y)
    return float(-0.5 * y @ alpha - np.sum(np.log(np.diag(L))) - 0.5 * n * math.log(2.0 * math.pi))


def mll_gradient(params: KernelParams, inputs, targets, jitter=JITTER_INIT) -> np.ndarray:
    """Analytic gradient of the log marginal likelihood with respect to
    (log lengthscale, log signal variance, log noise variance)."""
    X = np.asarray(inputs, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    n = X.shape[0]
    ell, s2, n2 = params.lengthscale, params.signal_variance, params.noise_variance

    sq = np.sum(X * X, axis=1)[:, None] + np.sum(X * X, axis=1)[None, :] - 2.0 * X @ X.T
    np.maximum(sq, 0.0, out=sq)
    r = np.sqrt(sq) / ell
    e = np.exp(-SQRT5 * r)
    Kr = (1.0 + SQRT5 * r + (5.0 / 3.0) * r * r) * e

    K = s2 * Kr + (n2 + jitter) * np.eye(n)
    L = np.linalg.cholesky(K)
    alpha = scipy.linalg.cho_solve((L, True), y)
    Kinv = scipy.linalg.cho_solve((L, True), np.eye(n))
    M = np.outer(alpha, alpha) - Kinv

    # dK/d(log ell) = s2 * (5/3) r^2 (1 + sqrt5 r) e^{-sqrt5 r}
    dK_dlell = s2 * (5.0 / 3.0) * r * r * (1.0 + SQRT5 * r) * e
    dK_dls2 = s2 * Kr
    dK_dln2 = n2 * np.eye(n)
    return np.array([
        0.5 * np.sum(M * dK_dlell),
        0.5 * np.sum(M * dK_dls2),
        0.5 * np.sum(M * dK_dln2),
    ])


def _pairwise_dists(X):
    sq = np.sum(X * X, axis=1)
    sq = sq[:, None] + sq[None, :] - 2.0 * X @ X.T
    np.maximum(sq, 0.0, out=sq)
    return np.sqrt(sq)


def _neg_mll_and_grad(theta, X, y, dists=None, jitter=JITTER_INIT):
    """Negative MLL and its gradient in log-parameter space, sharing one
    factorization (the hot path of `fit`)."""
    ell, s2, n2 = np.exp(theta)
    n = X.shape[0]
    if dists is None:
        dists = _pairwise_dists(X)
    r = dists / ell
    e = np.exp(-SQRT5 * r)
    Kr = (1.0 + SQRT5 * r + (5.0 / 3.0) * r * r) * e
    K = s2 * Kr + (n2 + jitter) * np.eye(n)
    try:
        L = np.linalg.cholesky(K)
    except np.linalg.LinAlgError:
        return 1e12, np.zeros(3)
    alpha = scipy.linalg.cho_solve((L, True), y, check_finite=False)
    mll = -0.5 * y @ alpha - np.sum(np.log(np.diag(L))) - 0.5 * n * math.log(2.0 * math.pi)
    Kinv = scipy.linalg.cho_solve((L, True), np.eye(n), check_finite=False)
    M = np.outer(alpha, alpha) - Kinv
    dK_dlell = s2 * (5.0 / 3.0) * r * r * (1.0 + SQRT5 * r) * e
    grad = np.array([
        0.5 * np.sum(M * dK_dlell),
        0.5 * np.sum(M * (s2 * Kr)),
        0.5 * n2 * np.trace(M),
    ])
    return -mll, -grad


@dataclass(frozen=True)
class GPModel:
    train_inputs: np.ndarray       # (n, L)
    train_targets_raw: np.ndarray  # (n,)
    target_shift: float
    target_scale: float
    params: KernelParams
    chol: np.ndarray               # lower factor of K + n2 I + jitter I
    alpha: np.ndarray              # (K + n2 I)^-1 y_std
    jitter: float

    @property
    def n(self) -> int:
        return self.train_inputs.shape[0]

    @property
    def dim(self) -> int:
        return self.train_inputs.shape[1]

    def to_json(self) -> str:
        """Debug dump; not a stability-guaranteed format."""
        return json.dumps({
            "inputs": self.train_inputs.tolist(),
            "targets": self.train_targets_raw.tolist(),
            "lengthscale": self.params.lengthscale,
            "signal_variance": self.params.signal_variance,
            "noise_variance": self.params.noise_variance,
            "shift": self.target_shift,
            "scale": self.target_scale,
        })


def _standardize(y: np.ndarray):
    shift = float(np.mean(y))
    scale = float(np.std(y, ddof=1)) if y.shape[0] >= 2 else 0.0
    if not scale > 0.0:
        scale = 1.0
    return (y - shift) / scale, shift, scale


def build_model(inputs, scores, params: KernelParams) -> GPModel:
    """Assemble a GPModel at fixed hyperparameters (standardize + factorize)."""
    X = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
    y = np.asarray(scores, dtype=np.float64)
    if X.shape[0] != y.shape[0] or y.shape[0] < 1:
        raise ValueError(f"bad dataset shapes: {X.shape}, {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite score")
    y_std, shift, scale = _standardize(y)
    L, j = _cholesky_with_jitter(_kernel_matrix(X, params))
    alpha = scipy.linalg.cho_solve((L, True), y_std)
    return GPModel(X, y.copy(), shift, scale, params, L, alpha, j)


def _start_points(n_starts: int) -> np.ndarray:
    lo = np.array([b[0] for b in LOG_BOUNDS])
    hi = np.array([b[1] for b in LOG_BOUNDS])
    sob = qmc.Sobol(d=3, scramble=True, seed=0)
    return lo + sob.random(n_starts) * (hi - lo)


def fit(inputs, scores, n_starts: int = N_STARTS) -> GPModel:
    """Fit hyperparameters by multi-start MLL maximization and build the model."""
    X = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
    y = np.asarray(scores, dtype=np.float64)
    if y.shape[0] < 1:
        raise ValueError("empty dataset")
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite score")
    y_std, _, _ = _standardize(y)

    dists = _pairwise_dists(X)
    best = None
    for theta0 in _start_points(n_starts):
        res = scipy.optimize.minimize(
            _neg_mll_and_grad, theta0, args=(X, y_std, dists), jac=True,
            method="L-BFGS-B", bounds=LOG_BOUNDS,
        )
        if best is None or res.fun < best.fun:
            best = res
    params = KernelParams(*np.exp(best.x))
    return build_model(X, y, params)


def posterior(model: GPModel, x) -> tuple[float, float]:
    """Predictive mean and variance at one point, in raw score units."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.dim,):
        raise ValueError(f"expected dimension {model.dim}, got shape {x.shape}")
    means, variances = posterior_batch(model, x[None, :])
    return float(means[0]), float(variances[0])


def posterior_batch(model: GPModel, X) -> tuple[np.ndarray, np.ndarray]:
    """Predictive means and variances at a batch of points (m, L)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.dim:
        raise ValueError(f"expected shape (m, {model.dim}), got {X.shape}")
    p = model.params
    Ks = matern52_cross(X, model.train_inputs, p.lengthscale, p.signal_variance)
    mean_std = Ks @ model.alpha
    v = scipy.linalg.solve_triangular(model.chol, Ks.T, lower=True)
    var_std = p.signal_variance - np.sum(v * v, axis=0)
    np.maximum(var_std, 0.0, out=var_std)
    return (model.target_shift + model.target_scale * mean_std,
            model.target_scale**2 * var_std)


def update(model: GPModel, x, score: float) -> GPModel:
    """Refit on the dataset augmented with one observation."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.dim,):
        raise ValueError(f"expected dimension {model.dim}, got shape {x.shape}")
    X = np.vstack([model.train_inputs, x[None, :]])
    y = np.append(model.train_targets_raw, score)
    return fit(X, y)
