"""Pure-numpy Matern-5/2 cross-covariance (fallback for the compiled core)."""

import numpy as np

SQRT5 = np.sqrt(5.0)


def matern52_cross(X, Y, lengthscale, signal_variance):
    """Cross-covariance matrix k(X, Y) for the Matern-5/2 kernel.

    X: (n, L), Y: (m, L). Returns (n, m).
    k(d) = s2 * (1 + sqrt5*d/l + 5*d^2/(3*l^2)) * exp(-sqrt5*d/l)
    """
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    sq = np.sum(X * X, axis=1)[:, None] + np.sum(Y * Y, axis=1)[None, :] - 2.0 * X @ Y.T
    np.maximum(sq, 0.0, out=sq)
    r = np.sqrt(sq) / lengthscale
    return signal_variance * (1.0 + SQRT5 * r + (5.0 / 3.0) * r * r) * np.exp(-SQRT5 * r)


IMPLEMENTATION = "python"
