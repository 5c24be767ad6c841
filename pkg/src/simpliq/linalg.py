"""Dense symmetric eigenvalues by cyclic Jacobi rotations.

Self-contained solver for the small Gram matrices this package produces
(a few states, at most a few dozen).  Sweeps run in a fixed upper
triangle, row-major order until the off-diagonal Frobenius norm falls
below tolerance, so results are deterministic.
"""

from __future__ import annotations

import math

import numpy as np

from .machine import ConvergenceError

__all__ = ["jacobi_eigenvalues"]

OFF_DIAGONAL_TOL = 1e-13
_MAX_SWEEPS = 100


def _off_norm(a: np.ndarray) -> float:
    n = a.shape[0]
    mask = ~np.eye(n, dtype=bool)
    return float(np.sqrt(np.sum(a[mask] ** 2)))


def jacobi_eigenvalues(
    matrix, off_tol: float = OFF_DIAGONAL_TOL, max_sweeps: int = _MAX_SWEEPS
) -> list[float]:
    """Eigenvalues of a real symmetric matrix, sorted descending."""
    a = np.array(matrix, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n == 1:
        return [float(a[0, 0])]
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12):
        raise ValueError("matrix must be symmetric")

    for _ in range(max_sweeps):
        if _off_norm(a) <= off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 if theta == 0.0 else math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp, akq = a[k, p], a[k, q]
                    a[k, p] = a[p, k] = akp - s * (akq + tau * akp)
                    a[k, q] = a[q, k] = akq + s * (akp - tau * akq)
    else:
        raise ConvergenceError(f"Jacobi sweeps did not reach off-norm {off_tol}")
    return sorted((float(v) for v in np.diag(a)), reverse=True)
