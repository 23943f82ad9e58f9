"""Wolfe's minimum-norm-point algorithm over a finite point set.

Finds the point of smallest Euclidean norm in the convex hull of the
rows of a matrix, returning the supporting subset and its convex
weights.  Used to project targets onto channel families; the active-set
structure terminates finitely and keeps the support at most d + 1 points
(Caratheodory), so it stays exact where generic NNLS solvers stall on
heavily overcomplete, near-duplicate column sets.
"""

from __future__ import annotations

import numpy as np


def minimum_norm_point(points: np.ndarray, tol: float = 1e-14, max_iter: int = 1000):
    """Minimum-norm point of conv(rows of ``points``).

    Returns (x, indices, weights) with x = weights @ points[indices],
    weights >= 0 summing to 1.  ``tol`` bounds the final Wolfe gap
    max_i (x.x - x.q_i), scaled by the squared data magnitude.
    """
    q = np.asarray(points, dtype=float)
    if q.ndim != 2 or len(q) == 0:
        raise ValueError("points must be a nonempty (k, d) array")
    scale = max(1.0, float(np.max(np.abs(q)))) ** 2
    norms2 = np.einsum("ij,ij->i", q, q)
    corral = [int(np.argmin(norms2))]
    weights = np.array([1.0])
    x = q[corral[0]].copy()

    last_norm2 = np.inf
    for _ in range(max_iter):
        xx = float(x @ x)
        if xx >= last_norm2 - tol * scale:
            break  # stalled at tolerance
        last_norm2 = xx
        dots = q @ x
        j = int(np.argmin(dots))
        if dots[j] >= xx - tol * scale:
            break  # Wolfe optimality: no vertex improves
        if j not in corral:
            corral.append(j)
            weights = np.append(weights, 0.0)

        while True:
            s = q[corral]
            m = len(corral)
            kkt = np.zeros((m + 1, m + 1))
            kkt[:m, :m] = s @ s.T
            kkt[:m, m] = 1.0
            kkt[m, :m] = 1.0
            rhs = np.zeros(m + 1)
            rhs[m] = 1.0
            alpha = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:m]
            if np.min(alpha) >= -1e-12:
                weights = np.clip(alpha, 0.0, None)
                weights /= weights.sum()
                x = weights @ s
                break
            # Step toward the affine minimizer until a weight hits zero.
            shrinking = alpha < weights
            ratios = np.where(
                shrinking & (alpha <= 1e-12),
                weights / np.maximum(weights - alpha, 1e-300),
                np.inf,
            )
            theta = float(np.min(ratios))
            weights = (1.0 - theta) * weights + theta * alpha
            keep = weights > 1e-15
            if not np.any(keep):
                keep[int(np.argmax(alpha))] = True
            corral = [c for c, k in zip(corral, keep) if k]
            weights = weights[keep]
            weights = np.clip(weights, 0.0, None)
            weights /= weights.sum()
            x = weights @ q[corral]

    return x, list(corral), weights
