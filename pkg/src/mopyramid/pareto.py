"""Non-dominated filtering helpers shared by metrics, baselines and problems."""

from __future__ import annotations

import numpy as np

__all__ = ["nondominated_mask", "nondominated_points"]


def nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Boolean mask of the points not dominated by any other point.

    Duplicates of a non-dominated vector are all kept (equal vectors never
    dominate each other). Minimization convention. O(n log n) sweep for
    two objectives, O(n^2) vectorized fallback otherwise.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected a 2-D array of objective vectors")
    n, m = pts.shape
    if n == 0:
        return np.zeros(0, dtype=bool)
    if m == 2:
        return _mask_2d(pts)
    mask = np.ones(n, dtype=bool)
    for i in range(n):
        if not mask[i]:
            continue
        le = np.all(pts <= pts[i], axis=1)
        lt = np.any(pts < pts[i], axis=1)
        if np.any(le & lt):
            mask[i] = False
    return mask


def _mask_2d(pts: np.ndarray) -> np.ndarray:
    n = len(pts)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    mask = np.zeros(n, dtype=bool)
    best_f2 = np.inf
    i = 0
    while i < n:
        # group of equal f1; only its minimal-f2 members can survive
        j = i
        f1 = pts[order[i], 0]
        group_min = np.inf
        while j < n and pts[order[j], 0] == f1:
            group_min = min(group_min, pts[order[j], 1])
            j += 1
        if group_min < best_f2:
            # group_min == best_f2 would mean domination by an earlier
            # point with strictly smaller f1
            for k in range(i, j):
                if pts[order[k], 1] == group_min:
                    mask[order[k]] = True
            best_f2 = group_min
        i = j
    return mask


def nondominated_points(points: np.ndarray) -> np.ndarray:
    """Unique non-dominated objective vectors, sorted lexicographically."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return pts.reshape(0, pts.shape[1] if pts.ndim == 2 else 0)
    keep = np.unique(pts[nondominated_mask(pts)], axis=0)
    return keep
