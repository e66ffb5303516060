"""Reference Pareto fronts: analytic where known, exhaustive enumeration otherwise."""

from __future__ import annotations

import numpy as np

from ..pareto import nondominated_points

__all__ = ["brute_force_front", "optimal_front"]

BRUTE_FORCE_MAX_LENGTH = 25
_ENUM_BATCH = 1 << 16


def optimal_front(problem) -> np.ndarray:
    """Known optimal front of a problem, minimization convention.

    Only the three analytic bitstring benchmarks provide one.
    """
    front_fn = getattr(problem, "optimal_front", None)
    if front_fn is None:
        raise ValueError(f"no analytic optimal front for problem {problem.name!r}")
    return np.unique(np.asarray(front_fn(), dtype=float), axis=0)


def brute_force_front(problem) -> np.ndarray:
    """Non-dominated filter over every genotype, for short genotypes only."""
    l = problem.length
    if l > BRUTE_FORCE_MAX_LENGTH:
        raise ValueError(
            f"brute force enumeration capped at {BRUTE_FORCE_MAX_LENGTH} bits, got {l}"
        )
    batch_eval = getattr(problem, "evaluate_many", None)
    fronts = []
    shifts = np.arange(l, dtype=np.uint64)
    for start in range(0, 1 << l, _ENUM_BATCH):
        stop = min(start + _ENUM_BATCH, 1 << l)
        codes = np.arange(start, stop, dtype=np.uint64)
        X = ((codes[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        if batch_eval is not None:
            F = np.asarray(batch_eval(X), dtype=float)
        else:
            F = np.array([problem.evaluate(row) for row in X], dtype=float)
        fronts.append(nondominated_points(F))
    return nondominated_points(np.vstack(fronts))
