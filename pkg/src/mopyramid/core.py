"""Shared optimization primitives: genotypes, objectives, dominance, scalarization.

Every optimizer in this package works on fixed-length binary genotypes
(numpy uint8 arrays) and objective vectors stored in minimization
convention. Problems that maximize negate their objectives at the
boundary so dominance, archives and distance metrics stay single-signed.
"""

from __future__ import annotations

from typing import Callable, Protocol

import numpy as np

__all__ = [
    "BudgetExhausted",
    "EvaluationGateway",
    "ObjectiveNormalizer",
    "Problem",
    "dominates",
    "genotype_key",
    "make_weight_vector",
    "random_genotype",
    "scalarize",
]


class BudgetExhausted(RuntimeError):
    """Raised when an evaluation is requested beyond the configured budget."""


class Problem(Protocol):
    """Minimal contract every objective function implementation satisfies."""

    name: str
    length: int
    num_objectives: int

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        """Return the objective vector (minimization convention) for `bits`."""
        ...


def random_genotype(rng: np.random.Generator, length: int) -> np.ndarray:
    return rng.integers(0, 2, size=length, dtype=np.uint8)


def genotype_key(bits: np.ndarray) -> bytes:
    """Hashable identity of a genotype; genotypes are equal iff keys are."""
    return bits.tobytes()


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """Pareto dominance under minimization: a <= b everywhere and a != b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective length mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def make_weight_vector(values) -> np.ndarray:
    """Validate and return a normalized weight vector.

    Components must lie in [0, 1] and sum to 1 within 1e-9.
    """
    w = np.asarray(values, dtype=float)
    if w.ndim != 1 or w.size < 2:
        raise ValueError("weight vector needs at least two components")
    if np.any(w < 0.0) or np.any(w > 1.0):
        raise ValueError(f"weight components must be in [0, 1]: {w}")
    if abs(float(w.sum()) - 1.0) > 1e-9:
        raise ValueError(f"weight components must sum to 1: {w}")
    return w


class ObjectiveNormalizer:
    """Running per-objective min/max bounds mapping observations into [0, 1].

    Bounds grow monotonically with every observed vector; an objective
    whose bounds coincide normalizes to 0.
    """

    def __init__(self, num_objectives: int):
        self.num_objectives = num_objectives
        self._lo: np.ndarray | None = None
        self._hi: np.ndarray | None = None

    @property
    def has_observations(self) -> bool:
        return self._lo is not None

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        if self._lo is None or self._hi is None:
            raise ValueError("normalizer has not observed any vector yet")
        return self._lo.copy(), self._hi.copy()

    def observe(self, values: np.ndarray) -> None:
        if self._lo is None:
            self._lo = np.array(values, dtype=float)
            self._hi = np.array(values, dtype=float)
        else:
            np.minimum(self._lo, values, out=self._lo)
            np.maximum(self._hi, values, out=self._hi)

    def normalize(self, values: np.ndarray) -> np.ndarray:
        if self._lo is None or self._hi is None:
            raise ValueError("normalizer has not observed any vector yet")
        span = self._hi - self._lo
        out = np.zeros(self.num_objectives, dtype=float)
        ok = span > 0.0
        out[ok] = (values[ok] - self._lo[ok]) / span[ok]
        return out


def scalarize(values: np.ndarray, weights: np.ndarray, normalizer: ObjectiveNormalizer) -> float:
    """Weighted sum of min-max-normalized objectives, to be minimized."""
    if len(weights) != len(values):
        raise ValueError("weight/objective length mismatch")
    lo, hi = normalizer._lo, normalizer._hi
    if lo is None or hi is None:
        raise ValueError("normalizer has not observed any vector yet")
    if len(values) == 2:  # dominant call path in the optimizers
        s0 = hi[0] - lo[0]
        s1 = hi[1] - lo[1]
        n0 = (values[0] - lo[0]) / s0 if s0 > 0.0 else 0.0
        n1 = (values[1] - lo[1]) / s1 if s1 > 0.0 else 0.0
        return float(weights[0] * n0 + weights[1] * n1)
    return float(np.dot(weights, normalizer.normalize(values)))


class EvaluationGateway:
    """Budgeted, cached access to a problem's objective function.

    Counts one fitness function evaluation (FFE) per distinct genotype;
    repeated evaluations are served from the cache for free. Once `ffe`
    reaches `budget`, any further cache-missing evaluation raises
    BudgetExhausted; optimizers catch it and terminate gracefully. Each
    new result is fed to the gateway's normalizer and to any registered
    observers, in evaluation order.

    A gateway belongs to a single run and is not shared across threads.
    """

    def __init__(self, problem: Problem, budget: int, cache_limit: int | None = None):
        if budget < 1:
            raise ValueError("budget must be positive")
        if cache_limit is not None and cache_limit < 1:
            raise ValueError("cache_limit must be positive when set")
        self.problem = problem
        self.budget = int(budget)
        self.cache_limit = cache_limit
        self.ffe = 0
        self.normalizer = ObjectiveNormalizer(problem.num_objectives)
        self._cache: dict[bytes, np.ndarray] = {}
        self._observers: list[Callable[[np.ndarray, np.ndarray], None]] = []

    def add_observer(self, fn: Callable[[np.ndarray, np.ndarray], None]) -> None:
        """Register fn(bits, objectives), called once per cache-missing evaluation."""
        self._observers.append(fn)

    @property
    def remaining(self) -> int:
        return self.budget - self.ffe

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        key = bits.tobytes()
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if len(bits) != self.problem.length:
            raise ValueError(
                f"genotype length {len(bits)} does not match problem length {self.problem.length}"
            )
        if self.ffe >= self.budget:
            raise BudgetExhausted(f"evaluation budget of {self.budget} FFE exhausted")
        values = np.asarray(self.problem.evaluate(bits), dtype=float)
        self.ffe += 1
        if self.cache_limit is not None and len(self._cache) >= self.cache_limit:
            self._cache.pop(next(iter(self._cache)))
        self._cache[key] = values
        self.normalizer.observe(values)
        for fn in self._observers:
            fn(bits, values)
        return values

    def evaluate_many(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
        """Evaluate rows of X until the budget runs out.

        Returns (values, evaluated_rows, exhausted): on exhaustion the
        arrays cover the prefix evaluated before the budget hit. Same
        caching, counting and observer semantics as `evaluate`.
        """
        cache = self._cache
        out = np.empty((len(X), self.problem.num_objectives))
        for i in range(len(X)):
            row = X[i]
            values = cache.get(row.tobytes())
            if values is None:
                try:
                    values = self.evaluate(row)
                except BudgetExhausted:
                    return out[:i], X[:i], True
            out[i] = values
        return out, X, False
