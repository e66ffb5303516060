"""Classic bi-objective bitstring benchmarks with known optimal fronts.

All three problems maximize their textbook objectives; evaluate() negates
them into the package-wide minimization convention.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Lotz", "Trap5InvTrap5", "ZeromaxOnemax"]

TRAP_K = 5
# deceptive block score by unitation: all-ones optimal, gradient toward all-zeros
_DEC = np.array([4, 3, 2, 1, 0, 5], dtype=np.int64)
# inverse block score: all-zeros optimal, gradient toward all-ones
_DEC_INV = np.array([5, 0, 1, 2, 3, 4], dtype=np.int64)


class ZeromaxOnemax:
    """Count of ones vs count of zeros; every genotype is Pareto-optimal."""

    num_objectives = 2

    def __init__(self, length: int):
        if length < 1:
            raise ValueError("length must be positive")
        self.length = length
        self.name = f"zeromax-onemax-{length}"

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        u = int(bits.sum())
        return np.array([-float(u), -float(self.length - u)])

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        u = X.sum(axis=1).astype(float)
        return np.column_stack([-u, -(self.length - u)])

    def optimal_front(self) -> np.ndarray:
        u = np.arange(self.length + 1, dtype=float)
        return np.column_stack([-u, -(self.length - u)])


class Trap5InvTrap5:
    """Concatenated order-5 deceptive blocks scored two opposite ways.

    Objective 1 sums the deceptive trap over each block's unitation,
    objective 2 the inverse trap. Only block-pure genotypes are
    Pareto-optimal, giving a front of length/5 + 1 points.
    """

    num_objectives = 2

    def __init__(self, length: int):
        if length < TRAP_K or length % TRAP_K != 0:
            raise ValueError(f"length must be a positive multiple of {TRAP_K}")
        self.length = length
        self.num_blocks = length // TRAP_K
        self.name = f"trap5-invtrap5-{length}"

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        u = bits.reshape(self.num_blocks, TRAP_K).sum(axis=1)
        return np.array([-float(_DEC[u].sum()), -float(_DEC_INV[u].sum())])

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        u = X.reshape(len(X), self.num_blocks, TRAP_K).sum(axis=2)
        return np.column_stack(
            [-_DEC[u].sum(axis=1).astype(float), -_DEC_INV[u].sum(axis=1).astype(float)]
        )

    def optimal_front(self) -> np.ndarray:
        b = np.arange(self.num_blocks + 1, dtype=float)
        ones_blocks = TRAP_K * b + (TRAP_K - 1) * (self.num_blocks - b)
        zero_blocks = (TRAP_K - 1) * b + TRAP_K * (self.num_blocks - b)
        return np.column_stack([-ones_blocks, -zero_blocks])


class Lotz:
    """Leading-ones / trailing-zeros; the front is the chain 1^a 0^(l-a)."""

    num_objectives = 2

    def __init__(self, length: int):
        if length < 2:
            raise ValueError("length must be at least 2")
        self.length = length
        self.name = f"lotz-{length}"

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        ones = int(np.argmin(bits)) if bits.min() == 0 else self.length
        rev = bits[::-1]
        zeros = int(np.argmax(rev)) if rev.max() == 1 else self.length
        return np.array([-float(ones), -float(zeros)])

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        n, l = X.shape
        has_zero = X.min(axis=1) == 0
        ones = np.where(has_zero, np.argmin(X, axis=1), l).astype(float)
        rev = X[:, ::-1]
        has_one = rev.max(axis=1) == 1
        zeros = np.where(has_one, np.argmax(rev, axis=1), l).astype(float)
        return np.column_stack([-ones, -zeros])

    def optimal_front(self) -> np.ndarray:
        a = np.arange(self.length + 1, dtype=float)
        return np.column_stack([-a, -(self.length - a)])
