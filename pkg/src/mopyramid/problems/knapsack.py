"""Bi-objective 0/1 knapsack with greedy ratio repair.

Each item carries a weight and a profit per knapsack; a selection is
feasible when no knapsack's capacity is exceeded. Infeasible selections
are repaired at evaluation time by dropping selected items in order of
ascending aggregate profit/weight ratio until feasible; the stored
genotype itself is never rewritten (repair is Baldwinian).

Instance files: header `items knapsacks`, one line of capacities, then
one `w1 p1 w2 p2 ...` line per item.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["KnapsackInstance", "KnapsackProblem", "generate_knapsack_instance",
           "read_knapsack_instance", "repair_knapsack", "write_knapsack_instance"]


@dataclass(frozen=True)
class KnapsackInstance:
    capacities: np.ndarray  # (m,)
    weights: np.ndarray  # (l, m), all > 0
    profits: np.ndarray  # (l, m), all > 0

    def __post_init__(self):
        if self.weights.shape != self.profits.shape:
            raise ValueError("weights and profits must have identical shape")
        if self.weights.shape[1] != len(self.capacities):
            raise ValueError("capacity count must match knapsack dimension")
        if np.any(self.weights <= 0) or np.any(self.profits <= 0) or np.any(self.capacities <= 0):
            raise ValueError("weights, profits and capacities must be positive")

    @property
    def num_items(self) -> int:
        return self.weights.shape[0]

    @property
    def num_knapsacks(self) -> int:
        return self.weights.shape[1]

    def removal_order(self) -> np.ndarray:
        """Item indexes sorted by ascending sum-profit/sum-weight ratio.

        Ties keep the smaller item index first, which makes repair
        deterministic.
        """
        ratio = self.profits.sum(axis=1) / self.weights.sum(axis=1)
        return np.argsort(ratio, kind="stable")


def repair_knapsack(instance: KnapsackInstance, bits: np.ndarray) -> np.ndarray:
    """Drop lowest-ratio selected items one by one until all capacities hold.

    Returns a new genotype whose selection is a subset of the input's;
    feasible inputs come back unchanged.
    """
    load = instance.weights[bits == 1].sum(axis=0)
    if np.all(load <= instance.capacities):
        return bits.copy()
    repaired = bits.copy()
    for item in instance.removal_order():
        if repaired[item] == 0:
            continue
        repaired[item] = 0
        load = load - instance.weights[item]
        if np.all(load <= instance.capacities):
            break
    return repaired


class KnapsackProblem:
    def __init__(self, instance: KnapsackInstance, name: str | None = None):
        self.instance = instance
        self.length = instance.num_items
        self.num_objectives = instance.num_knapsacks
        self.name = name or f"knapsack-{self.length}"

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        repaired = repair_knapsack(self.instance, bits)
        profit = self.instance.profits[repaired == 1].sum(axis=0)
        return -profit.astype(float)


def generate_knapsack_instance(
    num_items: int,
    num_knapsacks: int,
    seed: int,
    value_range: tuple[int, int] = (1, 10),
    capacity_fraction: float = 0.5,
) -> KnapsackInstance:
    """Uniform integer weights/profits; capacities a fraction of total weight."""
    rng = np.random.default_rng(seed)
    lo, hi = value_range
    weights = rng.integers(lo, hi + 1, size=(num_items, num_knapsacks)).astype(float)
    profits = rng.integers(lo, hi + 1, size=(num_items, num_knapsacks)).astype(float)
    capacities = np.maximum(weights.sum(axis=0) * capacity_fraction, weights.max(axis=0))
    return KnapsackInstance(capacities=capacities, weights=weights, profits=profits)


def write_knapsack_instance(instance: KnapsackInstance, path: str | Path) -> None:
    lines = [f"{instance.num_items} {instance.num_knapsacks}"]
    lines.append(" ".join(repr(float(c)) for c in instance.capacities))
    for i in range(instance.num_items):
        pairs = []
        for k in range(instance.num_knapsacks):
            pairs.append(f"{float(instance.weights[i, k])!r} {float(instance.profits[i, k])!r}")
        lines.append(" ".join(pairs))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_knapsack_instance(path: str | Path) -> KnapsackInstance:
    rows = [r for r in Path(path).read_text(encoding="utf-8").split("\n") if r.strip()]
    num_items, num_knapsacks = (int(tok) for tok in rows[0].split())
    capacities = np.array([float(tok) for tok in rows[1].split()])
    if len(capacities) != num_knapsacks or len(rows) - 2 != num_items:
        raise ValueError("instance file dimensions are inconsistent with its header")
    weights = np.zeros((num_items, num_knapsacks))
    profits = np.zeros((num_items, num_knapsacks))
    for i, row in enumerate(rows[2:]):
        vals = [float(tok) for tok in row.split()]
        if len(vals) != 2 * num_knapsacks:
            raise ValueError(f"item line {i} must hold weight/profit per knapsack")
        weights[i] = vals[0::2]
        profits[i] = vals[1::2]
    return KnapsackInstance(capacities=capacities, weights=weights, profits=profits)
