"""Bi-objective weighted MAXCUT: one graph, two independent edge-weight sets.

A genotype assigns each vertex to one of two sides; each objective is the
total weight of cut edges under its weight set (maximized, negated
internally). Instance files are plain text: a `vertices edges` header,
then one `i j w1 w2` line per edge with 0-based vertex ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["MaxcutInstance", "MaxcutProblem", "generate_maxcut_instance",
           "read_maxcut_instance", "write_maxcut_instance"]


@dataclass(frozen=True)
class MaxcutInstance:
    num_vertices: int
    edge_i: np.ndarray
    edge_j: np.ndarray
    weights_1: np.ndarray
    weights_2: np.ndarray

    def __post_init__(self):
        if np.any(self.edge_i == self.edge_j):
            raise ValueError("self-loops are not allowed")
        if not (len(self.edge_i) == len(self.edge_j) == len(self.weights_1) == len(self.weights_2)):
            raise ValueError("edge arrays must have equal length")
        if np.any(self.edge_i < 0) or np.any(self.edge_j >= self.num_vertices):
            raise ValueError("edge endpoints out of range")


class MaxcutProblem:
    num_objectives = 2

    def __init__(self, instance: MaxcutInstance, name: str | None = None):
        self.instance = instance
        self.length = instance.num_vertices
        self.name = name or f"maxcut-{self.length}"

    def evaluate(self, bits: np.ndarray) -> np.ndarray:
        cut = bits[self.instance.edge_i] != bits[self.instance.edge_j]
        return np.array(
            [
                -float(self.instance.weights_1[cut].sum()),
                -float(self.instance.weights_2[cut].sum()),
            ]
        )


def generate_maxcut_instance(
    num_vertices: int,
    seed: int,
    density: float = 0.5,
    weight_range: tuple[int, int] = (1, 10),
) -> MaxcutInstance:
    """Random graph of the given edge density with two uniform integer weight sets."""
    if num_vertices < 2:
        raise ValueError("need at least two vertices")
    if not 0.0 < density <= 1.0:
        raise ValueError("density must be in (0, 1]")
    rng = np.random.default_rng(seed)
    ii, jj = np.triu_indices(num_vertices, k=1)
    keep = rng.random(len(ii)) < density
    if not keep.any():
        keep[rng.integers(len(keep))] = True
    lo, hi = weight_range
    m = int(keep.sum())
    return MaxcutInstance(
        num_vertices=num_vertices,
        edge_i=ii[keep].astype(np.int64),
        edge_j=jj[keep].astype(np.int64),
        weights_1=rng.integers(lo, hi + 1, size=m).astype(float),
        weights_2=rng.integers(lo, hi + 1, size=m).astype(float),
    )


def write_maxcut_instance(instance: MaxcutInstance, path: str | Path) -> None:
    lines = [f"{instance.num_vertices} {len(instance.edge_i)}"]
    for i, j, w1, w2 in zip(
        instance.edge_i, instance.edge_j, instance.weights_1, instance.weights_2
    ):
        lines.append(f"{int(i)} {int(j)} {float(w1)!r} {float(w2)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_maxcut_instance(path: str | Path) -> MaxcutInstance:
    rows = Path(path).read_text(encoding="utf-8").split("\n")
    rows = [r for r in rows if r.strip()]
    num_vertices, num_edges = (int(tok) for tok in rows[0].split())
    if len(rows) - 1 != num_edges:
        raise ValueError(f"expected {num_edges} edge lines, found {len(rows) - 1}")
    data = np.array([[float(tok) for tok in r.split()] for r in rows[1:]], dtype=float)
    return MaxcutInstance(
        num_vertices=num_vertices,
        edge_i=data[:, 0].astype(np.int64),
        edge_j=data[:, 1].astype(np.int64),
        weights_1=data[:, 2],
        weights_2=data[:, 3],
    )
