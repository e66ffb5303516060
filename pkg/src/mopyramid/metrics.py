"""Front quality measurement: IGD, GD and pseudo-optimal reference fronts."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .pareto import nondominated_mask, nondominated_points

__all__ = ["Front", "gd", "igd", "merge_pseudo_optimal", "read_front", "write_front"]


class Front:
    """An immutable set of mutually non-dominated objective vectors.

    Duplicate vectors collapse to one point; construction rejects
    dominated points unless `Front.nondominated` is used to filter them
    out instead. Minimization convention throughout.
    """

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("a front needs at least one objective vector")
        unique = np.unique(pts, axis=0)
        if not nondominated_mask(unique).all():
            raise ValueError("front contains dominated points")
        self.points = unique
        self.points.setflags(write=False)

    @classmethod
    def nondominated(cls, points) -> "Front":
        """Front from arbitrary points, silently dropping dominated ones."""
        return cls(nondominated_points(np.asarray(points, dtype=float)))

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, Front) and np.array_equal(self.points, other.points)

    def __repr__(self) -> str:
        return f"Front({len(self.points)} points, m={self.points.shape[1]})"


def _as_points(front) -> np.ndarray:
    pts = front.points if isinstance(front, Front) else np.asarray(front, dtype=float)
    if len(pts) == 0:
        raise ValueError("empty front")
    return pts


def _mean_min_distance(sources: np.ndarray, targets: np.ndarray,
                       scale: np.ndarray | None) -> float:
    if scale is not None:
        sources = sources / scale
        targets = targets / scale
    diff = sources[:, None, :] - targets[None, :, :]
    dists = np.sqrt((diff * diff).sum(axis=2))
    return float(dists.min(axis=1).mean())


def _reference_scale(reference: np.ndarray) -> np.ndarray:
    span = reference.max(axis=0) - reference.min(axis=0)
    span[span == 0.0] = 1.0
    return span


def igd(solution, reference, normalized: bool = False) -> float:
    """Mean distance from each reference point to its nearest solution point.

    Zero iff the solution covers the whole reference front; extra solution
    points never hurt. Distances are raw Euclidean by default; with
    `normalized` each objective is divided by the reference front's span,
    for aggregation across differently scaled instances.
    """
    ref = _as_points(reference)
    scale = _reference_scale(ref) if normalized else None
    return _mean_min_distance(ref, _as_points(solution), scale)


def gd(solution, reference, normalized: bool = False) -> float:
    """Mean distance from each solution point to its nearest reference point."""
    ref = _as_points(reference)
    scale = _reference_scale(ref) if normalized else None
    return _mean_min_distance(_as_points(solution), ref, scale)


def merge_pseudo_optimal(fronts) -> Front:
    """Non-dominated merge of many fronts, the reference when no true front is known."""
    stacks = [_as_points(f) for f in fronts]
    if not stacks:
        raise ValueError("need at least one front to merge")
    return Front.nondominated(np.vstack(stacks))


def write_front(front, path: str | Path) -> None:
    """One objective vector per line, space-separated, sorted for reproducibility."""
    pts = _as_points(front)
    lines = [" ".join(repr(float(v)) for v in row) for row in pts]
    Path(path).write_text("\n".join(sorted(lines)) + "\n", encoding="utf-8")


def read_front(path: str | Path, raw: bool = False) -> Front:
    """Parse a front file; dominated lines are an error unless raw=True."""
    rows = [r for r in Path(path).read_text(encoding="utf-8").split("\n") if r.strip()]
    pts = np.array([[float(tok) for tok in r.split()] for r in rows], dtype=float)
    if raw:
        return Front.nondominated(pts)
    if not nondominated_mask(pts).all():
        raise ValueError(f"front file {path} contains dominated lines (use raw=True to filter)")
    return Front(pts)
