"""The pyramid optimizer: hill climbing, optimal mixing and the elitist archive.

Each iteration draws a weight vector that scalarizes the objectives for
the whole climb, hill-climbs a fresh random genotype, then mixes it with
every pyramid level in turn under that level's linkage tree. Whenever
mixing changes the genotype and the result is new to the pyramid, it is
inserted one level higher (levels are created on demand). Every
evaluation is offered to an elitist archive, which is the optimizer's
output.
"""

from __future__ import annotations

import numpy as np

from .core import BudgetExhausted, EvaluationGateway, random_genotype, scalarize
from .linkage import LinkageTree, distances_from_counts, linkage_tree_from_distances

__all__ = [
    "ElitistArchive",
    "MoP3",
    "Pyramid",
    "PyramidLevel",
    "fihc",
    "mix_cluster",
    "mo_p3_iteration",
    "optimal_mix",
    "random_weight_vector",
    "run_mo_p3",
    "smart_weight_vector",
]


class ElitistArchive:
    """Store of mutually non-dominated (genotype, objectives) pairs.

    A candidate is rejected when a member dominates it or when its
    objective vector is already present; accepting it evicts every member
    it dominates. With a positive per-objective grid resolution `epsilon`,
    at most one member may occupy a grid cell: a candidate landing in an
    occupied cell is rejected unless it dominates the occupant.
    """

    def __init__(self, num_objectives: int, epsilon=None, debug: bool = False):
        self.num_objectives = num_objectives
        self.debug = debug
        if epsilon is None:
            self.epsilon = None
        else:
            eps = np.broadcast_to(np.asarray(epsilon, dtype=float), (num_objectives,)).copy()
            if np.any(eps <= 0):
                raise ValueError("epsilon resolutions must be positive")
            self.epsilon = eps
        self._genotypes: list[np.ndarray] = []
        self._matrix = np.zeros((0, num_objectives))

    def __len__(self) -> int:
        return len(self._genotypes)

    @property
    def objectives(self) -> np.ndarray:
        return self._matrix.copy()

    @property
    def genotypes(self) -> list[np.ndarray]:
        return [g.copy() for g in self._genotypes]

    def items(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [(g.copy(), f.copy()) for g, f in zip(self._genotypes, self._matrix)]

    def _cells(self, F: np.ndarray) -> np.ndarray:
        return np.floor(F / self.epsilon)

    def try_add(self, bits: np.ndarray, values: np.ndarray) -> bool:
        """Offer a solution; returns True iff it was inserted."""
        v = np.asarray(values, dtype=float)
        F = self._matrix
        keep = None
        if len(F):
            le = F <= v
            if bool((le.all(axis=1) & (F < v).any(axis=1)).any()):
                return False
            if bool(le.all(axis=1).any()):  # an equal vector is already stored
                return False
            dominated = (v <= F).all(axis=1) & (v < F).any(axis=1)
            if self.epsilon is not None:
                same_cell = (self._cells(F) == np.floor(v / self.epsilon)).all(axis=1)
                if bool((same_cell & ~dominated).any()):
                    return False
            keep = ~dominated
        if keep is not None and not keep.all():
            self._genotypes = [g for g, k in zip(self._genotypes, keep) if k]
            F = F[keep]
        self._genotypes.append(bits.copy())
        self._matrix = np.vstack([F, v[None, :]]) if len(F) else v[None, :].copy()
        if self.debug:
            self._check_invariant()
        return True

    def covers(self, points: np.ndarray) -> bool:
        """True iff every row of `points` appears in the archive."""
        have = {(row + 0.0).tobytes() for row in self._matrix}
        return all((np.asarray(row, dtype=float) + 0.0).tobytes() in have for row in points)

    def _check_invariant(self) -> None:
        F = self._matrix
        for i in range(len(F)):
            le = (F <= F[i]).all(axis=1)
            lt = (F < F[i]).any(axis=1)
            if bool((le & lt).any()):
                raise AssertionError("archive holds a dominated member")


def random_weight_vector(rng: np.random.Generator) -> np.ndarray:
    """First weight uniform on [0, 1], second its complement."""
    w = float(rng.random())
    return np.array([w, 1.0 - w])


def smart_weight_vector(archive: ElitistArchive, rng: np.random.Generator) -> np.ndarray:
    """Weight vector biased toward sparsely covered stretches of the front.

    Each archive member maps to a weight point (its normalized objective
    pair rescaled to sum 1); after sorting by first weight, a size-two
    tournament between random adjacent gaps picks the longer one (ties
    favor the first draw) and the weight is sampled uniformly inside it.
    Falls back to a random weight vector while the archive holds fewer
    than two members.
    """
    F = archive.objectives
    if len(F) < 2:
        return random_weight_vector(rng)
    lo = F.min(axis=0)
    span = F.max(axis=0) - lo
    normed = np.zeros_like(F)
    ok = span > 0
    normed[:, ok] = (F[:, ok] - lo[ok]) / span[ok]
    sums = normed.sum(axis=1)
    first = np.full(len(F), 0.5)
    pos = sums > 0
    first[pos] = normed[pos, 0] / sums[pos]
    first.sort()

    intervals = len(first) - 1
    i1 = int(rng.integers(intervals))
    i2 = int(rng.integers(intervals))
    len1 = abs(first[i1 + 1] - first[i1]) * np.sqrt(2.0)
    len2 = abs(first[i2 + 1] - first[i2]) * np.sqrt(2.0)
    chosen = i1 if len1 >= len2 else i2
    w = float(rng.uniform(first[chosen], first[chosen + 1]))
    return np.array([w, 1.0 - w])


def fihc(bits: np.ndarray, weights: np.ndarray, gateway: EvaluationGateway,
         rng: np.random.Generator) -> np.ndarray:
    """First-improvement hill climber on the scalarized objective.

    Sweeps all gene positions in a freshly shuffled order, keeping a bit
    flip iff it strictly improves the scalarized value, until a full
    sweep changes nothing. The result admits no improving single flip.
    """
    current = bits.copy()
    values = gateway.evaluate(current)
    norm = gateway.normalizer
    while True:
        improved = False
        for pos in rng.permutation(len(current)):
            current[pos] ^= 1
            cand_values = gateway.evaluate(current)
            if scalarize(cand_values, weights, norm) < scalarize(values, weights, norm):
                values = cand_values
                improved = True
            else:
                current[pos] ^= 1
        if not improved:
            return current


def mix_cluster(
    source: np.ndarray,
    source_values: np.ndarray,
    cluster: np.ndarray,
    donor: np.ndarray,
    weights: np.ndarray,
    gateway: EvaluationGateway,
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Copy the donor's genes at `cluster` into the source, revert if worse.

    Equal scalarized value keeps the change. Identical genes at the
    cluster short-circuit without spending an evaluation. Returns the
    resulting genotype, its objectives, and whether the genotype changed.
    """
    if np.array_equal(source[cluster], donor[cluster]):
        return source, source_values, False
    candidate = source.copy()
    candidate[cluster] = donor[cluster]
    cand_values = gateway.evaluate(candidate)
    norm = gateway.normalizer
    if scalarize(cand_values, weights, norm) <= scalarize(source_values, weights, norm):
        return candidate, cand_values, True
    return source, source_values, False


class PyramidLevel:
    """Duplicate-free subpopulation with a lazily rebuilt linkage tree.

    Pairwise gene statistics are accumulated one outer product per added
    genotype; the counts are exact integers, so the rebuilt tree is
    identical to one built from the full membership in a single pass.
    """

    def __init__(self):
        self.members: list[np.ndarray] = []
        self._keys: set[bytes] = set()
        self._tree: LinkageTree | None = None
        self._stale = True
        self._c11: np.ndarray | None = None
        self._n1: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.members)

    def contains(self, key: bytes) -> bool:
        return key in self._keys

    def add(self, bits: np.ndarray) -> None:
        key = bits.tobytes()
        if key in self._keys:
            raise ValueError("duplicate genotype inserted into a pyramid level")
        self.members.append(bits.copy())
        self._keys.add(key)
        g = bits.astype(np.float64)
        if self._c11 is None:
            self._c11 = np.outer(g, g)
            self._n1 = g.copy()
        else:
            self._c11 += np.outer(g, g)
            self._n1 += g
        self._stale = True

    def tree(self) -> LinkageTree:
        if self._stale or self._tree is None:
            dist = distances_from_counts(self._c11, self._n1, len(self.members))
            self._tree = linkage_tree_from_distances(dist)
            self._stale = False
        return self._tree


class Pyramid:
    """Ordered levels, each genotype unique across the whole structure."""

    def __init__(self):
        self.levels: list[PyramidLevel] = [PyramidLevel()]
        self._keys: set[bytes] = set()

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def size(self) -> int:
        return len(self._keys)

    def contains(self, bits: np.ndarray) -> bool:
        return bits.tobytes() in self._keys

    def insert(self, level_index: int, bits: np.ndarray) -> None:
        """Add a genotype to a level, creating a new top level if needed."""
        key = bits.tobytes()
        if key in self._keys:
            raise ValueError("genotype already present in the pyramid")
        if level_index == len(self.levels):
            self.levels.append(PyramidLevel())
        elif not 0 <= level_index < len(self.levels):
            raise IndexError(f"level {level_index} cannot be created yet")
        self.levels[level_index].add(bits)
        self._keys.add(key)


def optimal_mix(
    source: np.ndarray,
    level: PyramidLevel,
    weights: np.ndarray,
    gateway: EvaluationGateway,
    rng: np.random.Generator,
    cluster_order: str = "random",
) -> np.ndarray:
    """Mix the source with one level under its linkage tree.

    Every tree cluster except the root is applied once with a random
    donor from the level; `cluster_order` is "random" (shuffled per call)
    or "creation" (tree build order). The scalarized value of the result
    never exceeds the input's.
    """
    if len(level) == 0:
        raise ValueError("cannot mix against an empty level")
    clusters = level.tree().crossover_clusters()
    if cluster_order == "random":
        order = rng.permutation(len(clusters))
    elif cluster_order == "creation":
        order = range(len(clusters))
    else:
        raise ValueError(f"unknown cluster order {cluster_order!r}")
    current = source.copy()
    values = gateway.evaluate(current)
    members = level.members
    for ci in order:
        donor = members[int(rng.integers(len(members)))]
        current, values, _ = mix_cluster(current, values, clusters[ci], donor,
                                         weights, gateway)
    return current


class MoP3(object):
    """One optimizer run: pyramid, archive, gateway and weight strategy."""

    def __init__(
        self,
        problem,
        budget: int,
        seed: int,
        weight_strategy: str = "random",
        epsilon=None,
        cluster_order: str = "random",
    ):
        if weight_strategy not in ("random", "smart"):
            raise ValueError(f"unknown weight strategy {weight_strategy!r}")
        if problem.num_objectives != 2:
            raise ValueError("the weight-vector strategies are two-objective only")
        self.problem = problem
        self.gateway = EvaluationGateway(problem, budget)
        self.rng = np.random.default_rng(seed)
        self.pyramid = Pyramid()
        self.archive = ElitistArchive(problem.num_objectives, epsilon=epsilon)
        self.weight_strategy = weight_strategy
        self.cluster_order = cluster_order
        self.ffe_at_last_archive_change = 0
        self.iterations = 0
        self.gateway.add_observer(self._offer)

    def _offer(self, bits: np.ndarray, values: np.ndarray) -> None:
        if self.archive.try_add(bits, values):
            self.ffe_at_last_archive_change = self.gateway.ffe

    def choose_weights(self) -> np.ndarray:
        if self.weight_strategy == "smart":
            return smart_weight_vector(self.archive, self.rng)
        return random_weight_vector(self.rng)

    def iteration(self) -> None:
        """One full climb; raises BudgetExhausted mid-way once FFE runs out."""
        weights = self.choose_weights()
        ind = random_genotype(self.rng, self.problem.length)
        ind = fihc(ind, weights, self.gateway, self.rng)
        if not self.pyramid.contains(ind):
            self.pyramid.insert(0, ind)
        idx = 0
        while idx < len(self.pyramid.levels):
            level = self.pyramid.levels[idx]
            if len(level):
                mixed = optimal_mix(ind, level, weights, self.gateway, self.rng,
                                    self.cluster_order)
                if not np.array_equal(mixed, ind):
                    ind = mixed
                    if not self.pyramid.contains(ind):
                        self.pyramid.insert(idx + 1, ind)
            idx += 1
        self.iterations += 1

    def run(self, target_front: np.ndarray | None = None) -> ElitistArchive:
        """Iterate until the budget is exhausted (or the target front is covered)."""
        try:
            while True:
                self.iteration()
                if target_front is not None and self.archive.covers(target_front):
                    break
        except BudgetExhausted:
            pass
        return self.archive


def mo_p3_iteration(state: MoP3) -> None:
    state.iteration()


def run_mo_p3(
    problem,
    budget: int,
    strategy: str = "random",
    seed: int = 0,
    epsilon=None,
    target_front: np.ndarray | None = None,
) -> ElitistArchive:
    """Run the optimizer to budget exhaustion; deterministic given the seed.

    Cached re-evaluations are free, so the budget counts distinct
    genotypes: keep it well below 2**length or the run cannot exhaust it.
    """
    state = MoP3(problem, budget, seed, weight_strategy=strategy, epsilon=epsilon)
    return state.run(target_front=target_front)
