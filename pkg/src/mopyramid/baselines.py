"""Reference optimizers: NSGA-II and a Tchebycheff decomposition EA (MOEA/D).

Both run against the same evaluation gateway as the pyramid optimizer, so
budgets, caching and FFE accounting are identical across methods.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BudgetExhausted, EvaluationGateway
from .pareto import nondominated_mask

__all__ = [
    "MoeadConfig",
    "Nsga2Config",
    "crowding_distances",
    "nondominated_ranks",
    "run_moead",
    "run_nsga2",
]


@dataclass(frozen=True)
class Nsga2Config:
    population_size: int = 400
    crossover_probability: float = 0.9
    mutation_probability: float | None = None  # defaults to 1/genotype-length
    tournament_size: int = 2

    def __post_init__(self):
        if self.population_size < 4 or self.population_size % 2:
            raise ValueError("population size must be even and at least 4")
        if self.tournament_size < 2:
            raise ValueError("tournament size must be at least 2")


@dataclass(frozen=True)
class MoeadConfig:
    num_subproblems: int = 400
    neighborhood_size: int = 20
    mutation_probability: float | None = None  # defaults to 1/genotype-length

    def __post_init__(self):
        if self.num_subproblems < 2:
            raise ValueError("need at least two subproblems")
        if not 2 <= self.neighborhood_size <= self.num_subproblems:
            raise ValueError("neighborhood size must be within 2..num_subproblems")


def nondominated_ranks(F: np.ndarray) -> np.ndarray:
    """Front index (0 = non-dominated) per row.

    Two objectives use an O(n log n) sweep; more use dominance-matrix
    front peeling.
    """
    if F.shape[1] == 2:
        return _ranks_2d(F)
    n = len(F)
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    count = dom.sum(axis=0)
    ranks = np.full(n, -1, dtype=np.int64)
    rank = 0
    current = np.nonzero(count == 0)[0]
    while len(current):
        ranks[current] = rank
        count = count - dom[current].sum(axis=0)
        current = np.nonzero((count == 0) & (ranks < 0))[0]
        rank += 1
    return ranks


def _ranks_2d(F: np.ndarray) -> np.ndarray:
    """Sweep points in (f1, f2) order; a point's rank is one above the
    highest-ranked point dominating it. `floor[r]` tracks the lowest f2
    seen in rank r across fully processed f1 groups (non-decreasing in r),
    so a bisect gives the dominating-rank count; chains inside an equal-f1
    group are handled by walking its distinct f2 values in order."""
    from bisect import bisect_right

    n = len(F)
    order = np.lexsort((F[:, 1], F[:, 0]))
    f1 = F[order, 0]
    f2 = F[order, 1]
    ranks = np.empty(n, dtype=np.int64)
    floor: list[float] = []
    i = 0
    while i < n:
        j = i
        while j < n and f1[j] == f1[i]:
            j += 1
        prev_rank = -1
        k = i
        while k < j:
            e = k
            while e < j and f2[e] == f2[k]:
                e += 1
            rank = max(bisect_right(floor, f2[k]), prev_rank + 1)
            ranks[order[k:e]] = rank
            if rank == len(floor):
                floor.append(float(f2[k]))
            elif f2[k] < floor[rank]:
                floor[rank] = float(f2[k])
            prev_rank = rank
            k = e
        i = j
    return ranks


def crowding_distances(F: np.ndarray) -> np.ndarray:
    """Crowding distance within one front; boundary points get infinity."""
    k, m = F.shape
    if k <= 2:
        return np.full(k, np.inf)
    dist = np.zeros(k)
    for obj in range(m):
        order = np.argsort(F[:, obj], kind="stable")
        col = F[order, obj]
        dist[order[0]] = dist[order[-1]] = np.inf
        span = col[-1] - col[0]
        if span > 0:
            inner = (col[2:] - col[:-2]) / span
            dist[order[1:-1]] += inner
    return dist


def _rank_and_crowd(F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ranks = nondominated_ranks(F)
    crowd = np.zeros(len(F))
    for r in range(ranks.max() + 1):
        idx = np.nonzero(ranks == r)[0]
        crowd[idx] = crowding_distances(F[idx])
    return ranks, crowd


def _evaluate_rows(gateway: EvaluationGateway, X: np.ndarray):
    return gateway.evaluate_many(X)


def _unique_front(X: np.ndarray, F: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    """Genotype-deduplicated non-dominated members of a population."""
    mask = nondominated_mask(F)
    seen: set[bytes] = set()
    result = []
    for i in np.nonzero(mask)[0]:
        key = X[i].tobytes()
        if key not in seen:
            seen.add(key)
            result.append((X[i].copy(), F[i].copy()))
    return result


def run_nsga2(
    problem,
    config: Nsga2Config,
    budget: int,
    seed: int,
    gateway: EvaluationGateway | None = None,
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Standard NSGA-II with uniform crossover and per-bit flip mutation.

    Mating tournaments reuse the rank and crowding values assigned while
    the population was selected from the previous parent+offspring pool.
    Runs whole generations until the FFE budget is exhausted and returns
    the non-dominated set of the final population.
    """
    rng = np.random.default_rng(seed)
    gateway = gateway or EvaluationGateway(problem, budget)
    n, l = config.population_size, problem.length
    pm = config.mutation_probability if config.mutation_probability is not None else 1.0 / l

    X = rng.integers(0, 2, size=(n, l), dtype=np.uint8)
    F, X, exhausted = _evaluate_rows(gateway, X)
    if exhausted:
        return _unique_front(X, F)
    ranks, crowd = _rank_and_crowd(F)

    while True:
        # quality[i] = position of i when sorted by (rank asc, crowding desc)
        order = np.lexsort((-crowd, ranks))
        quality = np.empty(n, dtype=np.int64)
        quality[order] = np.arange(n)

        draws = rng.integers(n, size=(n, config.tournament_size))
        parents = draws[np.arange(n), np.argmin(quality[draws], axis=1)]

        P1 = X[parents[0::2]]
        P2 = X[parents[1::2]]
        do_cx = rng.random(len(P1)) < config.crossover_probability
        swap = (rng.random(P1.shape) < 0.5) & do_cx[:, None]
        C1 = np.where(swap, P2, P1)
        C2 = np.where(swap, P1, P2)
        children = np.vstack([C1, C2]).astype(np.uint8)
        children ^= (rng.random(children.shape) < pm).astype(np.uint8)

        CF, children, exhausted = _evaluate_rows(gateway, children)
        pool_X = np.vstack([X, children])
        pool_F = np.vstack([F, CF])
        X, F, ranks, crowd = _environmental_selection(pool_X, pool_F, n)
        if exhausted:
            return _unique_front(X, F)


def _environmental_selection(X: np.ndarray, F: np.ndarray, n: int):
    """Keep the n best by front rank, breaking the last front by crowding.

    Also returns the selected members' pool rank and crowding values,
    which drive the next generation's tournaments.
    """
    ranks = nondominated_ranks(F)
    crowd = np.zeros(len(F))
    if len(X) <= n:
        for r in range(ranks.max() + 1):
            idx = np.nonzero(ranks == r)[0]
            crowd[idx] = crowding_distances(F[idx])
        return X, F, ranks, crowd
    selected: list[int] = []
    for r in range(ranks.max() + 1):
        idx = np.nonzero(ranks == r)[0]
        front_crowd = crowding_distances(F[idx])
        crowd[idx] = front_crowd
        if len(selected) + len(idx) <= n:
            selected.extend(idx.tolist())
            if len(selected) == n:
                break
        else:
            order = np.argsort(-front_crowd, kind="stable")
            selected.extend(idx[order[: n - len(selected)]].tolist())
            break
    picked = np.array(selected, dtype=np.int64)
    return X[picked].copy(), F[picked].copy(), ranks[picked], crowd[picked]


def tchebycheff(values: np.ndarray, weights: np.ndarray, ideal: np.ndarray) -> float:
    """Weighted Tchebycheff aggregation toward the ideal point."""
    return float(np.max(weights * np.abs(values - ideal)))


def run_moead(
    problem,
    config: MoeadConfig,
    budget: int,
    seed: int,
    gateway: EvaluationGateway | None = None,
    on_generation=None,
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Decomposition EA: one subproblem per weight vector, mating within
    the neighborhood of nearest weight vectors, one-point crossover and
    per-bit flip mutation; each subproblem keeps the best aggregation
    value seen for its weights. Returns the non-dominated final set.
    """
    rng = np.random.default_rng(seed)
    gateway = gateway or EvaluationGateway(problem, budget)
    n, l = config.num_subproblems, problem.length
    m = problem.num_objectives
    pm = config.mutation_probability if config.mutation_probability is not None else 1.0 / l
    if m != 2:
        raise ValueError("weight grid construction here is two-objective only")

    first = np.linspace(0.0, 1.0, n)
    lam = np.column_stack([first, 1.0 - first])
    d2 = ((lam[:, None, :] - lam[None, :, :]) ** 2).sum(axis=2)
    neighbors = np.argsort(d2, axis=1, kind="stable")[:, : config.neighborhood_size]

    X = rng.integers(0, 2, size=(n, l), dtype=np.uint8)
    F, X, exhausted = _evaluate_rows(gateway, X)
    if exhausted:
        return _unique_front(X, F)
    ideal = F.min(axis=0)

    generation = 0
    while not exhausted:
        for j in range(n):
            pick = rng.choice(config.neighborhood_size, size=2, replace=False)
            k1, k2 = neighbors[j][pick[0]], neighbors[j][pick[1]]
            point = int(rng.integers(1, l))
            child = np.concatenate([X[k1][:point], X[k2][point:]])
            child ^= (rng.random(l) < pm).astype(np.uint8)
            try:
                cf = gateway.evaluate(child)
            except BudgetExhausted:
                exhausted = True
                break
            np.minimum(ideal, cf, out=ideal)
            B = neighbors[j]
            g_child = (lam[B] * np.abs(cf - ideal)).max(axis=1)
            g_incumbent = (lam[B] * np.abs(F[B] - ideal)).max(axis=1)
            replace = B[g_child <= g_incumbent]
            if len(replace):
                X[replace] = child
                F[replace] = cf
        generation += 1
        if on_generation is not None:
            on_generation(generation, X.copy(), F.copy(), ideal.copy())
    return _unique_front(X, F)
