"""Shared oracles and helpers kept independent of the package internals."""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

# worked-example population: five individuals, four genes
TABLE_POPULATION = np.array(
    [
        [0, 1, 0, 1],
        [0, 1, 0, 1],
        [1, 1, 1, 1],
        [1, 1, 0, 1],
        [0, 0, 1, 1],
    ],
    dtype=np.uint8,
)


def bits(text: str) -> np.ndarray:
    return np.array([int(c) for c in text], dtype=np.uint8)


def bits_str(arr: np.ndarray) -> str:
    return "".join(str(int(b)) for b in arr)


def oracle_mutual_information(population: np.ndarray, i: int, j: int) -> float:
    """Direct-probability mutual information between two gene columns."""
    n = len(population)
    joint = Counter(zip(population[:, i].tolist(), population[:, j].tolist()))
    pi = Counter(population[:, i].tolist())
    pj = Counter(population[:, j].tolist())
    total = 0.0
    for (a, b), c in joint.items():
        p = c / n
        pa, pb = pi[a] / n, pj[b] / n
        if p > 0 and pa > 0 and pb > 0:
            total += p * math.log(p / (pa * pb))
    return total


def oracle_joint_entropy(population: np.ndarray, i: int, j: int) -> float:
    n = len(population)
    joint = Counter(zip(population[:, i].tolist(), population[:, j].tolist()))
    return -sum((c / n) * math.log(c / n) for c in joint.values() if c > 0)


def oracle_gene_distance(population: np.ndarray, i: int, j: int) -> float:
    h = oracle_joint_entropy(population, i, j)
    if h == 0.0:
        return 0.0
    return (h - oracle_mutual_information(population, i, j)) / h


def oracle_linkage_merges(dist: np.ndarray) -> list[tuple[int, int, float]]:
    """Naive agglomeration: scan all active pairs, strict-< pick, same
    size-weighted reduction arithmetic as the fast implementation."""
    n = len(dist)
    pair_dist = {(i, j): float(dist[i, j]) for i in range(n) for j in range(i + 1, n)}
    sizes = {i: 1.0 for i in range(n)}
    active = list(range(n))
    merges = []
    next_index = n
    while len(active) > 1:
        best = None
        for ai in range(len(active)):
            for bi in range(ai + 1, len(active)):
                i, j = active[ai], active[bi]
                d = pair_dist[(i, j)]
                if best is None or d < best[2]:
                    best = (i, j, d)
        i, j, d = best
        merges.append((i, j, d))
        sa, sb = sizes[i], sizes[j]
        for k in active:
            if k in (i, j):
                continue
            dka = pair_dist[(min(k, i), max(k, i))]
            dkb = pair_dist[(min(k, j), max(k, j))]
            pair_dist[(k, next_index)] = (sa * dka + sb * dkb) / (sa + sb)
        sizes[next_index] = sa + sb
        active = [k for k in active if k not in (i, j)] + [next_index]
        next_index += 1
    return merges


def oracle_nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Quadratic reference filter for non-dominated points (minimization)."""
    n = len(points)
    mask = np.ones(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if np.all(points[j] <= points[i]) and np.any(points[j] < points[i]):
                mask[i] = False
                break
    return mask


def oracle_dominance_ranks(points: np.ndarray) -> np.ndarray:
    """Front index per point by repeatedly stripping the non-dominated set."""
    n = len(points)
    ranks = np.full(n, -1, dtype=np.int64)
    remaining = np.arange(n)
    rank = 0
    while len(remaining):
        sub = points[remaining]
        mask = oracle_nondominated_mask(sub)
        ranks[remaining[mask]] = rank
        remaining = remaining[~mask]
        rank += 1
    return ranks


def oracle_fihc_outcomes(start: np.ndarray, score, orders=None) -> set[str]:
    """All reachable first-improvement outcomes of maximizing `score`,
    enumerating every visit order for every sweep (small lengths only)."""
    from itertools import permutations

    l = len(start)
    outcomes = set()
    stack = [tuple(start.tolist())]
    seen_states = set()
    while stack:
        state = stack.pop()
        if state in seen_states:
            continue
        seen_states.add(state)
        settled = True
        for order in permutations(range(l)):
            cur = list(state)
            changed = False
            for pos in order:
                cand = cur.copy()
                cand[pos] ^= 1
                if score(cand) > score(cur):
                    cur = cand
                    changed = True
            if changed:
                settled = False
                stack.append(tuple(cur))
        if settled:
            outcomes.add("".join(map(str, state)))
    return outcomes
