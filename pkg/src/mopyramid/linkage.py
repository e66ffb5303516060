"""Gene dependency learning: mutual-information DSM and linkage trees.

A dependency structure matrix (DSM) holds pairwise mutual information
between gene positions, estimated by frequency over a population of
binary genotypes. Gene distances normalize the DSM by joint entropy and
feed an agglomerative clustering that yields a linkage tree: a hierarchy
of gene-index clusters later used as crossover masks.

Natural logarithm throughout. Zero-probability cells and zero joint
entropy follow the usual conventions (term contributes 0, distance 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LinkageTree",
    "build_dsm",
    "build_linkage_tree",
    "distance_matrix",
    "distances_from_counts",
    "format_linkage_tree",
    "linkage_tree_from_distances",
    "pair_counts",
    "pairwise_distance",
]


def _population_matrix(population) -> np.ndarray:
    X = np.asarray(population, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("population must be a non-empty list of equal-length genotypes")
    return X


def pair_counts(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Sufficient statistics for all pairwise distributions.

    Returns (c11, n1, size): co-occurrence counts of ones per gene pair,
    per-gene one counts, and the population size. Counts are exact
    integers in float64, so incremental accumulation (one outer product
    per added genotype) reproduces them bit-for-bit.
    """
    c11 = X.T @ X
    n1 = X.sum(axis=0)
    return c11, n1, X.shape[0]


def _mi_and_entropy(c11: np.ndarray, n1: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise mutual information and joint entropy from count statistics.

    Joint cell probabilities take at most size+1 distinct values, so the
    p*ln(p) and ln(p) factors come from small lookup tables indexed by
    integer counts. The four cell terms are summed with the transposed
    pair grouped first, which keeps both outputs exactly symmetric.
    """
    k11 = np.asarray(c11, dtype=np.int64)
    m1 = np.asarray(n1, dtype=np.int64)
    k10 = m1[:, None] - k11
    k01 = m1[None, :] - k11
    k00 = size - m1[:, None] - m1[None, :] + k11
    counts = np.arange(size + 1, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        p_tab = counts / size
        xlog_tab = p_tab * np.log(p_tab)
        log_tab = np.log(p_tab)
    xlog_tab[0] = 0.0  # zero-probability cells contribute nothing
    l1 = log_tab[m1]
    l0 = log_tab[size - m1]

    def cell(k: np.ndarray, la: np.ndarray, lb: np.ndarray):
        # p*ln(p/(pa*pb)) as p*ln(p) - p*(ln pa + ln pb), and p*ln(p)
        xlog = xlog_tab[k]
        with np.errstate(invalid="ignore"):
            term = xlog - p_tab[k] * (la[:, None] + lb[None, :])
        return np.where(k > 0, term, 0.0), xlog

    mi11, x11 = cell(k11, l1, l1)
    mi10, x10 = cell(k10, l1, l0)
    mi01, x01 = cell(k01, l0, l1)
    mi00, x00 = cell(k00, l0, l0)
    mi = (mi11 + mi00) + (mi10 + mi01)
    ent = -((x11 + x00) + (x10 + x01))
    # clamp float noise; mutual information is non-negative by definition
    np.maximum(mi, 0.0, out=mi)
    np.maximum(ent, 0.0, out=ent)
    return mi, ent


def build_dsm(population) -> np.ndarray:
    """Pairwise mutual information matrix over gene positions.

    Symmetric, non-negative off-diagonal entries; the diagonal is
    meaningless and set to 0.
    """
    X = _population_matrix(population)
    mi, _ = _mi_and_entropy(*pair_counts(X))
    np.fill_diagonal(mi, 0.0)
    return mi


def distances_from_counts(c11: np.ndarray, n1: np.ndarray, size: int) -> np.ndarray:
    """Gene distances from `pair_counts` statistics (see distance_matrix)."""
    mi, ent = _mi_and_entropy(c11, n1, size)
    dist = np.zeros_like(mi)
    pos = ent > 0.0
    dist[pos] = (ent[pos] - mi[pos]) / ent[pos]
    np.clip(dist, 0.0, 1.0, out=dist)
    np.fill_diagonal(dist, 0.0)
    return dist


def distance_matrix(population) -> np.ndarray:
    """Gene distance matrix: (H(i,j) - I(i,j)) / H(i,j), with 0 when H = 0.

    Values lie in [0, 1]; 0 means the pair is fully mutually informative
    (or constant), 1 means independent. MI and entropy come from a single
    frequency pass over the population.
    """
    X = _population_matrix(population)
    return distances_from_counts(*pair_counts(X))


def pairwise_distance(population, i: int, j: int) -> float:
    """Distance between genes i and j over the population."""
    return float(distance_matrix(population)[i, j])


@dataclass
class LinkageTree:
    """Hierarchy of gene-index clusters in creation order.

    The first `num_genes` clusters are the singleton leaves; every later
    cluster is the disjoint union of its two children. The root (all
    genes) is the last cluster; total cluster count is 2n - 1.
    """

    num_genes: int
    clusters: list[np.ndarray]
    children: dict[int, tuple[int, int]]
    merge_distances: list[float] = field(default_factory=list)

    @property
    def root(self) -> int:
        return len(self.clusters) - 1

    def merge_order(self) -> list[tuple[int, int]]:
        """Child-index pairs in the order internal clusters were created."""
        return [self.children[k] for k in range(self.num_genes, len(self.clusters))]

    def crossover_clusters(self) -> list[np.ndarray]:
        """All clusters except the root, in creation order."""
        return self.clusters[:-1]


def linkage_tree_from_distances(dist: np.ndarray) -> LinkageTree:
    """Agglomerate a distance matrix into a linkage tree.

    Repeatedly merges the pair of active clusters at minimal distance;
    the distance from any cluster to a merged pair is the size-weighted
    mean of the distances to its parts. Ties pick the lexicographically
    smallest pair of creation indexes, which makes trees deterministic.
    """
    n = len(dist)
    if n < 2:
        raise ValueError("need at least two genes to build a linkage tree")
    total = 2 * n - 1
    D = np.full((total, total), np.inf)
    D[:n, :n] = dist
    np.fill_diagonal(D, np.inf)

    active = np.zeros(total, dtype=bool)
    active[:n] = True
    sizes = np.zeros(total)
    sizes[:n] = 1.0

    # row_min[i] = min distance to any active j > i, row_arg its smallest j
    row_min = np.full(total, np.inf)
    row_arg = np.full(total, -1, dtype=np.int64)
    for i in range(n - 1):
        j = int(np.argmin(D[i, i + 1 : n])) + i + 1
        row_min[i] = D[i, j]
        row_arg[i] = j

    clusters: list[np.ndarray] = [np.array([i], dtype=np.int64) for i in range(n)]
    children: dict[int, tuple[int, int]] = {}
    merge_distances: list[float] = []

    for new in range(n, total):
        a = int(np.argmin(row_min))
        b = int(row_arg[a])
        d_ab = float(row_min[a])
        merged_col = (sizes[a] * D[:, a] + sizes[b] * D[:, b]) / (sizes[a] + sizes[b])

        active[a] = active[b] = False
        D[[a, b], :] = np.inf
        D[:, [a, b]] = np.inf
        row_min[a] = row_min[b] = np.inf
        row_arg[a] = row_arg[b] = -1

        # inactive rows already carry inf distances, so merged_col is inf
        # there and needs no masking
        D[new, :] = merged_col
        D[:, new] = merged_col
        D[new, new] = np.inf
        active[new] = True
        sizes[new] = sizes[a] + sizes[b]

        clusters.append(np.concatenate([clusters[a], clusters[b]]))
        children[new] = (a, b)
        merge_distances.append(d_ab)

        ks = np.nonzero(active[:new])[0]
        stale = (row_arg[ks] == a) | (row_arg[ks] == b)
        fresh = ks[~stale]
        better = fresh[merged_col[fresh] < row_min[fresh]]
        row_min[better] = merged_col[better]
        row_arg[better] = new
        for k in ks[stale]:
            j = int(np.argmin(D[k, k + 1 :])) + k + 1
            row_min[k] = D[k, j]
            row_arg[k] = j

    return LinkageTree(
        num_genes=n, clusters=clusters, children=children, merge_distances=merge_distances
    )


def build_linkage_tree(population) -> LinkageTree:
    """Linkage tree for a population: gene distances plus agglomeration."""
    return linkage_tree_from_distances(distance_matrix(population))


def format_linkage_tree(tree: LinkageTree) -> str:
    """Indented text dump of a tree, one cluster per line, for inspection."""
    lines: list[str] = []

    def walk(idx: int, depth: int) -> None:
        members = " ".join(str(g) for g in sorted(tree.clusters[idx].tolist()))
        lines.append(f"{'  ' * depth}[{members}]")
        if idx in tree.children:
            a, b = tree.children[idx]
            walk(a, depth + 1)
            walk(b, depth + 1)

    walk(tree.root, 0)
    return "\n".join(lines)
