"""Exhaustive reference solvers over small pools.

These enumerate k-subsets outright, so they are the ground truth the fast
strategies are checked against: the best uncertainty-reducing subset of an
exact size, and yes/no answers for whether some subset of at most k moves
can drive the maximum edge weight below beta (max-threshold) or the total
below sigma (total-threshold).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .graph import NNBipartiteGraph

# Enumeration guards: refuse pools/subset counts past these.
MAX_POOL = 20
MAX_SUBSETS = 200_000


@dataclass(frozen=True)
class ModificationInstance:
    """A graph plus the decision-problem parameters k, beta, sigma."""

    graph: NNBipartiteGraph
    k: int
    beta: float = 0.0
    sigma: float = 0.0

    def __post_init__(self):
        if not 1 <= self.k <= self.graph.unlabeled.size:
            raise ValueError(
                f"k={self.k} outside 1..{self.graph.unlabeled.size}"
            )


def _guard(n_pool: int, k: int) -> None:
    if n_pool > MAX_POOL:
        raise ValueError(f"pool of {n_pool} exceeds enumeration limit {MAX_POOL}")
    if math.comb(n_pool, k) > MAX_SUBSETS:
        raise ValueError(
            f"C({n_pool},{k}) = {math.comb(n_pool, k)} exceeds subset limit "
            f"{MAX_SUBSETS}"
        )


def _pool_distances(graph: NNBipartiteGraph) -> np.ndarray:
    XU = graph.features[graph.unlabeled]
    return cdist(XU, XU, "cityblock")


def _totals_after(D, theta, positions) -> float:
    """Total edge weight after moving the pool positions in ``positions``."""
    keep = np.ones(theta.size, dtype=bool)
    keep[list(positions)] = False
    if not keep.any():
        return 0.0
    d = D[keep][:, list(positions)].min(axis=1)
    return float(np.sum(np.minimum(theta[keep], d)))


def best_subset_by_q(graph: NNBipartiteGraph, k: int) -> tuple[np.ndarray, float]:
    """Exact argmax of q_set over all subsets of size exactly k.

    Ties keep the lexicographically smallest subset (the enumeration order).
    Guarded by MAX_POOL / MAX_SUBSETS.
    """
    nU = graph.unlabeled.size
    if not 1 <= k <= nU:
        raise ValueError(f"k={k} outside 1..{nU}")
    _guard(nU, k)
    D = _pool_distances(graph)
    theta = graph.thetas
    total = float(np.sum(theta))
    best_positions: tuple[int, ...] | None = None
    best_q = -np.inf
    for positions in itertools.combinations(range(nU), k):
        q = total - _totals_after(D, theta, positions)
        if q > best_q:
            best_q = q
            best_positions = positions
    assert best_positions is not None
    return graph.unlabeled[list(best_positions)], float(best_q)


def min_total_after(graph: NNBipartiteGraph, k: int) -> float:
    """Exact minimum post-move total edge weight over subsets of size exactly k.

    The counterpart of best_subset_by_q: maximizing the reduction is the same
    enumeration as minimizing what remains.
    """
    nU = graph.unlabeled.size
    if not 1 <= k <= nU:
        raise ValueError(f"k={k} outside 1..{nU}")
    _guard(nU, k)
    D = _pool_distances(graph)
    theta = graph.thetas
    return min(
        _totals_after(D, theta, positions)
        for positions in itertools.combinations(range(nU), k)
    )


def mmtd_decide(instance: ModificationInstance) -> bool:
    """Is there a subset of 1..k moves leaving total edge weight <= sigma?"""
    graph = instance.graph
    nU = graph.unlabeled.size
    _guard(nU, instance.k)
    D = _pool_distances(graph)
    theta = graph.thetas
    for size in range(1, instance.k + 1):
        for positions in itertools.combinations(range(nU), size):
            if _totals_after(D, theta, positions) <= instance.sigma:
                return True
    return False


def mmmd_decide(instance: ModificationInstance) -> bool:
    """Is there a subset of 1..k moves leaving every edge weight <= beta?

    Moving the whole pool leaves no edges, so beta >= 0 with k = |U| is
    always satisfiable.
    """
    graph = instance.graph
    nU = graph.unlabeled.size
    _guard(nU, instance.k)
    D = _pool_distances(graph)
    theta = graph.thetas
    for size in range(1, instance.k + 1):
        for positions in itertools.combinations(range(nU), size):
            keep = np.ones(nU, dtype=bool)
            keep[list(positions)] = False
            if not keep.any():
                if instance.beta >= 0:
                    return True
                continue
            d = D[keep][:, list(positions)].min(axis=1)
            worst = float(np.max(np.minimum(theta[keep], d)))
            if worst <= instance.beta:
                return True
    return False
