"""Query strategies: graph-driven selection plus standard pool baselines.

The graph strategies never look at labels. The sequential rule takes the
single point whose move removes the most uncertainty mass; the batch rule
seeds a set with k sequential picks and then improves it by single swaps
until no swap raises the set's uncertainty reduction by more than SWAP_TOL.
Random, greedy (largest min Euclidean distance), query-by-committee, and
expected-model-change round out the baselines.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .graph import NNBipartiteGraph
from .regression import fit, predict

# Minimum strict improvement for a batch swap to be accepted.
SWAP_TOL = 1e-12

STRATEGY_KINDS = (
    "ours_sequential",
    "ours_batch",
    "random",
    "greedy",
    "qbc",
    "emcm",
)


@dataclass(frozen=True)
class StrategyConfig:
    kind: str
    committee_size: int = 4
    rng_seed: int = 0
    batch_k: int | None = None

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.committee_size < 2:
            raise ValueError("committee_size must be >= 2")
        if self.batch_k is not None and self.batch_k < 1:
            raise ValueError("batch_k must be positive")


@dataclass(frozen=True)
class SelectionTrace:
    """One selection: a dataset index (or sorted index array for batch),
    the strategy's score for it, and the number of accepted swaps (batch)."""

    chosen: int | np.ndarray
    score: float
    swaps_performed: int = 0
    q_history: tuple[float, ...] | None = None


# -- graph strategies -------------------------------------------------------


def select_ours_sequential(graph: NNBipartiteGraph) -> SelectionTrace:
    """Argmax of q_single over the pool; ties go to the smallest index."""
    if graph.unlabeled.size == 0:
        raise ValueError("cannot select from an empty pool")
    scores = graph.q_values()
    pos = int(np.argmax(scores))  # first max = smallest unlabeled index
    u = int(graph.unlabeled[pos])
    return SelectionTrace(chosen=u, score=graph.q_single(u))


def build_seed_set(graph: NNBipartiteGraph, k: int) -> np.ndarray:
    """k sequential picks with the graph updated after each (labels untouched)."""
    if not 1 <= k <= graph.unlabeled.size:
        raise ValueError(f"k={k} outside 1..{graph.unlabeled.size}")
    g = graph
    picks = np.empty(k, dtype=np.int64)
    for i in range(k):
        scores = g.q_values()
        u = int(g.unlabeled[int(np.argmax(scores))])
        picks[i] = u
        g = g.commit(np.asarray([u]))
    return picks


def select_ours_batch(
    graph: NNBipartiteGraph,
    k: int,
    seed_set: np.ndarray | None = None,
    tol: float = SWAP_TOL,
) -> SelectionTrace:
    """Single-swap local search over k-subsets, maximizing q_set.

    Scans candidates u outside S in ascending index order and members l of S
    in ascending index order, accepting the first swap that improves q_set by
    more than ``tol``; repeats full passes until one makes no change.
    """
    nU = graph.unlabeled.size
    if not 1 <= k <= nU:
        raise ValueError(f"k={k} outside 1..{nU}")
    if seed_set is None:
        seed_set = build_seed_set(graph, k)
    seed = np.sort(np.asarray(seed_set, dtype=np.int64).ravel())
    if seed.size != k or np.unique(seed).size != k:
        raise ValueError(f"seed set must hold {k} distinct indices")
    seed_pos = np.searchsorted(graph.unlabeled, seed)
    if np.any(seed_pos >= nU) or np.any(graph.unlabeled[seed_pos] != seed):
        raise ValueError("seed set is not contained in the unlabeled pool")

    XU = graph.features[graph.unlabeled]
    D = cdist(XU, XU, "cityblock")
    final_pos, q_hist, swaps = _local_search(D, graph.thetas, seed_pos, tol)
    chosen = graph.unlabeled[final_pos]
    return SelectionTrace(
        chosen=chosen,
        score=graph.q_set(chosen),
        swaps_performed=swaps,
        q_history=tuple(q_hist),
    )


def _q_of_positions(D, theta, S, total=None) -> float:
    """q_set in pool-position space; bitwise-matches NNBipartiteGraph.q_set."""
    if total is None:
        total = float(np.sum(theta))
    keep = np.ones(theta.size, dtype=bool)
    keep[S] = False
    if not keep.any():
        return total
    d = D[keep][:, S].min(axis=1)
    return total - float(np.sum(np.minimum(theta[keep], d)))


def _pool_state(D, theta, S):
    """Nearest/second-nearest bookkeeping for the current member set S."""
    k = S.size
    cols = D[:, S]
    m1pos = cols.argmin(axis=1)
    m1 = cols[np.arange(cols.shape[0]), m1pos]
    if k >= 2:
        m2 = np.partition(cols, 1, axis=1)[:, 1]
    else:
        m2 = np.full(cols.shape[0], np.inf)
    cost = np.minimum(theta, m1)
    fallback = np.minimum(theta, m2)  # cost if the owning member is removed
    owner = m1 < theta  # rows whose cost actually comes from a member
    # Member rows see their own zero as m1; m2 is their distance to the rest.
    member_fallback = np.minimum(theta[S], m2[S])
    return m1pos, cost, fallback, owner, member_fallback


def _swap_deltas(D, theta, S, u, state):
    """q_set(S - l + u) - q_set(S) for every l in S, as one vector.

    Exact algebraic decomposition: clients not owned by l gain
    max(0, cost - d(j,u)) regardless of l; clients owned by l fall back to
    min(fallback, d(j,u)); u stops being a client; l becomes one.
    """
    m1pos, cost, fallback, owner, member_fallback = state
    k = S.size
    du = D[:, u]
    client = np.ones(D.shape[0], dtype=bool)
    client[S] = False
    client[u] = False
    base_gain = np.where(client, np.maximum(cost - du, 0.0), 0.0)
    total_base = base_gain.sum()
    owned = client & owner
    owner_idx = m1pos[owned]
    base_by_l = np.bincount(owner_idx, weights=base_gain[owned], minlength=k)
    repl_gain = cost - np.minimum(fallback, du)
    repl_by_l = np.bincount(owner_idx, weights=repl_gain[owned], minlength=k)
    new_member_cost = np.minimum(member_fallback, du[S])
    return total_base - base_by_l + repl_by_l + cost[u] - new_member_cost


def _local_search(D, theta, seed_pos, tol):
    total = float(np.sum(theta))
    S = np.sort(np.asarray(seed_pos, dtype=np.int64))
    in_set = np.zeros(theta.size, dtype=bool)
    in_set[S] = True
    swaps = 0
    q_hist = [_q_of_positions(D, theta, S, total)]
    if S.size == theta.size:
        return S, q_hist, swaps
    changed = True
    while changed:
        changed = False
        state = None
        for u in np.where(~in_set)[0]:
            if in_set[u]:
                continue  # swapped in earlier this pass
            if state is None:
                state = _pool_state(D, theta, S)
            deltas = _swap_deltas(D, theta, S, int(u), state)
            hits = np.nonzero(deltas > tol)[0]
            if hits.size:
                removed = int(S[int(hits[0])])
                in_set[removed] = False
                in_set[u] = True
                S = np.sort(np.concatenate([S[S != removed], [u]]))
                swaps += 1
                changed = True
                state = None
                q_hist.append(_q_of_positions(D, theta, S, total))
    return S, q_hist, swaps


# -- baselines ---------------------------------------------------------------


def select_random(unlabeled: np.ndarray, rng: np.random.Generator) -> SelectionTrace:
    """Uniform draw from the pool."""
    unlabeled = np.asarray(unlabeled, dtype=np.int64)
    if unlabeled.size == 0:
        raise ValueError("cannot select from an empty pool")
    return SelectionTrace(chosen=int(rng.choice(unlabeled)), score=0.0)


def select_greedy(
    features: np.ndarray, labeled: np.ndarray, unlabeled: np.ndarray
) -> SelectionTrace:
    """Point with the largest minimum Euclidean distance to the labeled set."""
    labeled = np.asarray(labeled, dtype=np.int64)
    unlabeled = np.asarray(unlabeled, dtype=np.int64)
    if unlabeled.size == 0:
        raise ValueError("cannot select from an empty pool")
    if labeled.size == 0:
        raise ValueError("greedy selection needs a nonempty labeled set")
    dmin = cdist(features[unlabeled], features[labeled], "euclidean").min(axis=1)
    pos = int(np.argmax(dmin))
    return SelectionTrace(chosen=int(unlabeled[pos]), score=float(dmin[pos]))


def _bootstrap_predictions(features, labels, labeled, unlabeled, n_members, alpha, rng):
    """Fit n_members models on with-replacement resamples of the labeled set,
    drawn sequentially from ``rng``, and predict the pool."""
    m = labeled.size
    preds = np.empty((n_members, unlabeled.size), dtype=np.float64)
    X_lab = features[labeled]
    y_lab = labels[labeled]
    X_pool = features[unlabeled]
    for b in range(n_members):
        idx = rng.integers(0, m, size=m)
        model, _ = fit(X_lab[idx], y_lab[idx], alpha)
        preds[b] = predict(model, X_pool)
    return preds


def select_qbc(
    features: np.ndarray,
    labels: np.ndarray,
    labeled: np.ndarray,
    unlabeled: np.ndarray,
    committee_size: int = 4,
    alpha: float = 0.0,
    rng: np.random.Generator | None = None,
) -> SelectionTrace:
    """Query by committee: maximize population variance of bootstrap predictions."""
    labeled = np.asarray(labeled, dtype=np.int64)
    unlabeled = np.asarray(unlabeled, dtype=np.int64)
    if unlabeled.size == 0:
        raise ValueError("cannot select from an empty pool")
    if committee_size < 2:
        raise ValueError("committee_size must be >= 2")
    if rng is None:
        rng = np.random.default_rng(0)
    preds = _bootstrap_predictions(
        features, labels, labeled, unlabeled, committee_size, alpha, rng
    )
    variance = preds.var(axis=0)
    pos = int(np.argmax(variance))
    return SelectionTrace(chosen=int(unlabeled[pos]), score=float(variance[pos]))


def select_emcm(
    features: np.ndarray,
    labels: np.ndarray,
    labeled: np.ndarray,
    unlabeled: np.ndarray,
    ensemble_size: int = 4,
    alpha: float = 0.0,
    rng: np.random.Generator | None = None,
) -> SelectionTrace:
    """Expected model change: mean over the ensemble of
    |f(x) - f_b(x)| * ||x with intercept||_2, maximized over the pool."""
    labeled = np.asarray(labeled, dtype=np.int64)
    unlabeled = np.asarray(unlabeled, dtype=np.int64)
    if unlabeled.size == 0:
        raise ValueError("cannot select from an empty pool")
    if ensemble_size < 2:
        raise ValueError("ensemble_size must be >= 2")
    if rng is None:
        rng = np.random.default_rng(0)
    main, _ = fit(features[labeled], labels[labeled], alpha)
    f_main = predict(main, features[unlabeled])
    preds = _bootstrap_predictions(
        features, labels, labeled, unlabeled, ensemble_size, alpha, rng
    )
    # Gradient magnitude of a squared-error stump at x is |df| * ||[x; 1]||.
    aug_norm = np.sqrt((features[unlabeled] ** 2).sum(axis=1) + 1.0)
    change = np.abs(f_main[None, :] - preds).mean(axis=0) * aug_norm
    pos = int(np.argmax(change))
    return SelectionTrace(chosen=int(unlabeled[pos]), score=float(change[pos]))
