"""Nearest-labeled-neighbor bipartite graph with L1 edge weights.

Every unlabeled point carries exactly one edge, to its L1-nearest labeled
point; the edge weight is that distance and the total of all weights is the
pool's uncertainty mass H. Moving points into the labeled side can only
shrink weights, and q_set measures exactly how much of H a candidate set
would remove, directly (its own edges) plus indirectly (other points
re-anchoring to it).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

# Candidate columns scored per block in q_values; bounds the distance matrix
# held in memory to |U| x _BLOCK.
_BLOCK = 1024


@dataclass(frozen=True)
class BoundDiagnostic:
    """One evaluation of the weight-shift prediction bound (see check_bound)."""

    delta_u: float
    lambda_max: float
    l1_distance: float

    @property
    def bound(self) -> float:
        return self.lambda_max * self.l1_distance


def _as_index_array(idx, n: int, name: str) -> np.ndarray:
    arr = np.asarray(idx, dtype=np.int64).ravel()
    arr = np.sort(arr)
    if arr.size != np.unique(arr).size:
        raise ValueError(f"{name} indices contain duplicates")
    if arr.size and (arr[0] < 0 or arr[-1] >= n):
        raise ValueError(f"{name} indices out of range for {n} rows")
    return arr


class NNBipartiteGraph:
    """Bipartite nearest-neighbor graph over a fixed feature matrix.

    ``labeled`` and ``unlabeled`` are sorted dataset-index arrays; ``nn`` and
    ``thetas`` align with ``unlabeled``. ``features`` is held by reference and
    must not be mutated while the graph is alive.
    """

    __slots__ = ("features", "labeled", "unlabeled", "nn", "thetas")

    def __init__(self, features, labeled, unlabeled, nn, thetas):
        self.features = features
        self.labeled = labeled
        self.unlabeled = unlabeled
        self.nn = nn
        self.thetas = thetas

    @classmethod
    def build(cls, labeled, unlabeled, features) -> "NNBipartiteGraph":
        """Scan every unlabeled point against all labeled points.

        Distance ties resolve to the smallest labeled index, which argmin over
        the ascending labeled array gives for free.
        """
        X = np.asarray(features, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValueError("features contain non-finite values")
        n = X.shape[0]
        lab = _as_index_array(labeled, n, "labeled")
        unl = _as_index_array(unlabeled, n, "unlabeled")
        if lab.size == 0:
            raise ValueError("labeled set must be nonempty")
        if np.intersect1d(lab, unl).size:
            raise ValueError("labeled and unlabeled sets overlap")
        if unl.size == 0:
            nn = np.empty(0, dtype=np.int64)
            thetas = np.empty(0, dtype=np.float64)
        else:
            dists = cdist(X[unl], X[lab], "cityblock")
            pos = dists.argmin(axis=1)
            thetas = dists[np.arange(unl.size), pos]
            nn = lab[pos]
        return cls(X, lab, unl, nn, thetas)

    # -- lookups ---------------------------------------------------------

    def _pos_of(self, u: int) -> int:
        pos = int(np.searchsorted(self.unlabeled, u))
        if pos >= self.unlabeled.size or self.unlabeled[pos] != u:
            raise ValueError(f"index {u} is not an unlabeled point of this graph")
        return pos

    def theta(self, u: int) -> float:
        """Edge weight of unlabeled point u (its L1 distance to the labeled set)."""
        return float(self.thetas[self._pos_of(u)])

    def neighbor_of(self, u: int) -> int:
        """Labeled endpoint of u's edge."""
        return int(self.nn[self._pos_of(u)])

    def total_uncertainty(self) -> float:
        """H: sum of all edge weights, in ascending unlabeled-index order."""
        return float(np.sum(self.thetas))

    # -- uncertainty reduction -------------------------------------------

    def _subset_positions(self, subset) -> np.ndarray:
        S = np.asarray(subset, dtype=np.int64).ravel()
        if S.size == 0:
            raise ValueError("subset must be nonempty")
        S = np.sort(S)
        if S.size != np.unique(S).size:
            raise ValueError("subset contains duplicates")
        pos = np.searchsorted(self.unlabeled, S)
        if np.any(pos >= self.unlabeled.size) or np.any(self.unlabeled[pos] != S):
            raise ValueError("subset is not contained in the unlabeled set")
        return pos

    def q_set(self, subset) -> float:
        """Uncertainty reduction H - H' from moving ``subset`` to the labeled side.

        H' re-anchors every remaining point to the nearer of its current
        labeled neighbor and the closest subset member; the subset's own
        edges vanish from the total.
        """
        pos = self._subset_positions(subset)
        keep = np.ones(self.unlabeled.size, dtype=bool)
        keep[pos] = False
        h = self.total_uncertainty()
        if not np.any(keep):
            return h
        rest = self.unlabeled[keep]
        d_new = cdist(
            self.features[rest], self.features[self.unlabeled[pos]], "cityblock"
        ).min(axis=1)
        h_after = float(np.sum(np.minimum(self.thetas[keep], d_new)))
        return h - h_after

    def q_single(self, u: int) -> float:
        """Uncertainty reduction from moving one point: its own weight plus
        every indirect shrink it causes. Equal to q_set on the singleton."""
        return self.q_set(np.asarray([u], dtype=np.int64))

    def q_values(self) -> np.ndarray:
        """q_single for every unlabeled point, aligned with ``unlabeled``.

        Column-block evaluation of the same quantity; within float
        associativity of the per-candidate q_single.
        """
        m = self.unlabeled.size
        out = np.empty(m, dtype=np.float64)
        if m == 0:
            return out
        XU = self.features[self.unlabeled]
        h = self.total_uncertainty()
        for start in range(0, m, _BLOCK):
            stop = min(start + _BLOCK, m)
            d = cdist(XU, XU[start:stop], "cityblock")
            # The candidate's own column entry is min(theta, 0) = 0, so the
            # column sum is H' after moving just that candidate.
            h_after = np.minimum(self.thetas[:, None], d).sum(axis=0)
            out[start:stop] = h - h_after
        return out

    # -- mutation ----------------------------------------------------------

    def commit(self, subset) -> "NNBipartiteGraph":
        """New graph with ``subset`` moved to the labeled side.

        Incremental: remaining weights become min(old theta, distance to the
        nearest new member). Exact ties keep the incumbent neighbor; among new
        members the smallest index wins.
        """
        pos = self._subset_positions(subset)
        moved = self.unlabeled[pos]
        keep = np.ones(self.unlabeled.size, dtype=bool)
        keep[pos] = False
        rest = self.unlabeled[keep]
        new_labeled = np.sort(np.concatenate([self.labeled, moved]))
        if rest.size == 0:
            return NNBipartiteGraph(
                self.features,
                new_labeled,
                rest,
                np.empty(0, dtype=np.int64),
                np.empty(0, dtype=np.float64),
            )
        d = cdist(self.features[rest], self.features[moved], "cityblock")
        best_pos = d.argmin(axis=1)
        best = d[np.arange(rest.size), best_pos]
        old_theta = self.thetas[keep]
        improves = best < old_theta  # strict: equal keeps the incumbent
        new_theta = np.where(improves, best, old_theta)
        new_nn = np.where(improves, moved[best_pos], self.nn[keep])
        return NNBipartiteGraph(self.features, new_labeled, rest, new_nn, new_theta)

    # -- diagnostics -------------------------------------------------------

    def dump(self, fh) -> None:
        """Write edges as delimited text: one ``u,nn,theta`` row per edge."""
        fh.write("u,nn,theta\n")
        for u, v, w in zip(self.unlabeled, self.nn, self.thetas):
            fh.write(f"{int(u)},{int(v)},{float(w)!r}\n")


def check_bound(model_before, model_after, x_u, x_l) -> BoundDiagnostic:
    """Evaluate the prediction-shift bound between two fitted linear models.

    The weight-difference part of the prediction gap at x_u, anchored at a
    labeled point x_l, never exceeds (max_i |w*_i - w_i|) * L1(x_u, x_l); the
    anchor distance is smallest when x_l is x_u's nearest labeled neighbor,
    which is what the graph's edges store.
    """
    x_u = np.asarray(x_u, dtype=np.float64).ravel()
    x_l = np.asarray(x_l, dtype=np.float64).ravel()
    dw = np.asarray(model_after.weights, dtype=np.float64) - np.asarray(
        model_before.weights, dtype=np.float64
    )
    if not (dw.shape == x_u.shape == x_l.shape):
        raise ValueError("model widths and point widths must all agree")
    delta_u = float(abs(np.dot(dw, x_u - x_l)))
    lambda_max = float(np.max(np.abs(dw))) if dw.size else 0.0
    l1_distance = float(np.sum(np.abs(x_u - x_l)))
    if delta_u > lambda_max * l1_distance + 1e-9:
        raise ValueError(
            f"bound violated: delta {delta_u} > {lambda_max * l1_distance}"
        )
    return BoundDiagnostic(
        delta_u=delta_u, lambda_max=lambda_max, l1_distance=l1_distance
    )
