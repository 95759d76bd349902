"""Feature-space maps: identity, or full multinomial expansion without a bias term.

The polynomial map emits every monomial of total degree 1..k over the d inputs,
ordered graded-lexicographically: grouped by total degree ascending, and within
a degree by the nondecreasing tuple of input indices. For d=2, k=2 the order is
[x0, x1, x0^2, x0*x1, x1^2]. The expanded dimension is C(d+k, k) - 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

# Hard ceiling on how many expanded columns we will materialize.
_MAX_EXPANDED = 10**7


@dataclass(frozen=True)
class FeatureMapSpec:
    kind: str = "identity"  # "identity" or "polynomial"
    degree: int = 2
    standardize_expanded: bool = True

    def __post_init__(self):
        if self.kind not in ("identity", "polynomial"):
            raise ValueError(f"unknown feature map kind {self.kind!r}")
        if self.kind == "polynomial" and self.degree < 1:
            raise ValueError(f"polynomial degree must be >= 1, got {self.degree}")


def monomial_index_tuples(d: int, degree: int) -> list[tuple[int, ...]]:
    """All monomials of total degree 1..degree as nondecreasing index tuples.

    Graded lexicographic: degree 1 tuples first, then degree 2, etc., each
    block in the order produced by itertools.combinations_with_replacement.
    """
    if d < 1 or degree < 1:
        raise ValueError(f"need d >= 1 and degree >= 1, got d={d}, degree={degree}")
    out: list[tuple[int, ...]] = []
    for deg in range(1, degree + 1):
        out.extend(itertools.combinations_with_replacement(range(d), deg))
    return out


def expanded_dim(d: int, spec: FeatureMapSpec) -> int:
    """Output width of the map for d input features (exact integer arithmetic)."""
    if d < 1:
        raise ValueError(f"need at least one input feature, got d={d}")
    if spec.kind == "identity":
        return d
    return math.comb(d + spec.degree, spec.degree) - 1


def expand(x: np.ndarray, spec: FeatureMapSpec) -> np.ndarray:
    """Map one feature vector into the model's feature space."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expand takes a 1-D vector, got shape {x.shape}")
    return expand_matrix(x[None, :], spec)[0]


def expand_matrix(X: np.ndarray, spec: FeatureMapSpec) -> np.ndarray:
    """Row-wise feature map of an (n, d) matrix; identity returns the input as-is."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expand_matrix takes a 2-D matrix, got shape {X.shape}")
    if spec.kind == "identity":
        return X
    d = X.shape[1]
    width = expanded_dim(d, spec)
    if width > _MAX_EXPANDED:
        raise ValueError(
            f"polynomial expansion of d={d} at degree {spec.degree} would produce "
            f"{width} columns (limit {_MAX_EXPANDED})"
        )
    cols = np.empty((X.shape[0], width), dtype=np.float64)
    for j, combo in enumerate(monomial_index_tuples(d, spec.degree)):
        col = X[:, combo[0]].copy()
        for idx in combo[1:]:
            col *= X[:, idx]
        cols[:, j] = col
    return cols
