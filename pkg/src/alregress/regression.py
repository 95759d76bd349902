"""Linear and ridge regression with an unpenalized intercept.

fit minimizes ||X w + b 1 - y||^2 + alpha ||w||^2. The bias column is appended
and the penalty applied only to w, so the solve is a single stacked least
squares. alpha=0 requests plain least squares; a small floor penalty keeps
near-singular systems stable while staying within every stated tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

# Penalty used in place of alpha=0; keeps rank-deficient fits at the
# minimum-norm solution without amplifying tiny singular values.
FLOOR_ALPHA = 1e-8


@dataclass(frozen=True)
class LinearModel:
    """Fitted weights and intercept; ridge_alpha records the requested penalty."""

    weights: np.ndarray
    bias: float
    ridge_alpha: float


@dataclass(frozen=True)
class FitDiagnostics:
    """normal_equation_residual is relative to the right-hand side's norm."""

    normal_equation_residual: float
    effective_rank_deficient: bool


def fit(
    X: np.ndarray, y: np.ndarray, alpha: float = 0.0
) -> tuple[LinearModel, FitDiagnostics]:
    """Solve the penalized least-squares problem.

    Args:
        X: (m, D) design matrix, m >= 1.
        y: (m,) targets.
        alpha: ridge penalty on the weights (never on the bias), >= 0.

    Returns:
        (LinearModel, FitDiagnostics). The diagnostics report the relative
        stationarity residual of the solved system and whether the augmented
        design [X | 1] is column-rank deficient.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise ValueError(f"incompatible shapes X{X.shape}, y{y.shape}")
    if X.shape[0] < 1:
        raise ValueError("need at least one training row")
    if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
        raise ValueError("training data contains non-finite values")
    if not alpha >= 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")

    m, D = X.shape
    alpha_eff = alpha if alpha > 0 else FLOOR_ALPHA
    aug = np.hstack([X, np.ones((m, 1))])
    # Penalty rows sqrt(alpha) * [I_D | 0] realize the ridge term in one lstsq.
    penalty = np.hstack([np.sqrt(alpha_eff) * np.eye(D), np.zeros((D, 1))])
    stacked = np.vstack([aug, penalty])
    rhs = np.concatenate([y, np.zeros(D)])
    sol, _, _, _ = scipy.linalg.lstsq(stacked, rhs)
    w = sol[:D]
    b = float(sol[D])

    resid_pred = aug @ sol - y
    grad_w = X.T @ resid_pred + alpha_eff * w
    grad_b = float(np.sum(resid_pred))
    resid_norm = float(np.sqrt(np.sum(grad_w**2) + grad_b**2))
    rhs_norm = float(np.sqrt(np.sum((X.T @ y) ** 2) + np.sum(y) ** 2))
    rel_resid = resid_norm / max(1.0, rhs_norm)

    deficient = np.linalg.matrix_rank(aug) < D + 1
    model = LinearModel(weights=w, bias=b, ridge_alpha=alpha)
    return model, FitDiagnostics(
        normal_equation_residual=rel_resid, effective_rank_deficient=bool(deficient)
    )


def predict(model: LinearModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.weights.shape[0]:
        raise ValueError(
            f"feature width {X.shape} does not match model width "
            f"{model.weights.shape[0]}"
        )
    return X @ model.weights + model.bias


def rmse(predictions: np.ndarray, truth: np.ndarray) -> float:
    predictions = np.asarray(predictions, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if predictions.shape != truth.shape or predictions.ndim != 1:
        raise ValueError(
            f"predictions {predictions.shape} and truth {truth.shape} must be "
            "equal-length vectors"
        )
    if predictions.shape[0] == 0:
        raise ValueError("rmse of empty vectors is undefined")
    return float(np.sqrt(np.mean((predictions - truth) ** 2)))
