"""Cross-check suite behind ``al-regress validate``.

Runs the fast implementations against exhaustive/rebuild references on seeded
synthetic instances: incremental graph updates vs. fresh builds, q values vs.
rebuild differences, batch local search vs. exact subset enumeration (value
ratio and the max-Q / min-total duality), the prediction-shift bound, and
monotonicity of the two threshold decision problems.
"""

from __future__ import annotations

import numpy as np

from .exhaustive import (
    ModificationInstance,
    best_subset_by_q,
    min_total_after,
    mmmd_decide,
    mmtd_decide,
)
from .graph import NNBipartiteGraph, check_bound
from .regression import LinearModel
from .strategies import build_seed_set, select_ours_batch


def _random_instance(rng, n_lo=8, n_hi=26, d_hi=5):
    n = int(rng.integers(n_lo, n_hi))
    d = int(rng.integers(1, d_hi + 1))
    X = rng.normal(size=(n, d))
    n_lab = int(rng.integers(1, max(2, n // 3) + 1))
    perm = rng.permutation(n)
    labeled, unlabeled = perm[:n_lab], perm[n_lab:]
    return NNBipartiteGraph.build(labeled, unlabeled, X), X


def _check_rebuild_equivalence(rng, echo, instances=60):
    worst_q = 0.0
    for _ in range(instances):
        g, X = _random_instance(rng)
        size = int(rng.integers(1, min(4, g.unlabeled.size) + 1))
        subset = np.sort(rng.choice(g.unlabeled, size=size, replace=False))
        committed = g.commit(subset)
        rebuilt = NNBipartiteGraph.build(committed.labeled, committed.unlabeled, X)
        if not np.array_equal(committed.thetas, rebuilt.thetas):
            echo("FAIL: incremental commit weights differ from a fresh build")
            return 1
        if not np.array_equal(committed.nn, rebuilt.nn):
            echo("FAIL: incremental commit neighbors differ from a fresh build")
            return 1
        q_direct = g.q_set(subset)
        q_rebuild = g.total_uncertainty() - rebuilt.total_uncertainty()
        worst_q = max(worst_q, abs(q_direct - q_rebuild))
        u = int(subset[0])
        worst_q = max(
            worst_q,
            abs(
                g.q_single(u)
                - (
                    g.total_uncertainty()
                    - g.commit(np.asarray([u])).total_uncertainty()
                )
            ),
        )
        if worst_q > 1e-9:
            echo(f"FAIL: q mismatch vs rebuild reference ({worst_q:.3e})")
            return 1
    echo(f"ok: commit == rebuild on {instances} instances; max q gap {worst_q:.2e}")
    return 0


def _check_bound_draws(rng, echo, draws=2000):
    violations = 0
    for _ in range(draws):
        d = int(rng.integers(1, 21))
        before = LinearModel(weights=rng.normal(size=d), bias=0.0, ridge_alpha=0.0)
        after = LinearModel(weights=rng.normal(size=d), bias=0.0, ridge_alpha=0.0)
        diag = check_bound(before, after, rng.normal(size=d), rng.normal(size=d))
        if diag.delta_u > diag.lambda_max * diag.l1_distance + 1e-12:
            violations += 1
    if violations:
        echo(f"FAIL: prediction-shift bound violated on {violations}/{draws} draws")
        return 1
    echo(f"ok: prediction-shift bound held on {draws} random draws")
    return 0


def _check_local_search(rng, echo, instances=30):
    worst_ratio = 1.0
    for _ in range(instances):
        g, _ = _random_instance(rng, n_lo=8, n_hi=16, d_hi=3)
        if g.unlabeled.size < 4 or g.unlabeled.size > 12:
            continue
        k = int(rng.integers(2, 4))
        if k > g.unlabeled.size:
            continue
        seed = build_seed_set(g, k)
        trace = select_ours_batch(g, k, seed)
        q_seed = g.q_set(np.sort(seed))
        if trace.score < q_seed - 1e-12:
            echo("FAIL: local search returned less than its seed set's q")
            return 1
        best_set, best_q = best_subset_by_q(g, k)
        total = g.total_uncertainty()
        residual_opt = min_total_after(g, k)
        residual_ls = total - trace.score
        if residual_opt > 1e-12:
            ratio = residual_ls / residual_opt
            worst_ratio = max(worst_ratio, ratio)
            if ratio > 5.0:
                echo(f"FAIL: local-search residual ratio {ratio:.3f} exceeds 5")
                return 1
        # Duality: the enumerated max reduction is H minus the min total,
        # exactly (subtracting a larger total never rounds past a smaller one).
        if best_q != total - residual_opt:
            echo("FAIL: max-reduction / min-total duality broken")
            return 1
        if not mmtd_decide(ModificationInstance(graph=g, k=k, sigma=residual_opt)):
            echo("FAIL: optimal subset does not satisfy its own total threshold")
            return 1
    echo(f"ok: local search within 5x of exhaustive optimum (worst {worst_ratio:.3f})")
    return 0


def _check_threshold_monotonicity(rng, echo, instances=8):
    for _ in range(instances):
        g, _ = _random_instance(rng, n_lo=6, n_hi=11, d_hi=3)
        if g.unlabeled.size < 3:
            continue
        total = g.total_uncertainty()
        kmax = min(3, g.unlabeled.size)
        sigmas = np.linspace(0.0, total, 5)
        betas = np.linspace(0.0, float(np.max(g.thetas)), 5)
        prev_t = [False] * len(sigmas)
        prev_m = [False] * len(betas)
        for k in range(1, kmax + 1):
            cur_t = [
                mmtd_decide(ModificationInstance(graph=g, k=k, sigma=float(s)))
                for s in sigmas
            ]
            cur_m = [
                mmmd_decide(ModificationInstance(graph=g, k=k, beta=float(b)))
                for b in betas
            ]
            for prev, cur, label in ((prev_t, cur_t, "total"), (prev_m, cur_m, "max")):
                if any(p and not c for p, c in zip(prev, cur)):
                    echo(f"FAIL: {label}-threshold feasibility not monotone in k")
                    return 1
            for cur, label in ((cur_t, "total"), (cur_m, "max")):
                if any(a and not b for a, b in zip(cur, cur[1:])):
                    echo(f"FAIL: {label}-threshold feasibility not monotone in threshold")
                    return 1
            prev_t, prev_m = cur_t, cur_m
    echo("ok: threshold decisions monotone in k and in the threshold")
    return 0


def run_validation(seed: int = 0, echo=print) -> int:
    """Run every cross-check; returns the number of failing blocks."""
    failures = 0
    rng = np.random.default_rng(seed)
    failures += _check_rebuild_equivalence(rng, echo)
    failures += _check_bound_draws(rng, echo)
    failures += _check_local_search(rng, echo)
    failures += _check_threshold_monotonicity(rng, echo)
    echo("validation passed" if failures == 0 else f"validation FAILED ({failures})")
    return failures
