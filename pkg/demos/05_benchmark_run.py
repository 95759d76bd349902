"""A full benchmark: seeded trials, learning curves, CSV reports.

Runs the complete protocol on a clustered synthetic dataset: 30% of rows
held out for testing, 1% labeled up front, then ten rounds of queries at
2% of the pool per round. Point it at real data by replacing the Dataset
with a manifest entry (see manifests/uci.json and the README).
"""

import numpy as np

from alregress import (
    Dataset,
    ExperimentConfig,
    StrategyConfig,
    emit_report,
    run_experiment,
)

rng = np.random.default_rng(5)
centers = rng.normal(scale=5.0, size=(6, 4))
assignments = rng.integers(0, 6, size=400)
X = centers[assignments] + 0.5 * rng.normal(size=(400, 4))
slopes = rng.normal(size=(6, 4))
y = np.einsum("ij,ij->i", X, slopes[assignments]) + 0.1 * rng.normal(size=400)
dataset = Dataset(features=X, targets=y, name="clusters")

config = ExperimentConfig(
    dataset=dataset,
    strategies=(
        StrategyConfig(kind="ours_sequential"),
        StrategyConfig(kind="ours_batch"),
        StrategyConfig(kind="random"),
        StrategyConfig(kind="greedy"),
    ),
    trials=10,
    rounds=10,
)
report = run_experiment(config)

print("mean test RMSE by round:")
header = "round  " + "  ".join(f"{kind:>15}" for kind in report.strategies)
print(header)
for rnd in range(report.rounds + 1):
    cells = "  ".join(f"{report.mean_rmse[kind][rnd]:15.4f}"
                      for kind in report.strategies)
    print(f"  {rnd:>3}  {cells}")

print(f"\nplacement of {report.ranked_strategy} across {config.trials} trials:")
for pct, (first, second, others) in sorted(report.ranking_counts.items()):
    rnd = report.checkpoint_rounds[pct]
    print(f"  {pct:>2}% queried (round {rnd:>2}): "
          f"first {first}, second {second}, others {others}")

paths = emit_report(report, "demo_out")
print("\nwrote:")
for p in paths:
    print(f"  {p}")
