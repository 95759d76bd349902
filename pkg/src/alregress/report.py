"""CSV emission for experiment reports.

Three files with frozen column orders (see README for schemas):
curves.csv (per-strategy mean/std RMSE per round), ranking.csv (checkpoint
placement counts of the ranked strategy), trials.csv (raw per-trial rounds,
with the indices queried in each round). Floats are written with repr, so
identical runs produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

from .experiment import ExperimentReport, TrialResult

CURVES_HEADER = "dataset,strategy,round,mean_rmse,std_rmse"
RANKING_HEADER = "dataset,checkpoint_pct,round,ranked_strategy,first,second,others"
TRIALS_HEADER = "dataset,strategy,trial,seed,round,rmse,queried_indices"


def _indices_for_round(result: TrialResult, rnd: int) -> str:
    picked = [
        str(idx)
        for idx, r in zip(result.queried_indices, result.query_rounds)
        if r == rnd
    ]
    return ";".join(picked)


def emit_report(report: ExperimentReport, out_dir: str | Path) -> list[Path]:
    """Write curves.csv, ranking.csv, and trials.csv; returns their paths."""
    if not report.strategies:
        raise ValueError("report has no strategies; nothing to emit")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    curves = out / "curves.csv"
    with open(curves, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CURVES_HEADER + "\n")
        for kind in report.strategies:
            mean = report.mean_rmse[kind]
            std = report.std_rmse[kind]
            for rnd in range(report.rounds + 1):
                # plain-float repr round-trips exactly; numpy scalars would
                # print as np.float64(...) and break the format
                fh.write(
                    f"{report.dataset},{kind},{rnd},"
                    f"{float(mean[rnd])!r},{float(std[rnd])!r}\n"
                )

    ranking = out / "ranking.csv"
    with open(ranking, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(RANKING_HEADER + "\n")
        for pct in sorted(report.ranking_counts):
            first, second, others = report.ranking_counts[pct]
            rnd = report.checkpoint_rounds[pct]
            fh.write(
                f"{report.dataset},{pct},{rnd},{report.ranked_strategy},"
                f"{first},{second},{others}\n"
            )

    trials = out / "trials.csv"
    with open(trials, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(TRIALS_HEADER + "\n")
        for kind in report.strategies:
            for t, result in enumerate(report.trials[kind]):
                for rnd in range(report.rounds + 1):
                    fh.write(
                        f"{report.dataset},{kind},{t},{result.seed},{rnd},"
                        f"{float(result.rmse_per_round[rnd])!r},"
                        f"{_indices_for_round(result, rnd)}\n"
                    )

    return [curves, ranking, trials]


def write_trace_log(report: ExperimentReport, path: str | Path) -> Path:
    """Optional per-query trace: one row per selection event."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("dataset,strategy,trial,round,chosen,score\n")
        for kind in report.strategies:
            for t, result in enumerate(report.trials[kind]):
                rows = zip(
                    result.query_rounds, result.queried_indices, result.query_scores
                )
                for rnd, idx, score in rows:
                    fh.write(
                        f"{report.dataset},{kind},{t},{rnd},{idx},{float(score)!r}\n"
                    )
    return path
