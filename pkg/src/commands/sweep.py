"""
Epsilon sweeps: one independent learning run per target accuracy and a
least-squares fit of log t_tot against log(1/eps).
"""

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from contextvars import copy_context
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..config import settings
from ..learner.contracts import LearnReport
from ..utils.context import set_run_id
from ..utils.logging import get_logger
from .contracts import RunConfig
from .learn import load_instance, run_learning

logger = get_logger(__name__)

CSV_COLUMNS = [
    "epsilon", "t_tot", "t_min", "queries", "final_error", "heisenberg_iterations",
    "sql_iterations", "success",
]


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon: float
    t_tot: float
    t_min: float
    queries: int
    final_error: Optional[float]
    heisenberg_iterations: int
    sql_iterations: int
    success: bool

    @classmethod
    def from_report(cls, report: LearnReport) -> "SweepRow":
        branches = [record.branch for record in report.iterations]
        return cls(
            epsilon=report.epsilon,
            t_tot=report.ledger.t_tot,
            t_min=report.ledger.t_min,
            queries=report.ledger.queries,
            final_error=report.final_error,
            heisenberg_iterations=branches.count("heisenberg"),
            sql_iterations=branches.count("sql"),
            success=bool(report.success),
        )


def point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def fit_slope(epsilons: Sequence[float], times: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log t_tot against log(1/eps); None below two points."""
    if len(epsilons) < 2:
        return None
    x = np.log([1.0 / eps for eps in epsilons])
    y = np.log(times)
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def run_sweep(config: RunConfig) -> list[SweepRow]:
    """Rows ordered by decreasing epsilon; points run concurrently on separate oracles."""
    H = load_instance(config)
    epsilons = sorted(config.epsilons, reverse=True)

    def point(index: int, epsilon: float) -> SweepRow:
        set_run_id(f"sweep-{config.seed}-{index}")
        report = run_learning(config, H, epsilon, point_seed(config.seed, index))
        return SweepRow.from_report(report)

    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
        futures = [
            executor.submit(copy_context().run, point, index, epsilon)
            for index, epsilon in enumerate(epsilons)
        ]
        return [future.result() for future in futures]


def write_csv(rows: Sequence[SweepRow], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            values = row.model_dump()
            values["t_min"] = None if math.isinf(row.t_min) else row.t_min
            writer.writerow({key: "" if values[key] is None else repr(values[key])
                             for key in CSV_COLUMNS})


def sweep_summary(rows: Sequence[SweepRow]) -> dict:
    pure = [row for row in rows if row.sql_iterations == 0]
    return {
        "schema": settings.REPORT_SCHEMA_VERSION,
        "points": len(rows),
        "slope": fit_slope([r.epsilon for r in rows], [r.t_tot for r in rows]),
        "heisenberg_points": len(pure),
        "heisenberg_slope": fit_slope([r.epsilon for r in pure], [r.t_tot for r in pure]),
        "all_successful": all(row.success for row in rows),
    }


def cmd_sweep(config: RunConfig) -> int:
    set_run_id(f"sweep-{config.seed}")
    rows = run_sweep(config)
    write_csv(rows, config.output)
    summary = sweep_summary(rows)
    print(json.dumps(summary, sort_keys=True))
    logger.info(f"sweep of {len(rows)} points written to {config.output}")
    if not summary["all_successful"]:
        logger.error("at least one sweep point missed its target accuracy")
        return 1
    return 0
