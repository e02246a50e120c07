"""
Runs registered checks over seeded trials and reduces them to worst-case reports.
"""

from concurrent.futures import ThreadPoolExecutor
from contextvars import copy_context
from typing import Iterable, Optional

import numpy as np

from ..config import settings
from ..observability.metrics import CHECKS_TOTAL
from ..observability.otel import get_tracer
from ..utils.context import set_trial
from ..utils.logging import get_logger
from .checks import register_all_checks
from .contracts import CheckReport, CheckSpec
from .registry import require_check

logger = get_logger(__name__)
tracer = get_tracer(__name__)

register_all_checks()


def trial_generators(seed: int, trials: int) -> list[np.random.Generator]:
    """One independent generator per trial, derived from the check seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(trials)]


def run_check(spec: CheckSpec) -> CheckReport:
    """Evaluate `spec.trials` instances; violation = lhs - bound_scale * rhs."""
    definition = require_check(spec.name)
    worst: Optional[float] = None
    worst_instance = None
    skipped = 0

    with tracer.start_as_current_span("verify.check") as span:
        span.set_attribute("check", spec.name)
        span.set_attribute("trials", spec.trials)
        for trial, rng in enumerate(trial_generators(spec.seed, spec.trials)):
            set_trial(trial)
            outcome = definition.func(spec, rng)
            if outcome.skipped:
                skipped += 1
                continue
            violation = max(c.lhs - spec.bound_scale * c.rhs for c in outcome.comparisons)
            if worst is None or violation > worst:
                worst = violation
                worst_instance = {
                    **outcome.instance,
                    "trial": trial,
                    "comparisons": [c.model_dump() for c in outcome.comparisons],
                }
        set_trial(None)

    passed = worst is None or worst <= spec.slack
    status = "pass" if passed else "fail"
    if settings.METRICS_ENABLED:
        CHECKS_TOTAL.labels(check=spec.name, status=status).inc()
    if skipped:
        logger.info(f"{spec.name}: skipped {skipped} of {spec.trials} instances",
                    extra={"check": spec.name})
    log = logger.info if passed else logger.warning
    log(f"{spec.name}: {status}, max violation {worst!r}", extra={"check": spec.name})
    return CheckReport(
        name=spec.name,
        trials=spec.trials,
        skipped=skipped,
        max_violation=worst,
        passed=passed,
        worst_instance=worst_instance,
        slack=spec.slack,
        bound_scale=spec.bound_scale,
    )


def run_checks(specs: Iterable[CheckSpec], max_workers: Optional[int] = None
               ) -> list[CheckReport]:
    """Checks run concurrently; reports come back in input order."""
    specs = list(specs)
    for spec in specs:
        require_check(spec.name)
    workers = max_workers or settings.MAX_WORKERS
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(copy_context().run, run_check, spec) for spec in specs]
        return [future.result() for future in futures]
