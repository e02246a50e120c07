import json

from ..config import settings
from ..verifier.contracts import CheckReport
from ..verifier.registry import default_spec, list_checks, require_check
from ..verifier.runner import run_checks
from ..utils.context import set_run_id
from ..utils.logging import get_logger
from .contracts import RunConfig

logger = get_logger(__name__)


def format_table(reports: list[CheckReport]) -> str:
    lines = [f"{'check':<18} {'trials':>7} {'skipped':>8} {'max_violation':>15}  pass"]
    for report in reports:
        violation = "-" if report.max_violation is None else f"{report.max_violation:.3e}"
        lines.append(
            f"{report.name:<18} {report.trials:>7} {report.skipped:>8} {violation:>15}  "
            f"{'yes' if report.passed else 'NO'}"
        )
    return "\n".join(lines) + "\n"


def cmd_verify(config: RunConfig) -> int:
    """Table on stdout, JSON to --out; exit 0 iff every check passes."""
    set_run_id(f"verify-{config.seed or 0}")
    names = config.checks or list_checks()
    for name in names:
        require_check(name)
    specs = [
        default_spec(name, trials=config.trials, seed=config.seed or 0,
                     bound_scale=config.bound_scale)
        for name in names
    ]
    reports = run_checks(specs)
    print(format_table(reports), end="")
    if config.output is not None:
        payload = {
            "schema": settings.REPORT_SCHEMA_VERSION,
            "checks": [report.model_dump() for report in reports],
        }
        config.output.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    failed = [report.name for report in reports if not report.passed]
    if failed:
        logger.error(f"failed checks: {', '.join(failed)}")
        return 1
    return 0
