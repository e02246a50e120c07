from prometheus_client import REGISTRY, Counter, generate_latest

from ..config import settings


# Helper to avoid duplication on reload
def get_or_create_metric(metric_type, name, documentation, labels=None, **kwargs):
    if name in REGISTRY._names_to_collectors:
        return REGISTRY._names_to_collectors[name]
    if labels:
        return metric_type(name, documentation, labels, **kwargs)
    return metric_type(name, documentation, **kwargs)


# Oracle Metrics
ORACLE_QUERIES_TOTAL = get_or_create_metric(
    Counter,
    "hamlearn_oracle_queries_total",
    "Total oracle queries granted",
    ["kind"]
)

ORACLE_EVOLUTION_SECONDS_TOTAL = get_or_create_metric(
    Counter,
    "hamlearn_oracle_evolution_seconds_total",
    "Total evolution time under the hidden Hamiltonian"
)

MIN_TIME_VIOLATIONS_TOTAL = get_or_create_metric(
    Counter,
    "hamlearn_min_time_violations_total",
    "Refused queries shorter than the minimum evolution time"
)

# Tomography Metrics
TOMOGRAPHY_COPIES_TOTAL = get_or_create_metric(
    Counter,
    "hamlearn_tomography_copies_total",
    "State copies consumed by tomography routines",
    ["routine"]
)

# Learner Metrics
LEARN_ITERATIONS_TOTAL = get_or_create_metric(
    Counter,
    "hamlearn_learn_iterations_total",
    "Main-loop iterations by branch",
    ["branch"]
)

# Verifier Metrics
CHECKS_TOTAL = get_or_create_metric(
    Counter,
    "hamlearn_checks_total",
    "Inequality checks run",
    ["check", "status"]
)


def record_query(kind: str, count: int, seconds: float) -> None:
    if not settings.METRICS_ENABLED:
        return
    ORACLE_QUERIES_TOTAL.labels(kind=kind).inc(count)
    ORACLE_EVOLUTION_SECONDS_TOTAL.inc(seconds)


def get_metrics_text() -> str:
    """Prometheus exposition text of the default registry."""
    return generate_latest(REGISTRY).decode("utf-8")
