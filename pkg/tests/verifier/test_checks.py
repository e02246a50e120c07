import math

import numpy as np
import pytest

from src.errors import UnknownCheckError
from src.verifier.checks import (
    CHECK_DEFINITIONS,
    check_bch_tail,
    check_trunc_stability,
    register_all_checks,
)
from src.verifier.contracts import CheckDefinition, CheckSpec, Comparison, TrialOutcome
from src.verifier.registry import (
    clear_registry,
    default_spec,
    get_check,
    list_checks,
    register_check,
    require_check,
)
from src.verifier.runner import run_check, run_checks, trial_generators

ALL_CHECKS = [
    "duhamel",
    "log_norm",
    "span_4m",
    "bch_degree",
    "bch_tail",
    "trotter",
    "long_time_exact",
    "trunc_stability",
    "power_growth",
    "first_order",
    "table1_norms",
    "choi_encoding",
    "distance_metric",
]


@pytest.fixture(autouse=True)
def setup_registry():
    clear_registry()
    register_all_checks()


def test_registry_lists_every_check():
    assert list_checks() == ALL_CHECKS
    assert len(CHECK_DEFINITIONS) == len(ALL_CHECKS)
    assert get_check("nope") is None


def test_unknown_check():
    with pytest.raises(UnknownCheckError) as excinfo:
        require_check("nope")
    assert "duhamel" in str(excinfo.value)


def test_default_spec_merges_overrides():
    register_check(CheckDefinition(name="short_times", description="",
                                   func=lambda spec, rng: TrialOutcome(),
                                   defaults={"T_values": (0.01, 0.02), "trials": 50}))
    spec = default_spec("short_times", trials=7, seed=None)
    assert spec.T_values == (0.01, 0.02)
    assert spec.trials == 7
    assert spec.seed == 0
    assert default_spec("duhamel").trials == 200


def test_bch_tail_draws_from_shared_distribution():
    assert default_spec("bch_tail").T_values == CheckSpec(name="bch_tail").T_values
    assert default_spec("bch_tail").T_values == (0.05, 0.5, 1.0)


def test_bch_tail_stays_inside_convergence_disc():
    rng = np.random.default_rng(4)
    spec = CheckSpec(name="bch_tail")
    for _ in range(30):
        outcome = check_bch_tail(spec, rng)
        assert not outcome.skipped
        assert outcome.instance["T"] <= min(outcome.instance["T_drawn"], 1 / (16 * math.e))
        tail = outcome.comparisons[0]
        assert tail.label == "tail"
        assert tail.lhs <= tail.rhs + 1e-9


def test_trunc_stability_exercises_active_norm_constraint():
    rng = np.random.default_rng(5)
    spec = CheckSpec(name="trunc_stability")
    outcomes = [check_trunc_stability(spec, rng) for _ in range(40)]
    active = sum(outcome.instance["active"] for outcome in outcomes)
    assert 5 <= active < 40
    for outcome in outcomes:
        comparison = outcome.comparisons[0]
        assert comparison.lhs <= comparison.rhs + 1e-9


def test_spec_validation():
    with pytest.raises(ValueError):
        CheckSpec(name="duhamel", epsilon_range=(0.1, 0.01))
    with pytest.raises(ValueError):
        CheckSpec(name="duhamel", n_values=())


def test_trial_generators_are_reproducible():
    first = [g.random() for g in trial_generators(5, 3)]
    assert first == [g.random() for g in trial_generators(5, 3)]
    assert len(set(first)) == 3


@pytest.mark.parametrize("name", ALL_CHECKS)
def test_check_passes_on_default_distribution(name):
    report = run_check(default_spec(name, trials=20, seed=1))
    assert report.passed, report.worst_instance
    assert report.trials == 20
    assert report.skipped < 20


@pytest.mark.slow
@pytest.mark.parametrize("name", ALL_CHECKS)
def test_check_passes_at_full_trial_count(name):
    assert run_check(default_spec(name)).passed


def test_tampered_constants_fail():
    report = run_check(default_spec("duhamel", trials=10, bound_scale=0.1))
    assert not report.passed
    assert report.max_violation > report.slack
    assert "trial" in report.worst_instance


def test_violations_and_skips_are_reduced():
    calls = []

    def fake(spec, rng):
        calls.append(spec.name)
        if len(calls) % 2:
            return TrialOutcome(skipped=True)
        return TrialOutcome(comparisons=[Comparison(label="x", lhs=1.0, rhs=0.5)],
                            instance={"k": len(calls)})

    register_check(CheckDefinition(name="fake", description="", func=fake))
    report = run_check(CheckSpec(name="fake", trials=4))
    assert report.skipped == 2
    assert report.max_violation == pytest.approx(0.5)
    assert not report.passed


def test_all_skipped_has_no_violation():
    register_check(CheckDefinition(name="empty", description="",
                                   func=lambda spec, rng: TrialOutcome(skipped=True)))
    report = run_check(CheckSpec(name="empty", trials=3))
    assert report.max_violation is None
    assert report.passed


def test_run_checks_keeps_input_order():
    specs = [default_spec(name, trials=2) for name in ("distance_metric", "duhamel", "trotter")]
    reports = run_checks(specs, max_workers=3)
    assert [r.name for r in reports] == ["distance_metric", "duhamel", "trotter"]


def test_run_checks_rejects_unknown_names():
    with pytest.raises(UnknownCheckError):
        run_checks([CheckSpec(name="missing")])
