"""Strategic-manipulation test for ranking-based peer assessment."""

from ._core import (
    Assignment,
    PeerRankError,
    ProblemInstance,
    TestResult,
    __version__,
    aggregate_positions,
    apply_strategy,
    generate_dataset,
    ground_truth_profile,
    identity_instance,
    instance_preset,
    instance_preset_names,
    mix_preset_names,
    run_test,
    sample_assignment,
    simulate,
)

__all__ = [
    "Assignment",
    "PeerRankError",
    "ProblemInstance",
    "TestResult",
    "__version__",
    "aggregate_positions",
    "apply_strategy",
    "generate_dataset",
    "ground_truth_profile",
    "identity_instance",
    "instance_preset",
    "instance_preset_names",
    "mix_preset_names",
    "run_test",
    "sample_assignment",
    "simulate",
]
