from ._minsum import (
    Ball,
    BallSolution,
    Cluster,
    Decomposition,
    DocumentError,
    FairSpec,
    InstanceTooLarge,
    MetricError,
    MetricSpace,
    PartitionSolution,
    alpha_msr_approx,
    approximate_msd,
    approximate_msr,
    balanced_msd,
    ball_cost,
    decompose,
    exact_msd,
    exact_msr,
    fair_msr_approx,
    k_center_approx,
    load_instance,
    oracle_kcenter,
    oracle_msd,
    oracle_msr,
    partition_cost,
    random_euclidean,
    verify_balls,
    verify_partition,
)

__all__ = [
    "Ball",
    "BallSolution",
    "Cluster",
    "Decomposition",
    "DocumentError",
    "FairSpec",
    "InstanceTooLarge",
    "MetricError",
    "MetricSpace",
    "PartitionSolution",
    "alpha_msr_approx",
    "approximate_msd",
    "approximate_msr",
    "balanced_msd",
    "ball_cost",
    "decompose",
    "exact_msd",
    "exact_msr",
    "fair_msr_approx",
    "k_center_approx",
    "load_instance",
    "oracle_kcenter",
    "oracle_msd",
    "oracle_msr",
    "partition_cost",
    "random_euclidean",
    "verify_balls",
    "verify_partition",
]
