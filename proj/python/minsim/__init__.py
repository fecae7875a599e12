"""MinHash similarity estimation: RU/RUM pipelines and exact probability laws."""

from ._core import (
    DistributionTable,
    EmpiricalDistribution,
    ItemSet,
    MinsimError,
    SignatureEstimate,
    Universe,
    binomial_table,
    collision_probability_uniform,
    deviation_probability,
    estimate_rum,
    eval_linear,
    exact_ci,
    jaccard,
    jaccard_float,
    random_subset_law,
    shingle,
    shingle_labels,
    sim_to_simM,
    simM_to_sim,
    simrum_law,
    simulate_simrum,
)

__all__ = [
    "DistributionTable",
    "EmpiricalDistribution",
    "ItemSet",
    "MinsimError",
    "SignatureEstimate",
    "Universe",
    "binomial_table",
    "collision_probability_uniform",
    "deviation_probability",
    "estimate_rum",
    "eval_linear",
    "exact_ci",
    "jaccard",
    "jaccard_float",
    "random_subset_law",
    "shingle",
    "shingle_labels",
    "sim_to_simM",
    "simM_to_sim",
    "simrum_law",
    "simulate_simrum",
]

__version__ = "0.1.0"
