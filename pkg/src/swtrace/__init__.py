"""Classical simulation of weak Schur sampling and spectrum-functional
estimation: exact rational shape distributions, fast shape samplers, the
median-of-batches spectrum estimator, truncated power-trace estimators, and
hard instance pairs for lower-bound experiments.
"""

from .exact_dist import (
    DEFAULT_EXACT_CAP,
    ExactDistribution,
    PlanchBoundsResult,
    check_planch_bounds,
    estimator_pushforward,
    exact_row_second_moment,
    l1_distance,
    planch_exact,
    resolve_exact_cap,
    sw_exact,
)
from .lower_bounds import (
    HardInstance,
    commuting_fidelity,
    discrimination_experiment,
    estimate_observation,
    hard_pair_maximally_mixed,
    hard_pair_qubit,
    helstrom_bound,
    likelihood_rule,
    min_copies_for_likelihood_success,
    mixed_pair_l1,
    qubit_copies_scaling,
    shape_observation,
    threshold_rule,
    uniform_rank_pair,
)
from .partitions import MAX_ENUMERATION_N, Partition, dim_sym, enumerate_partitions, hook_lengths
from .power_trace import (
    Algorithm,
    EstimateReport,
    plugin_baseline,
    plugin_baseline_exact,
    plugin_report,
    power_trace_estimate,
    true_power_trace,
    truncation_parameters,
    truncation_tail_bound,
)
from .sampling import (
    RngStream,
    rs_shape,
    sample_planch,
    sample_planch_batch,
    sample_sw,
    sample_sw_batch,
)
from .schur import Spectrum, complete_homogeneous, schur_poly, schur_poly_float, schur_ssyt_oracle, schur_uniform
from .spectrum_estimation import (
    DEFAULT_C,
    SpectrumEstimate,
    batch_parameters,
    median,
    spectrum_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "DEFAULT_C",
    "DEFAULT_EXACT_CAP",
    "EstimateReport",
    "ExactDistribution",
    "HardInstance",
    "MAX_ENUMERATION_N",
    "Partition",
    "PlanchBoundsResult",
    "RngStream",
    "Spectrum",
    "SpectrumEstimate",
    "batch_parameters",
    "check_planch_bounds",
    "commuting_fidelity",
    "complete_homogeneous",
    "dim_sym",
    "discrimination_experiment",
    "enumerate_partitions",
    "estimate_observation",
    "estimator_pushforward",
    "exact_row_second_moment",
    "hard_pair_maximally_mixed",
    "hard_pair_qubit",
    "helstrom_bound",
    "hook_lengths",
    "l1_distance",
    "likelihood_rule",
    "median",
    "min_copies_for_likelihood_success",
    "mixed_pair_l1",
    "planch_exact",
    "plugin_baseline",
    "plugin_baseline_exact",
    "plugin_report",
    "power_trace_estimate",
    "qubit_copies_scaling",
    "resolve_exact_cap",
    "rs_shape",
    "sample_planch",
    "sample_planch_batch",
    "sample_sw",
    "sample_sw_batch",
    "schur_poly",
    "schur_poly_float",
    "schur_ssyt_oracle",
    "schur_uniform",
    "shape_observation",
    "spectrum_estimate",
    "sw_exact",
    "threshold_rule",
    "true_power_trace",
    "truncation_parameters",
    "truncation_tail_bound",
    "uniform_rank_pair",
]
