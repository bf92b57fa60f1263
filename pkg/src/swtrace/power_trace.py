"""Estimators for power traces P_q = sum_j alpha_j^q with q > 1.

The truncated estimator runs spectrum estimation at a refined accuracy
eps_prime, then sums the q-th powers of the first m estimated eigenvalues:

    q >= 2:      eps_prime = eps / (q + 3)
    1 < q < 2:   eps_prime = (eps / 5) ** (1 / (q - 1))
    m = min(ceil(1 / eps_prime), d),   delta_prime = 1 / (3 m)

A union bound over the m estimated rows gives overall confidence at least
2/3, and the truncation tail is controlled by sum_{j>m} alpha_j^q <=
(m^(1-q) - d^(1-q)) / (q - 1) because a sorted spectrum has alpha_j <= 1/j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .partitions import Partition
from .sampling import RngStream, sample_sw_batch
from .schur import Spectrum
from .spectrum_estimation import DEFAULT_C, spectrum_estimate


class Algorithm(str, Enum):
    TRUNCATED_HIGH_Q = "TruncatedHighQ"
    TRUNCATED_LOW_Q = "TruncatedLowQ"
    PLUG_IN = "PlugIn"


@dataclass(frozen=True)
class EstimateReport:
    """One power-trace estimate together with its derived parameters."""

    q: float
    epsilon: float
    estimate: float
    eps_prime: float
    m: int
    delta_prime: float
    total_samples: int
    seed: int
    stream_id: int
    algorithm: Algorithm
    clamped: bool = False


def true_power_trace(alpha, q: float) -> float:
    """sum_j alpha_j^q, with 0^q taken as 0."""
    if q <= 1:
        raise ValueError(f"q must exceed 1, got {q}")
    if not isinstance(alpha, Spectrum):
        alpha = Spectrum(alpha)
    return float(sum(float(a) ** q for a in alpha.values if a > 0))


def truncation_parameters(q: float, eps: float, d: int) -> tuple[float, int, float, Algorithm, bool]:
    """(eps_prime, m, delta_prime, algorithm, clamped) for the truncated
    estimator; q = 2 routes to the q >= 2 branch."""
    if q <= 1:
        raise ValueError(f"q must exceed 1, got {q}")
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if q >= 2:
        eps_prime = eps / (q + 3)
        algorithm = Algorithm.TRUNCATED_HIGH_Q
    else:
        eps_prime = (eps / 5) ** (1 / (q - 1))
        algorithm = Algorithm.TRUNCATED_LOW_Q
    clamped = False
    if eps_prime >= 1:
        # cannot happen for eps < 1, kept as a defensive clamp
        eps_prime = 0.5
        clamped = True
    if eps_prime <= 0 or not math.isfinite(eps_prime):
        raise ValueError(
            f"accuracy eps_prime underflowed for q = {q}, eps = {eps}; "
            "the required sample budget is astronomically large"
        )
    m = min(math.ceil(1 / eps_prime), d)
    delta_prime = 1 / (3 * m)
    return eps_prime, m, delta_prime, algorithm, clamped


def truncation_tail_bound(q: float, m: int, d: int) -> float:
    """Upper bound on the ignored tail sum_{j>m} alpha_j^q for sorted alpha."""
    if d <= m:
        return 0.0
    return (m ** (1 - q) - d ** (1 - q)) / (q - 1)


def power_trace_estimate(
    alpha,
    q: float,
    eps: float,
    c: float = DEFAULT_C,
    rng: RngStream | None = None,
) -> EstimateReport:
    """Estimate sum_j alpha_j^q to within eps with probability at least 2/3."""
    if not isinstance(alpha, Spectrum):
        alpha = Spectrum(alpha)
    if rng is None:
        raise ValueError("an explicit RngStream is required for reproducibility")
    d = alpha.dimension
    eps_prime, m, delta_prime, algorithm, clamped = truncation_parameters(q, eps, d)
    est = spectrum_estimate(alpha, eps_prime, delta_prime, c=c, rng=rng)
    # raw medians are non-negative, so the power sum is too
    value = float(sum(v**q for v in est.values[:m]))
    return EstimateReport(
        q=float(q),
        epsilon=float(eps),
        estimate=value,
        eps_prime=float(eps_prime),
        m=m,
        delta_prime=float(delta_prime),
        total_samples=est.total_samples,
        seed=rng.seed,
        stream_id=rng.stream_id,
        algorithm=algorithm,
        clamped=clamped,
    )


def plugin_baseline(lam: Partition, n: int, q: float) -> float:
    """The plug-in estimate sum_i (lambda_i / n)^q from a single shape."""
    if q <= 1:
        raise ValueError(f"q must exceed 1, got {q}")
    if lam.n != n:
        raise ValueError(f"shape is a partition of {lam.n}, not of n = {n}")
    return float(sum((r / n) ** q for r in lam.rows))


def plugin_baseline_exact(lam: Partition, n: int, q: int) -> Fraction:
    """Exact plug-in value for integer q, for pushforward tables."""
    if not isinstance(q, int) or q <= 1:
        raise ValueError(f"exact plug-in requires an integer q > 1, got {q}")
    if lam.n != n:
        raise ValueError(f"shape is a partition of {lam.n}, not of n = {n}")
    return sum((Fraction(r, n) ** q for r in lam.rows), Fraction(0))


def plugin_report(
    alpha,
    q: float,
    n: int,
    rng: RngStream | None = None,
) -> EstimateReport:
    """Plug-in estimate from one shape draw of n copies, reported in the same
    format as the truncated estimators (for equal-budget comparisons)."""
    if not isinstance(alpha, Spectrum):
        alpha = Spectrum(alpha)
    if rng is None:
        raise ValueError("an explicit RngStream is required for reproducibility")
    if q <= 1:
        raise ValueError(f"q must exceed 1, got {q}")
    rows = sample_sw_batch(alpha, n, 1, rng)[0]
    value = float(sum((int(r) / n) ** q for r in rows if r > 0))
    return EstimateReport(
        q=float(q),
        epsilon=math.nan,
        estimate=value,
        eps_prime=math.nan,
        m=alpha.dimension,
        delta_prime=math.nan,
        total_samples=n,
        seed=rng.seed,
        stream_id=rng.stream_id,
        algorithm=Algorithm.PLUG_IN,
    )
