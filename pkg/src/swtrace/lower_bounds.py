"""Hard instance pairs for spectrum-functional estimation lower bounds.

Two families of barely-distinguishable state pairs:

* qubit pair: spectra (2/3 + eps, 1/3 - eps) vs (2/3 - eps, 1/3 + eps) in a
  shared eigenbasis.  Their infidelity is gamma = 1 - (sqrt(4/9 - eps^2) +
  sqrt(1/9 - eps^2)) ~ (9/4) eps^2, while the power-trace gap is linear in
  eps, so resolving the gap forces Omega(1 / gamma) copies.

* maximally mixed pair: uniform spectra of ranks r < d chosen so that the
  power traces r^(1-q) and d^(1-q) differ by at least eps while the two
  Schur-Weyl shape distributions stay close for small n.

Discrimination experiments draw balanced cases and apply a caller-supplied
decision rule; the exact likelihood rule on shapes attains the classical
Helstrom ceiling 1/2 + L1/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exact_dist import ExactDistribution, l1_distance, resolve_exact_cap, sw_exact
from .partitions import Partition
from .power_trace import power_trace_estimate, true_power_trace
from .sampling import RngStream, sample_sw
from .schur import Spectrum
from .spectrum_estimation import DEFAULT_C

MIN_TRIALS = 100
HARD_SCAN_MAX_N = 30


@dataclass(frozen=True)
class HardInstance:
    """A pair of spectra with a power-trace gap but small statistical distance.

    trace_gap is tr(rho_1^q) - tr(rho_2^q); infidelity is one minus the
    one-copy fidelity of the pair.  For the maximally mixed family the ranks
    are recorded in rank_r and rank_d.
    """

    kind: str
    spectra: tuple[Spectrum, Spectrum]
    q: float
    epsilon: float
    trace_gap: float
    infidelity: float
    rank_r: int | None = None
    rank_d: int | None = None


def commuting_fidelity(a: Sequence, b: Sequence) -> float:
    """Fidelity sum_i sqrt(a_i b_i) of two commuting states, paired by
    position in the shared eigenbasis; the shorter vector is zero-padded."""
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    if len(a) < len(b):
        a += [0.0] * (len(b) - len(a))
    else:
        b += [0.0] * (len(a) - len(b))
    if any(x < 0 for x in a + b):
        raise ValueError("spectra must be non-negative")
    return float(sum(math.sqrt(x * y) for x, y in zip(a, b)))


def hard_pair_qubit(q: float, eps) -> HardInstance:
    """The qubit pair at splitting eps in [0, 1/3).

    Accepts eps as a float or exact Fraction; an exact eps yields exact
    spectra usable with the rational oracles.  Spectra are stored sorted
    (for eps > 1/6 the second pair reverses order); the fidelity pairing
    follows the shared eigenbasis, not the sorted order.
    """
    if q <= 1:
        raise ValueError(f"q must exceed 1, got {q}")
    eps_f = float(eps)
    if not 0 <= eps_f < 1 / 3:
        raise ValueError(f"eps must lie in [0, 1/3), got {eps}")
    if isinstance(eps, (Fraction, int)):
        two_thirds, third = Fraction(2, 3), Fraction(1, 3)
    else:
        two_thirds, third = 2 / 3, 1 / 3
    plus = (two_thirds + eps, third - eps)
    minus = (two_thirds - eps, third + eps)
    # grouping per eigenvalue keeps the small difference free of cancellation
    gap = (float(plus[0]) ** q - float(minus[0]) ** q) + (
        float(plus[1]) ** q - float(minus[1]) ** q
    )
    gamma = 1.0 - (math.sqrt(4 / 9 - eps_f**2) + math.sqrt(1 / 9 - eps_f**2))
    return HardInstance(
        kind="qubit",
        spectra=(Spectrum.from_unsorted(plus), Spectrum.from_unsorted(minus)),
        q=float(q),
        epsilon=eps_f,
        trace_gap=gap,
        infidelity=gamma,
    )


def uniform_rank_pair(r: int, d: int, q: float) -> HardInstance:
    """The maximally mixed pair at explicitly chosen ranks r <= d."""
    if not 1 <= r <= d:
        raise ValueError(f"requires 1 <= r <= d, got r={r}, d={d}")
    if q <= 1:
        raise ValueError(f"q must exceed 1, got {q}")
    gap = float(r) ** (1 - q) - float(d) ** (1 - q)
    return HardInstance(
        kind="maximally_mixed",
        spectra=(Spectrum.uniform(r), Spectrum.uniform(d)),
        q=float(q),
        epsilon=gap,
        trace_gap=gap,
        infidelity=1.0 - math.sqrt(r / d),
        rank_r=r,
        rank_d=d,
    )


def hard_pair_maximally_mixed(q: float, eps: float) -> HardInstance:
    """Uniform spectra of ranks r = floor((2 eps)^(-1/(q-1))) and
    d = floor(eps^(-1/(q-1))) + 1, for 1 < q < 2."""
    if not 1 < q < 2:
        raise ValueError(f"this family requires 1 < q < 2, got q = {q}")
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    exponent = 1 / (q - 1)
    r = math.floor((2 * eps) ** (-exponent))
    if r < 1:
        raise ValueError(f"eps = {eps} is too large for q = {q}: rank r would be 0")
    d = math.floor(eps ** (-exponent)) + 1
    if not 1 / r ** (q - 1) >= 2 * eps:
        raise ArithmeticError(f"rank r = {r} violates 1/r^(q-1) >= 2 eps")
    if not 1 / d ** (q - 1) <= eps:
        raise ArithmeticError(f"rank d = {d} violates 1/d^(q-1) <= eps")
    gap = float(r) ** (1 - q) - float(d) ** (1 - q)
    return HardInstance(
        kind="maximally_mixed",
        spectra=(Spectrum.uniform(r), Spectrum.uniform(d)),
        q=float(q),
        epsilon=float(eps),
        trace_gap=gap,
        infidelity=1.0 - math.sqrt(r / d),
        rank_r=r,
        rank_d=d,
    )


def helstrom_bound(l1) -> float:
    """Best balanced-prior success probability from observations with L1
    distance l1: 1/2 + l1/4."""
    val = float(l1)
    if not 0 <= val <= 2:
        raise ValueError(f"an L1 distance lies in [0, 2], got {l1}")
    return 0.5 + val / 4


def mixed_pair_l1(n: int, r: int, d: int, cap: int | None = None) -> Fraction:
    """Exact L1 distance between the shape distributions of n copies of the
    rank-r and rank-d maximally mixed states."""
    if not 1 <= n <= r <= d:
        raise ValueError(f"requires 1 <= n <= r <= d, got n={n}, r={r}, d={d}")
    return l1_distance(
        sw_exact(Spectrum.uniform(r), n, cap=cap),
        sw_exact(Spectrum.uniform(d), n, cap=cap),
    )


# ---------------------------------------------------------------------------
# discrimination experiments
# ---------------------------------------------------------------------------


def likelihood_rule(p1: ExactDistribution, p2: ExactDistribution) -> Callable[[Partition], int]:
    """Guess the case with the larger exact probability of the observed shape."""

    def rule(lam: Partition) -> int:
        return 1 if p1[lam] > p2[lam] else 2

    return rule


def threshold_rule(threshold: float, above: int = 1) -> Callable[[float], int]:
    """Guess `above` when the observed value exceeds the threshold."""
    below = 2 if above == 1 else 1

    def rule(value: float) -> int:
        return above if value > threshold else below

    return rule


def shape_observation(n: int) -> Callable[[Spectrum, RngStream], Partition]:
    """Observation model: one Schur-Weyl shape draw from n copies."""

    def observe(alpha: Spectrum, rng: RngStream) -> Partition:
        return sample_sw(alpha, n, rng)

    return observe


def estimate_observation(q: float, eps: float, c: float = DEFAULT_C) -> Callable[[Spectrum, RngStream], float]:
    """Observation model: a power-trace estimate at accuracy eps."""

    def observe(alpha: Spectrum, rng: RngStream) -> float:
        return power_trace_estimate(alpha, q, eps, c=c, rng=rng).estimate

    return observe


def discrimination_experiment(
    pair: HardInstance,
    observe: Callable[[Spectrum, RngStream], object],
    decision_rule: Callable[[object], int],
    trials: int,
    rng: RngStream,
) -> float:
    """Balanced binary discrimination: each trial picks a case uniformly,
    draws an observation from it, and scores the decision rule.  Returns the
    empirical success rate.  Trial t runs on rng.child(t)."""
    if trials < MIN_TRIALS:
        raise ValueError(f"at least {MIN_TRIALS} trials required, got {trials}")
    successes = 0
    for t in range(trials):
        stream = rng.child(t)
        case = int(stream.generator().integers(0, 2))  # 0 -> case 1, 1 -> case 2
        obs = observe(pair.spectra[case], stream.child(1))
        if decision_rule(obs) == case + 1:
            successes += 1
    return successes / trials


# ---------------------------------------------------------------------------
# report-only scaling scans (exact, no sampling)
# ---------------------------------------------------------------------------


def min_copies_for_likelihood_success(
    r: int, d: int, target: float = 2 / 3, n_max: int | None = None, cap: int | None = None
) -> tuple[int | None, list[dict]]:
    """Smallest n at which the exact likelihood rule on shapes distinguishes
    uniform rank r from uniform rank d with success above the target.

    The likelihood rule attains exactly 1/2 + L1/4, so the scan is exact.
    Returns (n_star or None, per-n records)."""
    limit = min(n_max if n_max is not None else r, r, resolve_exact_cap(cap))
    records = []
    n_star = None
    for n in range(1, limit + 1):
        success = helstrom_bound(mixed_pair_l1(n, r, d, cap=cap))
        records.append({"n": n, "success": success})
        if n_star is None and success > target:
            n_star = n
            break
    return n_star, records


def qubit_copies_scaling(
    q: float,
    eps_grid: Sequence[Fraction],
    target: float = 2 / 3,
    n_max: int = 30,
) -> dict:
    """For each exact eps, the smallest n at which the likelihood rule on
    shapes of n copies separates the qubit pair with success above the
    target, against the pair's infidelity gamma ~ (9/4) eps^2.

    Returns the grid records and the fitted log-log slope of n_star versus
    gamma (about -1: copies scale like 1/gamma).  Report-only: no constant
    is asserted anywhere."""
    cap = min(n_max, HARD_SCAN_MAX_N)
    records = []
    for eps in eps_grid:
        eps = Fraction(eps)
        pair = hard_pair_qubit(q, eps)
        plus, minus = pair.spectra
        n_star = None
        for n in range(1, cap + 1):
            l1 = l1_distance(sw_exact(plus, n, cap=cap), sw_exact(minus, n, cap=cap))
            if helstrom_bound(l1) > target:
                n_star = n
                break
        records.append(
            {"eps": float(eps), "gamma": pair.infidelity, "n_star": n_star}
        )
    fitted = [(math.log(rec["gamma"]), math.log(rec["n_star"])) for rec in records if rec["n_star"]]
    slope = None
    if len(fitted) >= 2:
        xs, ys = zip(*fitted)
        slope = float(np.polyfit(xs, ys, 1)[0])
    return {"q": float(q), "target": target, "records": records, "slope": slope}
