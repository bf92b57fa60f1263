"""Exact shape distributions from Schur-Weyl duality, in rational arithmetic.

Measuring n copies of a state with spectrum alpha in the canonical
permutation-module basis produces a random Young diagram lambda with

    Pr[lambda] = dim_sym(lambda) * s_lambda(alpha)        (Schur-Weyl)
    Pr[lambda] = dim_sym(lambda)^2 / n!                   (Plancherel)

These tables are small for modest n, so every probability here is an exact
Fraction and every identity can be checked with equality, not tolerance.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable

from .partitions import Partition, dim_sym, enumerate_partitions
from .schur import Spectrum, _require_exact, schur_poly

DEFAULT_EXACT_CAP = 16
HARD_EXACT_CAP = 30
EXACT_CAP_ENV = "SWTRACE_EXACT_CAP"


def resolve_exact_cap(cap: int | None = None) -> int:
    """The largest n the exact oracles accept: explicit argument, else the
    SWTRACE_EXACT_CAP environment variable, else 16.  Hard-limited to 30."""
    if cap is None:
        env = os.environ.get(EXACT_CAP_ENV)
        cap = int(env) if env else DEFAULT_EXACT_CAP
    if cap < 1:
        raise ValueError(f"exact cap must be >= 1, got {cap}")
    if cap > HARD_EXACT_CAP:
        raise ValueError(
            f"exact cap {cap} exceeds the hard bound {HARD_EXACT_CAP}; "
            "partition enumeration and determinant sizes blow up past it"
        )
    return cap


def _check_n(n: int, cap: int | None) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    limit = resolve_exact_cap(cap)
    if n > limit:
        raise ValueError(f"n = {n} exceeds the exact-oracle cap {limit}")


class ExactDistribution:
    """An exact probability table over partitions of a fixed n.

    Entries are kept in descending lexicographic shape order and must be
    non-negative Fractions summing to exactly 1.
    """

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict[Partition, Fraction]):
        total = Fraction(0)
        for lam, p in entries.items():
            if lam.n != n:
                raise ValueError(f"support shape {lam} is not a partition of {n}")
            if p < 0:
                raise ValueError(f"negative probability {p} at {lam}")
            total += p
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, expected exactly 1")
        self.n = n
        self.entries = dict(entries)

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.entries.get(lam, Fraction(0))

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def support(self) -> list[Partition]:
        return list(self.entries.keys())

    def __repr__(self) -> str:
        return f"ExactDistribution(n={self.n}, {len(self.entries)} shapes)"


def sw_exact(alpha, n: int, cap: int | None = None) -> ExactDistribution:
    """The exact Schur-Weyl shape distribution for an exact spectrum."""
    values = _require_exact(alpha)
    _check_n(n, cap)
    d = sum(1 for v in values if v != 0)
    entries: dict[Partition, Fraction] = {}
    for lam in enumerate_partitions(n, max_rows=min(d, n)):
        p = dim_sym(lam) * schur_poly(lam, Spectrum(values))
        if p != 0:
            entries[lam] = p
    return ExactDistribution(n, entries)


def planch_exact(n: int, cap: int | None = None) -> ExactDistribution:
    """The exact Plancherel distribution Pr[lambda] = dim_sym(lambda)^2 / n!."""
    _check_n(n, cap)
    fact = math.factorial(n)
    entries = {lam: Fraction(dim_sym(lam) ** 2, fact) for lam in enumerate_partitions(n)}
    return ExactDistribution(n, entries)


def l1_distance(p: ExactDistribution, q: ExactDistribution) -> Fraction:
    """Exact L1 distance sum_lambda |p - q| (twice the total variation)."""
    if p.n != q.n:
        raise ValueError(f"distributions live on different n: {p.n} vs {q.n}")
    support = dict.fromkeys(list(p.entries) + list(q.entries))
    return sum((abs(p[lam] - q[lam]) for lam in support), Fraction(0))


@dataclass(frozen=True)
class PlanchBoundsResult:
    """One row of the uniform-spectrum vs Plancherel sandwich check."""

    n: int
    d: int
    lower: Fraction          # n / (36 d)
    value: Fraction          # exact L1 distance
    upper: float             # sqrt(2) n / d, irrational, display only
    passed: bool


def check_planch_bounds(n: int, d: int, cap: int | None = None) -> PlanchBoundsResult:
    """Check n/(36 d) <= L1(SW_d^n, Planch(n)) <= sqrt(2) n / d for 2 <= n <= d.

    The upper comparison is done on squares (value^2 <= 2 n^2 / d^2) so the
    whole check stays in exact rational arithmetic.
    """
    if not 2 <= n <= d:
        raise ValueError(f"requires 2 <= n <= d, got n = {n}, d = {d}")
    value = l1_distance(sw_exact(Spectrum.uniform(d), n, cap=cap), planch_exact(n, cap=cap))
    lower = Fraction(n, 36 * d)
    upper_sq = Fraction(2 * n * n, d * d)
    passed = lower <= value and value * value <= upper_sq
    return PlanchBoundsResult(
        n=n, d=d, lower=lower, value=value, upper=math.sqrt(2) * n / d, passed=passed
    )


def exact_row_second_moment(alpha, n: int, j: int, cap: int | None = None) -> Fraction:
    """E[(lambda_j - alpha_j n)^2] under the exact Schur-Weyl distribution."""
    values = _require_exact(alpha)
    if not 1 <= j <= len(values):
        raise ValueError(f"row index j must be in 1..{len(values)}, got {j}")
    dist = sw_exact(alpha, n, cap=cap)
    target = values[j - 1] * n
    return sum(
        (p * (Fraction(lam.row(j)) - target) ** 2 for lam, p in dist),
        Fraction(0),
    )


def estimator_pushforward(
    dist: ExactDistribution, f: Callable[[Partition], Hashable]
) -> dict[Hashable, Fraction]:
    """The exact distribution of f(lambda) for lambda drawn from dist."""
    out: dict[Hashable, Fraction] = {}
    for lam, p in dist:
        key = f(lam)
        out[key] = out.get(key, Fraction(0)) + p
    return out
