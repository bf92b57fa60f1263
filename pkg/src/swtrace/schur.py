"""Spectra and exact Schur polynomial evaluation.

The production path evaluates s_lam(alpha) through the Jacobi-Trudi identity

    s_lam = det( h_{lam_i - i + j} )_{1 <= i,j <= len(lam)}

over exact rationals, with the determinant computed by fraction-free
(Bareiss) elimination on a denominator-cleared integer matrix.  A brute-force
semistandard-tableau sum and the hook-content product for uniform spectra are
provided as independent routes for cross-checking.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .partitions import Partition, hook_lengths

Rational = Fraction | int

FLOAT_SUM_TOL = 1e-12


class Spectrum:
    """A non-increasing probability vector, exact (Fraction) or binary64.

    Exact spectra are required by the exact-distribution oracles; float
    spectra are accepted by the Monte Carlo samplers and estimators.
    """

    __slots__ = ("values", "is_exact")

    def __init__(self, values):
        values = tuple(values)
        if not values:
            raise ValueError("spectrum must have at least one entry")
        exact = all(isinstance(v, (Fraction, int)) for v in values)
        if exact:
            values = tuple(Fraction(v) for v in values)
        else:
            values = tuple(float(v) for v in values)
        for v in values:
            if v < 0:
                raise ValueError(f"spectrum entries must be non-negative, got {v}")
        for a, b in zip(values, values[1:]):
            if a < b:
                raise ValueError(f"spectrum must be non-increasing, got {values}")
        total = sum(values)
        if exact:
            if total != 1:
                raise ValueError(f"exact spectrum must sum to 1, got {total}")
        elif abs(total - 1.0) > FLOAT_SUM_TOL:
            raise ValueError(f"spectrum sums to {total}, expected 1 within {FLOAT_SUM_TOL}")
        self.values = values
        self.is_exact = exact

    @classmethod
    def uniform(cls, d: int) -> "Spectrum":
        """The maximally mixed spectrum (1/d, ..., 1/d), exact."""
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        return cls([Fraction(1, d)] * d)

    @classmethod
    def zipf(cls, d: int, s: float = 1.0) -> "Spectrum":
        """Power-law spectrum with alpha_i proportional to 1/i^s, binary64."""
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        w = np.arange(1, d + 1, dtype=np.float64) ** (-float(s))
        w /= w.sum()
        return cls(w.tolist())

    @classmethod
    def from_unsorted(cls, values) -> "Spectrum":
        return cls(sorted(values, reverse=True))

    @property
    def dimension(self) -> int:
        return len(self.values)

    def as_float_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=np.float64)

    def without_trailing_zeros(self) -> "Spectrum":
        vals = list(self.values)
        while len(vals) > 1 and vals[-1] == 0:
            vals.pop()
        return Spectrum(vals)

    def is_strictly_decreasing(self) -> bool:
        vals = self.without_trailing_zeros().values
        return all(a > b for a, b in zip(vals, vals[1:])) and vals[-1] > 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Spectrum) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"Spectrum{self.values}"


def _require_exact(alpha: Spectrum) -> tuple[Fraction, ...]:
    if not isinstance(alpha, Spectrum):
        alpha = Spectrum(alpha)
    if not alpha.is_exact:
        raise ValueError("exact (rational) spectrum required for exact evaluation")
    return alpha.values


def complete_homogeneous(alpha: Sequence[Rational], k_max: int) -> list[Fraction]:
    """h_0..h_k_max evaluated at the given rationals, by the one-variable-at-a-
    time recurrence h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j)."""
    h = [Fraction(0)] * (k_max + 1)
    h[0] = Fraction(1)
    for x in alpha:
        x = Fraction(x)
        if x == 0:
            continue
        for k in range(1, k_max + 1):
            h[k] += x * h[k - 1]
    return h


def _det_bareiss(mat: list[list[Fraction]]) -> Fraction:
    """Exact determinant: clear denominators, then fraction-free elimination."""
    size = len(mat)
    if size == 0:
        return Fraction(1)
    den = 1
    for row in mat:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    a = [[int(Fraction(x) * den) for x in row] for row in mat]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[size - 1][size - 1], den**size)


def schur_poly(lam: Partition, alpha) -> Fraction:
    """s_lam evaluated at an exact spectrum, via Jacobi-Trudi.

    Returns 0 when lam has more rows than the spectrum has entries; appending
    zero entries to the spectrum never changes the value.
    """
    values = _require_exact(alpha)
    d = sum(1 for v in values if v != 0)
    ell = lam.num_rows
    if ell == 0:
        return Fraction(1)
    if ell > d:
        return Fraction(0)
    k_max = lam.rows[0] + ell - 1
    h = complete_homogeneous(values, k_max)

    def h_at(k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        return h[k]

    mat = [[h_at(lam.rows[i] - (i + 1) + (j + 1)) for j in range(ell)] for i in range(ell)]
    return _det_bareiss(mat)


def schur_poly_float(lam: Partition, values: Sequence[float]) -> float:
    """Binary64 Jacobi-Trudi evaluation, for large-d sanity plots only."""
    vals = [float(v) for v in values]
    ell = lam.num_rows
    d = sum(1 for v in vals if v != 0)
    if ell == 0:
        return 1.0
    if ell > d:
        return 0.0
    k_max = lam.rows[0] + ell - 1
    h = np.zeros(k_max + 1)
    h[0] = 1.0
    for x in vals:
        for k in range(1, k_max + 1):
            h[k] += x * h[k - 1]
    mat = np.zeros((ell, ell))
    for i in range(ell):
        for j in range(ell):
            k = lam.rows[i] - (i + 1) + (j + 1)
            mat[i, j] = h[k] if k >= 0 else 0.0
    return float(np.linalg.det(mat))


SSYT_MAX_N = 10
SSYT_MAX_D = 5


def schur_ssyt_oracle(lam: Partition, alpha) -> Fraction:
    """s_lam by explicit enumeration of semistandard tableaux with entries in
    1..d: rows weakly increase, columns strictly increase, each tableau
    contributes prod_i alpha_i^(multiplicity of i).

    Exponential-time reference, guarded to n <= 10 and d <= 5.
    """
    values = _require_exact(alpha)
    d = len(values)
    if lam.n > SSYT_MAX_N:
        raise ValueError(f"ssyt oracle limited to n <= {SSYT_MAX_N}, got n = {lam.n}")
    if d > SSYT_MAX_D:
        raise ValueError(f"ssyt oracle limited to d <= {SSYT_MAX_D}, got d = {d}")
    if lam.num_rows == 0:
        return Fraction(1)
    if lam.num_rows > d:
        return Fraction(0)

    rows = lam.rows
    cells = [(i, j) for i, r in enumerate(rows) for j in range(r)]
    fill = [[0] * r for r in rows]
    total = Fraction(0)

    def extend(idx: int, weight: Fraction) -> None:
        nonlocal total
        if idx == len(cells):
            total += weight
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, fill[i][j - 1])        # weakly increasing along the row
        if i > 0:
            lo = max(lo, fill[i - 1][j] + 1)    # strictly increasing down the column
        for v in range(lo, d + 1):
            fill[i][j] = v
            extend(idx + 1, weight * values[v - 1])
        fill[i][j] = 0

    extend(0, Fraction(1))
    return total


def schur_uniform(lam: Partition, d: int) -> Fraction:
    """s_lam(1/d, ..., 1/d) by the hook-content product
    d^(-n) * prod_cells (d + j - i) / hook(i, j)."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if lam.num_rows > d:
        return Fraction(0)
    if lam.num_rows == 0:
        return Fraction(1)
    hooks = hook_lengths(lam)
    num = 1
    idx = 0
    for i, r in enumerate(lam.rows):
        for j in range(r):
            num *= d + j - i
            idx += 1
    return Fraction(num, math.prod(hooks) * d**lam.n)
