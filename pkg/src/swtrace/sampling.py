"""Monte Carlo samplers for Schur-Weyl and Plancherel shape distributions.

Two exact sampling routes are implemented:

* Row insertion (RSK).  Insert n i.i.d. letters drawn from the spectrum into
  a tableau, tracking only row lengths and per-row letter counts (the
  patience-sorting view).  Cost O(n) insertions per draw; the hot loop is a
  compiled kernel.

* Ordered-walk rejection, used automatically for large n when the spectrum is
  strictly decreasing with at most DOOB_MAX_D entries.  The shape distribution
  equals the law at time n of the multinomial counts walk started at the
  staircase delta = (d-1, ..., 1, 0) and conditioned (in the Doob sense, via
  the harmonic function h(z) = det(alpha_j^{z_i}) / prod_i alpha_i^{z_i}) to
  stay strictly ordered forever.  Concretely, with z = lambda + delta:

      Pr[walk stays ordered for n steps and ends at z] = f^lambda * prod alpha_i^lambda_i,

  so proposing counts ~ Multinomial(n, alpha) and accepting with probability
  B(z) * h(z), where B(z) = Vandermonde(z) * prod lambda_i! / prod z_i! is the
  ordered-bridge probability, reproduces the target law exactly.  The overall
  acceptance rate is h(delta) = Vandermonde(alpha) / prod alpha_i^(d-i), which
  is why this route is gated on well-separated spectra.  Cost per draw is
  O(d^2 + d!) arithmetic, independent of n.

Both routes are validated against the exact rational tables in the tests.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .partitions import Partition
from .schur import Spectrum

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

DOOB_MAX_D = 6
DOOB_MIN_N = 10_000
DOOB_MIN_ACCEPT = 0.02
PLANCH_MAX_N = 2000
_CHUNK_LETTERS = 8_000_000


def _splitmix64(x: int) -> int:
    """One round of the splitmix64 mixer; a fixed bijection on 64-bit words."""
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class RngStream:
    """A named, splittable random stream: (seed, stream_id) -> Philox key.

    Identical (seed, stream_id) yields an identical draw sequence on every
    platform.  child(i) derives disjoint substreams deterministically, so
    batch i of a parallel fan-out reproduces the serial run.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream_id < 2**64:
            raise ValueError(f"stream_id must be a 64-bit unsigned integer, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, index: int) -> "RngStream":
        if index < 0:
            raise ValueError(f"child index must be >= 0, got {index}")
        mixed = _splitmix64((self.stream_id ^ _splitmix64(index + 1)) & _MASK64)
        return RngStream(self.seed, mixed)


# ---------------------------------------------------------------------------
# row insertion
# ---------------------------------------------------------------------------


def rs_shape(word: Sequence[int]) -> Partition:
    """Shape of the insertion tableau of a word with letters in 1..d.

    Row insertion: a letter bumps the leftmost entry strictly greater than it,
    and the bumped entry is inserted into the next row.  Only row contents are
    kept, as sorted lists.  Reference implementation; the compiled kernel in
    this module must agree with it letter for letter.
    """
    letters = list(word)
    if not letters:
        raise ValueError("word must be non-empty")
    for x in letters:
        if not isinstance(x, (int, np.integer)) or x < 1:
            raise ValueError(f"letters must be integers >= 1, got {x!r}")
    rows: list[list[int]] = []
    for x in letters:
        r = 0
        while True:
            if r == len(rows):
                rows.append([x])
                break
            row = rows[r]
            pos = bisect_right(row, x)
            if pos == len(row):
                row.append(x)
                break
            x, row[pos] = row[pos], x
            r += 1
    return Partition(tuple(len(row) for row in rows))


@njit(cache=True, nogil=True)
def _rsk_rows_kernel(letters, n, k, d, out):  # pragma: no cover - compiled
    # Rows are stored as per-letter counts: counts[r, c] is the number of
    # copies of letter c in row r.  Bumping the leftmost entry > x in a
    # weakly increasing row means decrementing the smallest present letter
    # above x.  Entries of row r are always >= r, so r < d throughout.
    counts = np.zeros((d, d), dtype=np.int64)
    rowlen = np.zeros(d, dtype=np.int64)
    for t in range(k):
        counts[:, :] = 0
        rowlen[:] = 0
        base = t * n
        for idx in range(n):
            x = letters[base + idx]
            r = 0
            while True:
                y = -1
                for c in range(x + 1, d):
                    if counts[r, c] > 0:
                        y = c
                        break
                if y < 0:
                    counts[r, x] += 1
                    rowlen[r] += 1
                    break
                counts[r, y] -= 1
                counts[r, x] += 1
                x = y
                r += 1
        for j in range(d):
            out[t, j] = rowlen[j]


def _rsk_shape_rows(letters: np.ndarray, n: int, k: int, d: int) -> np.ndarray:
    out = np.zeros((k, d), dtype=np.int64)
    _rsk_rows_kernel(letters, n, k, d, out)
    return out


def _draw_letters(gen: np.random.Generator, vals: np.ndarray, cdf: np.ndarray | None, n: int) -> np.ndarray:
    """n i.i.d. letters in 0..d-1 with Pr[i] = vals[i]; cdf None means uniform."""
    d = len(vals)
    if cdf is None:
        return gen.integers(0, d, size=n, dtype=np.int64)
    letters = np.searchsorted(cdf, gen.random(n), side="right")
    return np.minimum(letters, d - 1).astype(np.int64, copy=False)


# ---------------------------------------------------------------------------
# ordered-walk rejection
# ---------------------------------------------------------------------------


def _doob_state(alpha: Spectrum):
    """(float values, log alpha, overall acceptance rate) when the rejection
    route applies to this spectrum, else None."""
    trimmed = alpha.without_trailing_zeros()
    if not trimmed.is_strictly_decreasing():
        return None
    vals = trimmed.as_float_array()
    d = len(vals)
    if d > DOOB_MAX_D:
        return None
    log_h_delta = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            log_h_delta += math.log(vals[i] - vals[j])
        log_h_delta -= (d - 1 - i) * math.log(vals[i])
    accept = math.exp(log_h_delta)
    if accept < DOOB_MIN_ACCEPT:
        return None
    return vals, np.log(vals), accept


def _doob_accept_prob(z: np.ndarray, counts: np.ndarray, log_alpha: np.ndarray) -> np.ndarray:
    """Acceptance probabilities B(z) * h(z) for a batch of ordered proposals."""
    m, d = z.shape
    zf = z.astype(np.float64)
    # log B(z) = sum_{i<j} log(z_i - z_j) - sum_i sum_{t=1..delta_i} log(counts_i + t)
    log_b = np.zeros(m)
    for i in range(d):
        for j in range(i + 1, d):
            log_b += np.log(zf[:, i] - zf[:, j])
        for t in range(1, d - i):
            log_b -= np.log(counts[:, i].astype(np.float64) + t)
    # h(z) = sum_sigma sgn(sigma) exp(sum_i z_i (log alpha_sigma(i) - log alpha_i));
    # the identity term is 1 and every other term is exponentially damped.
    h = np.zeros(m)
    for perm in itertools.permutations(range(d)):
        sign = 1
        seen = list(perm)
        for i in range(d):          # parity by counting transpositions
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        shift = log_alpha[list(perm)] - log_alpha
        h += sign * np.exp(zf @ shift)
    return np.clip(np.exp(log_b) * np.clip(h, 0.0, 1.0), 0.0, 1.0)


def _doob_draws(gen: np.random.Generator, vals: np.ndarray, log_alpha: np.ndarray,
                accept_rate: float, n: int, k: int) -> np.ndarray:
    """k exact Schur-Weyl draws (rows of counts) by multinomial rejection."""
    d = len(vals)
    delta = np.arange(d - 1, -1, -1, dtype=np.int64)
    out = np.empty((k, d), dtype=np.int64)
    have = 0
    while have < k:
        need = k - have
        batch = max(16, math.ceil(1.3 * need / accept_rate))
        counts = gen.multinomial(n, vals, size=batch).astype(np.int64)
        z = counts + delta
        ordered = np.all(z[:, :-1] > z[:, 1:], axis=1) if d > 1 else np.ones(batch, dtype=bool)
        p = np.zeros(batch)
        if ordered.any():
            p[ordered] = _doob_accept_prob(z[ordered], counts[ordered], log_alpha)
        keep = gen.random(batch) < p
        taken = counts[keep][: k - have]
        out[have : have + len(taken)] = taken
        have += len(taken)
    return out


# ---------------------------------------------------------------------------
# public samplers
# ---------------------------------------------------------------------------


def _rows_to_partition(rows: np.ndarray) -> Partition:
    return Partition(tuple(int(r) for r in rows if r > 0))


def sample_sw_batch(
    alpha,
    n: int,
    k: int,
    rng: RngStream,
    method: str = "auto",
    split_streams: bool = False,
) -> np.ndarray:
    """k independent draws from the Schur-Weyl shape distribution.

    Returns a (k, d) int64 array of row lengths padded with zeros, d being the
    full spectrum length.  With split_streams, draw l consumes rng.child(l),
    so a parallel fan-out over draws reproduces the serial result.
    """
    if not isinstance(alpha, Spectrum):
        alpha = Spectrum(alpha)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if method not in ("auto", "rsk", "doob"):
        raise ValueError(f"unknown method {method!r}")

    d_full = alpha.dimension
    state = _doob_state(alpha) if method in ("auto", "doob") else None
    if method == "doob" and state is None:
        raise ValueError("rejection route requires a strictly decreasing, "
                         f"well-separated spectrum with at most {DOOB_MAX_D} entries")
    use_doob = state is not None and (method == "doob" or n >= DOOB_MIN_N)

    out = np.zeros((k, d_full), dtype=np.int64)
    if use_doob:
        vals, log_alpha, accept = state
        d = len(vals)
        if split_streams:
            for l in range(k):
                gen = rng.child(l).generator()
                out[l, :d] = _doob_draws(gen, vals, log_alpha, accept, n, 1)[0]
        else:
            out[:, :d] = _doob_draws(rng.generator(), vals, log_alpha, accept, n, k)
        return out

    trimmed = alpha.without_trailing_zeros()
    vals = trimmed.as_float_array()
    d = len(vals)
    uniform = bool(np.all(vals == vals[0]))
    cdf = None if uniform else np.cumsum(vals)
    if split_streams:
        for l in range(k):
            gen = rng.child(l).generator()
            letters = _draw_letters(gen, vals, cdf, n)
            out[l, :d] = _rsk_shape_rows(letters, n, 1, d)[0]
    else:
        gen = rng.generator()
        per_chunk = max(1, _CHUNK_LETTERS // n)
        done = 0
        while done < k:
            take = min(per_chunk, k - done)
            letters = _draw_letters(gen, vals, cdf, n * take)
            out[done : done + take, :d] = _rsk_shape_rows(letters, n, take, d)
            done += take
    return out


def sample_sw(alpha, n: int, rng: RngStream, method: str = "auto") -> Partition:
    """One exact draw from the Schur-Weyl shape distribution."""
    rows = sample_sw_batch(alpha, n, 1, rng, method=method)
    return _rows_to_partition(rows[0])


def sample_planch_batch(n: int, k: int, rng: RngStream) -> np.ndarray:
    """k draws from the Plancherel distribution: shapes of uniformly random
    permutations under row insertion.  Returns (k, n) padded row lengths."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > PLANCH_MAX_N:
        raise ValueError(f"n = {n} exceeds the permutation sampler bound {PLANCH_MAX_N}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    gen = rng.generator()
    out = np.zeros((k, n), dtype=np.int64)
    per_chunk = max(1, _CHUNK_LETTERS // n)
    done = 0
    while done < k:
        take = min(per_chunk, k - done)
        # argsort of i.i.d. uniforms is a uniform permutation
        letters = np.argsort(gen.random((take, n)), axis=1, kind="stable").astype(np.int64)
        out[done : done + take] = _rsk_shape_rows(letters.ravel(), n, take, n)
        done += take
    return out


def sample_planch(n: int, rng: RngStream) -> Partition:
    """One exact Plancherel draw."""
    return _rows_to_partition(sample_planch_batch(n, 1, rng)[0])
