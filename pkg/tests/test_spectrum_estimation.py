import math
from fractions import Fraction

import numpy as np
import pytest

from swtrace.sampling import RngStream
from swtrace.schur import Spectrum
from swtrace.spectrum_estimation import (
    DEFAULT_C,
    batch_parameters,
    median,
    spectrum_estimate,
)

HALF = Fraction(1, 2)


class TestMedian:
    def test_odd_length(self):
        assert median([3.0, 1.0, 2.0]) == 2.0
        assert median([5.0]) == 5.0
        assert median([1.0, 9.0, 2.0, 8.0, 3.0]) == 3.0

    def test_no_averaging_happens(self):
        # the middle order statistic is returned verbatim
        assert median([0.1, 0.2, 0.7]) == 0.2

    @pytest.mark.parametrize("values", [[], [1.0, 2.0], [1.0] * 6])
    def test_even_or_empty_rejected(self, values):
        with pytest.raises(ValueError):
            median(values)


class TestBatchParameters:
    def test_frozen_example(self):
        assert batch_parameters(0.1, 0.05, c=1.0) == (400, 267)

    def test_default_constant_doubles_batch(self):
        assert batch_parameters(0.1, 0.05, c=2.0) == (800, 267)
        assert DEFAULT_C == 2.0

    def test_batch_count_is_odd(self):
        for delta in (0.3, 0.1, 0.05, 0.01, 1 / 150, 1e-4):
            _, k = batch_parameters(0.1, delta)
            assert k % 2 == 1
            assert k >= math.ceil(72 * math.log(2 / delta))

    def test_batch_size_grows_quadratically(self):
        n1, _ = batch_parameters(0.2, 0.1)
        n2, _ = batch_parameters(0.1, 0.1)
        n4, _ = batch_parameters(0.05, 0.1)
        assert n2 == 4 * n1
        assert n4 == 4 * n2

    @pytest.mark.parametrize("eps,delta", [(0, 0.1), (-0.1, 0.1), (0.1, 0), (0.1, 1.0)])
    def test_domain(self, eps, delta):
        with pytest.raises(ValueError):
            batch_parameters(eps, delta)


class TestSpectrumEstimate:
    def test_pure_state_is_estimated_exactly(self):
        est = spectrum_estimate(Spectrum((Fraction(1),)), 0.1, 0.05, rng=RngStream(0))
        assert est.values == (1.0,)
        assert est.n_per_batch == 800
        assert est.k_batches == 267
        assert est.total_samples == 800 * 267

    def test_report_fields(self):
        est = spectrum_estimate(Spectrum((HALF, HALF)), 0.2, 0.2, c=1.0, rng=RngStream(21, 5))
        assert est.epsilon == 0.2
        assert est.delta == 0.2
        assert est.c == 1.0
        assert est.seed == 21
        assert est.stream_id == 5
        assert len(est.values) == 2
        assert est.total_samples == est.n_per_batch * est.k_batches

    def test_deterministic_given_stream(self):
        a = spectrum_estimate(Spectrum((HALF, HALF)), 0.3, 0.3, rng=RngStream(3))
        b = spectrum_estimate(Spectrum((HALF, HALF)), 0.3, 0.3, rng=RngStream(3))
        assert a.values == b.values

    def test_values_are_close_for_fixed_seeds(self):
        alpha = Spectrum((HALF, Fraction(3, 10), Fraction(1, 5)))
        for seed in (1, 2, 3):
            est = spectrum_estimate(alpha, 0.1, 0.05, rng=RngStream(seed))
            errs = [abs(v - float(a)) for v, a in zip(est.values, alpha.values)]
            assert max(errs) <= 0.1

    def test_values_stay_in_unit_interval(self):
        alpha = Spectrum((Fraction(3, 5), Fraction(2, 5)))
        est = spectrum_estimate(alpha, 0.3, 0.3, rng=RngStream(17))
        assert len(est.values) == 2
        assert all(0.0 <= v <= 1.0 for v in est.values)

    def test_rng_is_required(self):
        with pytest.raises(ValueError):
            spectrum_estimate(Spectrum((Fraction(1),)), 0.1, 0.1)


def test_parallel_batches_reproduce_serial_result():
    # the estimator fans batches out over child streams l = 0..k-1
    alpha = Spectrum((HALF, HALF))
    root = RngStream(40, 9)
    est = spectrum_estimate(alpha, 0.25, 0.3, c=1.0, rng=root)
    n, k = batch_parameters(0.25, 0.3, c=1.0)
    from swtrace.sampling import sample_sw_batch

    rows = np.stack([sample_sw_batch(alpha, n, 1, root.child(l))[0] for l in range(k)])
    manual = tuple(float(v) for v in np.median(rows / n, axis=0))
    assert est.values == manual
