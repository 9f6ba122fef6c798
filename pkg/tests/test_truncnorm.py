import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from ar1bayes.truncnorm import (
    TruncatedNormal,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
    tn_cdf,
    tn_mean,
    tn_pdf,
    tn_quantile,
    tn_sample,
    tn_variance,
)

# 80-digit mpmath closed-form moments
MPMATH_MOMENTS = {
    (0.0, 1.0): (0.0, 0.2911250947727932),
    (0.75, 1.0): (0.21228887436892020, 0.26755950071112612),
    (3.0, 0.05): (0.99875155763963681, 1.5566709464784723e-6),
    (-2.0, 0.3): (-0.92163487722117351, 0.0054937847530329511),
    (0.2, 0.5): (0.15276093667850282, 0.18607705537854442),
    (5.0, 1.0): (0.77445306819380244, 0.046557157840402451),
}

locations = st.floats(-3.0, 3.0)
scales = st.floats(0.05, 5.0)


def unit(d=0.0, s=1.0):
    return TruncatedNormal(d, s, -1.0, 1.0)


class TestStandardNormal:
    def test_cdf_at_zero(self):
        assert std_normal_cdf(0.0) == 0.5

    def test_cdf_reference_points(self):
        assert std_normal_cdf(1.959964) == pytest.approx(0.97500000090355760, abs=1e-12)
        assert std_normal_cdf(-8.0) == pytest.approx(6.2209605742717841e-16, rel=1e-10)
        assert std_normal_cdf(-8.0) < 1e-14

    def test_quantile_reference_points(self):
        assert std_normal_quantile(0.5) == 0.0
        assert std_normal_quantile(0.975) == pytest.approx(1.959964, abs=1e-6)
        assert std_normal_quantile(0.158655) == pytest.approx(-1.0, abs=1e-4)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
    def test_quantile_rejects_out_of_range(self, p):
        with pytest.raises(ValueError):
            std_normal_quantile(p)

    @given(st.floats(1e-300, 1.0 - 1e-16))
    def test_quantile_inverts_cdf(self, p):
        assert std_normal_cdf(std_normal_quantile(p)) == pytest.approx(p, rel=1e-10, abs=1e-300)

    @given(st.floats(-30, 30), st.floats(0, 5))
    def test_cdf_monotone(self, x, dx):
        assert std_normal_cdf(x) <= std_normal_cdf(x + dx)

    def test_pdf_peak(self):
        assert std_normal_pdf(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-15)


class TestConstruction:
    @pytest.mark.parametrize("args", [(0, 0, -1, 1), (0, -1, -1, 1), (0, 1, 1, 1), (0, 1, 1, -1),
                                      (float("nan"), 1, -1, 1), (0, float("inf"), -1, 1)])
    def test_rejects_invalid(self, args):
        with pytest.raises(ValueError):
            TruncatedNormal(*args)

    def test_rejects_massless_interval(self):
        with pytest.raises(ValueError, match="no probability mass"):
            TruncatedNormal(0.0, 1e-300, 1.0, 1.0 + 2.3e-16)

    def test_far_tail_mass_is_still_representable(self):
        assert TruncatedNormal(1e6, 1e-3).mean() == 1.0
        dist = TruncatedNormal(-50.0, 0.5, -1.0, 1.0)
        assert math.isfinite(dist.log_normalizer)
        assert dist.log_normalizer < -4000


class TestPdfCdf:
    def test_pdf_at_centre(self):
        assert tn_pdf(unit(), 0.0) == pytest.approx(0.5843685672568166, rel=1e-13)

    def test_pdf_outside_support(self):
        assert tn_pdf(unit(), 2.0) == 0.0
        assert tn_pdf(unit(), -1.0000001) == 0.0

    def test_pdf_mode_at_interior_location(self):
        dist = unit(0.5, 0.2)
        grid = np.linspace(-1, 1, 20001)
        assert grid[np.argmax(tn_pdf(dist, grid))] == pytest.approx(0.5, abs=1e-4)

    def test_cdf_reference_points(self):
        dist = unit()
        assert tn_cdf(dist, 0.0) == pytest.approx(0.5, abs=1e-15)
        assert tn_cdf(dist, 1.0) == 1.0
        assert tn_cdf(dist, -1.0) == 0.0
        # (Phi(0.5) - Phi(-1)) / (Phi(1) - Phi(-1)) at 60 digits
        assert tn_cdf(dist, 0.5) == pytest.approx(0.7804532125940016, abs=1e-14)

    @pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
    @settings(max_examples=60, deadline=None)
    @given(locations, scales)
    def test_pdf_integrates_to_one(self, d, s):
        dist = unit(d, s)
        pts = [tn_quantile(dist, q) for q in (1e-12, 0.5, 1 - 1e-12)]
        total, _ = integrate.quad(lambda x: tn_pdf(dist, x), -1, 1, points=pts,
                                  epsabs=1e-13, epsrel=1e-13, limit=400)
        assert total == pytest.approx(1.0, abs=1e-10)

    @given(locations, scales, st.floats(-1, 1), st.floats(-1, 1))
    def test_cdf_matches_ratio_and_is_monotone(self, d, s, x1, x2):
        dist = unit(d, s)
        lo, hi = min(x1, x2), max(x1, x2)
        assert tn_cdf(dist, lo) <= tn_cdf(dist, hi)
        if dist.normalizer > 1e-8:
            z = (std_normal_cdf((hi - d) / s) - std_normal_cdf((-1 - d) / s)) / \
                (std_normal_cdf((1 - d) / s) - std_normal_cdf((-1 - d) / s))
            assert tn_cdf(dist, hi) == pytest.approx(z, abs=1e-9)


class TestQuantile:
    def test_endpoints(self):
        dist = unit(0.3, 0.7)
        assert tn_quantile(dist, 0.0) == -1.0
        assert tn_quantile(dist, 1.0) == 1.0

    def test_median_of_symmetric(self):
        assert tn_quantile(unit(), 0.5) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("p", [-0.01, 1.01, float("nan")])
    def test_rejects_out_of_range(self, p):
        with pytest.raises(ValueError):
            tn_quantile(unit(), p)

    def test_round_trip_on_random_pairs(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(1000):
            dist = unit(rng.uniform(-3, 3), rng.uniform(0.05, 5))
            p = rng.uniform()
            worst = max(worst, abs(tn_cdf(dist, tn_quantile(dist, p)) - p))
        assert worst <= 1e-9

    @given(st.floats(-60, 60), st.floats(0.01, 5), st.floats(0.001, 0.999))
    def test_round_trip_into_far_tails(self, d, s, p):
        dist = unit(d, s)
        assert tn_cdf(dist, tn_quantile(dist, p)) == pytest.approx(p, abs=1e-8)


class TestMoments:
    @pytest.mark.parametrize("key", sorted(MPMATH_MOMENTS))
    def test_against_high_precision_reference(self, key):
        mean, var = MPMATH_MOMENTS[key]
        dist = unit(*key)
        assert tn_mean(dist) == pytest.approx(mean, abs=1e-13)
        assert tn_variance(dist) == pytest.approx(var, rel=1e-10)

    def test_symmetric_mean_is_zero(self):
        assert tn_mean(unit()) == 0.0

    def test_far_location_mean_below_upper_bound(self):
        # the mean is well inside the support, not pressed against it
        assert 0.77 < tn_mean(unit(5.0, 1.0)) < 0.78

    def test_narrow_parent_variance_approaches_sigma2(self):
        assert tn_variance(unit(0.0, 0.01)) == pytest.approx(1e-4, rel=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(locations, scales)
    def test_moments_match_quadrature(self, d, s):
        dist = unit(d, s)
        pts = [min(max(d, -1), 1)]
        kw = dict(points=pts, epsabs=1e-14, epsrel=1e-13, limit=400)
        m, _ = integrate.quad(lambda x: x * tn_pdf(dist, x), -1, 1, **kw)
        v, _ = integrate.quad(lambda x: (x - m) ** 2 * tn_pdf(dist, x), -1, 1, **kw)
        assert tn_mean(dist) == pytest.approx(m, abs=1e-8)
        assert tn_variance(dist) == pytest.approx(v, abs=1e-8)

    @given(st.floats(-100, 100), st.floats(0.001, 10))
    def test_reflection_is_exact(self, d, s):
        assert tn_mean(unit(d, s)) == -tn_mean(unit(-d, s))

    @given(st.floats(-100, 100), st.floats(0.001, 10))
    def test_variance_bounds(self, d, s):
        dist = unit(d, s)
        v = tn_variance(dist)
        assert 0.0 < v <= s * s * (1 + 1e-12)
        assert v <= 1.0
        assert -1.0 <= tn_mean(dist) <= 1.0


class TestSampling:
    def test_reproducible(self):
        dist = unit(0.4, 0.6)
        a = tn_sample(dist, np.random.default_rng(3), 50)
        b = tn_sample(dist, np.random.default_rng(3), 50)
        assert np.array_equal(a, b)

    def test_batching_does_not_change_stream(self):
        dist = unit(0.4, 0.6)
        rng = np.random.default_rng(11)
        pieces = np.concatenate([tn_sample(dist, rng, 7), tn_sample(dist, rng, 13)])
        assert np.array_equal(pieces, tn_sample(dist, np.random.default_rng(11), 20))

    def test_million_draws_mean(self):
        dist = unit()
        x = tn_sample(dist, np.random.default_rng(2024), 10**6)
        assert np.all((x >= -1) & (x <= 1))
        assert abs(x.mean()) < 0.003
