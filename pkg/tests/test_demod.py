"""Demodulator tests: hard decisions, exact and max-log L-values."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pamber import (
    ChannelParams,
    abd_decide,
    exact_llr,
    make_pam,
    maxlog_llr,
    named_labeling,
    nearest_point_index,
    pattern_exact_llr,
    pattern_from_index,
    pattern_maxlog_llr,
    sample_labelings,
    sd_decide,
)
from pamber.pattern_classes import invert, pattern_indices, reflect


def naive_exact_llr(y, pattern, constellation, snr):
    """Direct two-sum evaluation; only safe at moderate exponents."""
    pts = constellation.points
    num = sum(math.exp(-snr * (y - x) ** 2) for x, b in zip(pts, pattern.bits) if b)
    den = sum(
        math.exp(-snr * (y - x) ** 2) for x, b in zip(pts, pattern.bits) if not b
    )
    return math.log(num / den)


def naive_maxlog_llr(y, pattern, constellation, snr):
    pts = constellation.points
    best1 = min((y - x) ** 2 for x, b in zip(pts, pattern.bits) if b)
    best0 = min((y - x) ** 2 for x, b in zip(pts, pattern.bits) if not b)
    return snr * (best0 - best1)


class TestChannelParams:
    def test_db_round_trip(self):
        for db in (-7.5, 0.0, 3.0, 21.7):
            assert ChannelParams.from_db(db).snr_db == pytest.approx(db, abs=1e-12)

    def test_db_examples(self):
        assert ChannelParams.from_db(10.0).snr == pytest.approx(10.0, rel=1e-15)
        assert ChannelParams.from_db(0.0).snr == 1.0

    def test_noise_variance(self):
        p = ChannelParams(4.0)
        assert p.n0 == 0.25
        assert p.noise_std == pytest.approx(math.sqrt(0.125), rel=1e-15)

    @pytest.mark.parametrize("snr", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_snr(self, snr):
        with pytest.raises(ValueError):
            ChannelParams(snr)


class TestSdDecide:
    def test_noiseless_identity(self):
        c = make_pam(4)
        lab = named_labeling("BRGC", 4)
        np.testing.assert_array_equal(sd_decide(c.points[1], lab, c), [0, 1])

    def test_far_right_is_top_label(self):
        c = make_pam(4)
        lab = named_labeling("BRGC", 4)
        np.testing.assert_array_equal(sd_decide(1e6, lab, c), [1, 0])

    def test_midpoint_tie_goes_low(self):
        c = make_pam(8)
        lab = named_labeling("NBC", 8)
        # exact center is the midpoint between points 4 and 5
        assert nearest_point_index(0.0, c) == 3
        np.testing.assert_array_equal(sd_decide(0.0, lab, c), lab.matrix[3])

    def test_vectorized_matches_scalar(self):
        c = make_pam(8)
        lab = named_labeling("BRGC", 8)
        y = np.linspace(-2, 2, 101)
        batch = sd_decide(y, lab, c)
        for i, yv in enumerate(y):
            np.testing.assert_array_equal(batch[i], sd_decide(yv, lab, c))


class TestExactLlr:
    def test_symmetric_pattern_zero_at_center(self):
        c = make_pam(8)
        p15 = pattern_from_index(8, 15)
        assert pattern_exact_llr(0.0, p15, c, ChannelParams(3.7)) == 0.0

    def test_matches_naive_sums(self):
        c = make_pam(4)
        lab = named_labeling("BRGC", 4)
        params = ChannelParams(1.0)
        got = exact_llr(0.3, lab, c, params)
        expected = [
            naive_exact_llr(0.3, pat, c, 1.0) for pat in lab.columns()
        ]
        np.testing.assert_allclose(got, expected, rtol=1e-13)
        # frozen values for this exact case
        np.testing.assert_allclose(
            got, [0.7216877203916647, 1.3415057547523557], rtol=1e-13
        )

    def test_sign_far_beyond_top_point(self):
        c = make_pam(8)
        params = ChannelParams(2.0)
        for w in pattern_indices(8):
            pat = pattern_from_index(8, w)
            val = pattern_exact_llr(10.0, pat, c, params)
            assert (val > 0) == bool(pat.bits[-1])

    def test_no_overflow_at_huge_exponents(self):
        c = make_pam(8)
        pat = pattern_from_index(8, 102)
        params = ChannelParams(2500.0)
        with np.errstate(over="raise"):
            val = pattern_exact_llr(c.points[-1] + 20.0, pat, c, params)
        assert math.isfinite(val)
        assert params.snr * (c.points[-1] + 20.0 - c.points[0]) ** 2 > 1e6

    @given(
        w=st.sampled_from(sorted(pattern_indices(8))),
        y=st.floats(-3.0, 3.0),
        snr=st.floats(0.05, 50.0),
    )
    @settings(max_examples=80, deadline=None)
    def test_inversion_negates(self, w, y, snr):
        c = make_pam(8)
        params = ChannelParams(snr)
        pat = pattern_from_index(8, w)
        a = pattern_exact_llr(y, pat, c, params)
        b = pattern_exact_llr(y, invert(pat), c, params)
        assert a == -b  # numerator and denominator swap exactly

    @given(
        w=st.sampled_from(sorted(pattern_indices(8))),
        y=st.floats(-3.0, 3.0),
        snr=st.floats(0.05, 50.0),
    )
    @settings(max_examples=80, deadline=None)
    def test_reflection_covariance(self, w, y, snr):
        c = make_pam(8)
        params = ChannelParams(snr)
        pat = pattern_from_index(8, w)
        a = pattern_exact_llr(y, pat, c, params)
        b = pattern_exact_llr(-y, reflect(pat), c, params)
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


class TestMaxlogLlr:
    def test_zero_at_center_for_brgc_first_bit(self):
        c = make_pam(4)
        lab = named_labeling("BRGC", 4)
        vals = maxlog_llr(0.0, lab, c, ChannelParams(1.0))
        assert vals[0] == 0.0

    def test_sign_at_constellation_points(self):
        c = make_pam(8)
        for name in ("BRGC", "NBC", "FBC"):
            lab = named_labeling(name, 8)
            vals = maxlog_llr(c.points, lab, c, ChannelParams(2.0))
            decided = abd_decide(vals)
            np.testing.assert_array_equal(decided, lab.matrix)

    def test_matches_subset_minimization(self):
        c = make_pam(8)
        pat = pattern_from_index(8, 60)
        got = pattern_maxlog_llr(0.5, pat, c, ChannelParams(1.0))
        assert got == pytest.approx(naive_maxlog_llr(0.5, pat, c, 1.0), rel=1e-14)
        assert got == pytest.approx(0.325468981432777, rel=1e-12)

    def test_converges_to_exact_llr(self):
        # away from every pairwise midpoint the max-log error shrinks like
        # exp(-snr * gap); at snr = 100 it is far below 1e-6 * snr
        c = make_pam(8)
        pts = c.points
        pairmids = np.array(
            [(a + b) / 2 for i, a in enumerate(pts) for b in pts[i + 1 :]]
        )
        y = np.linspace(pts[0] - 1, pts[-1] + 1, 801)
        y = y[np.abs(y[:, None] - pairmids[None, :]).min(axis=1) > 0.15]
        params = ChannelParams(100.0)
        for w in (15, 60, 102, 43, 85):
            pat = pattern_from_index(8, w)
            gap = np.abs(
                pattern_exact_llr(y, pat, c, params)
                - pattern_maxlog_llr(y, pat, c, params)
            )
            assert gap.max() / params.snr <= 1e-6


class TestAbdDecide:
    def test_zero_maps_to_one(self):
        np.testing.assert_array_equal(abd_decide([0.0]), [1])

    def test_sign_rule(self):
        np.testing.assert_array_equal(abd_decide([-3.2, 0.1]), [0, 1])

    @pytest.mark.parametrize("snr_db", [-5.0, 0.0, 10.0])
    def test_matches_sd_on_random_samples(self, snr_db):
        c = make_pam(8)
        lab = named_labeling("BRGC", 8)
        rng = np.random.default_rng(1234)
        y = rng.uniform(c.points[0] - 2, c.points[-1] + 2, 100_000)
        params = ChannelParams.from_db(snr_db)
        abd = abd_decide(maxlog_llr(y, lab, c, params))
        np.testing.assert_array_equal(abd, sd_decide(y, lab, c))

    def test_matches_sd_for_random_labelings(self):
        c = make_pam(8)
        rng = np.random.default_rng(77)
        params = ChannelParams.from_db(5.0)
        for lab in sample_labelings(8, 3, seed=5):
            y = rng.uniform(-3, 3, 50_000)
            abd = abd_decide(maxlog_llr(y, lab, c, params))
            np.testing.assert_array_equal(abd, sd_decide(y, lab, c))
