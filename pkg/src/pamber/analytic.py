"""Closed-form bit-error rates for one-dimensional constellations.

The single-pattern error rate (PBER) of a sign demodulator with decision
boundaries ``beta_1 < ... < beta_{M-1}`` over points ``s_1 < ... < s_M``
is

    P = 1/2 + (1/M) * sum_{i,k} g[i,k] * Q((beta_k - s_i) * sqrt(2*snr))

with the relevance matrix ``g`` from :func:`pamber.thresholds.relevance_mask`.
An equivalent form accumulates interval probabilities against the
bit-disagreement matrix ``e[i,k] = p_i XOR p_k``; both are implemented and
agree to machine precision, which the test suite asserts.

For equally spaced unit-energy M-PAM with midpoint boundaries the PBER
collapses to a weighted sum of Q-functions at odd multiples of the half
spacing; the integer weight vector depends only on the pattern and fully
determines the curve.  Summing the weight vectors of a labeling's column
patterns gives the labeling's BER the same way.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc

from .constellation import BitPattern, Constellation, Labeling, pam_spacing
from .demod import ChannelParams
from .thresholds import (
    ThresholdSet,
    bd_thresholds,
    midpoint_thresholds,
    relevance_mask,
)


def qfunc(x):
    """Gaussian tail probability Q(x) = Pr{N(0,1) > x}.

    Computed through the complementary error function; relative accuracy
    is a few ULP well past x = 8, and values underflow gracefully.
    """
    return 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def _check_pair(pattern: BitPattern, constellation: Constellation) -> None:
    if pattern.size != constellation.size:
        raise ValueError("pattern and constellation sizes differ")


def interval_probs(
    constellation: Constellation, thresholds: ThresholdSet, params: ChannelParams
) -> np.ndarray:
    """Conditional probabilities of landing between consecutive boundaries.

    Entry (i, k) is the probability that the observation falls in the k-th
    slice of the real line (boundaries prepended/appended with -inf/+inf)
    given that point i was sent.  Rows sum to one.
    """
    if thresholds.size != constellation.size - 1:
        raise ValueError("need M-1 thresholds for an M-point constellation")
    scale = math.sqrt(2.0 * params.snr)
    tails = qfunc((thresholds.betas[None, :] - constellation.points[:, None]) * scale)
    m_points = constellation.size
    v = np.empty((m_points, m_points))
    v[:, 0] = 1.0 - tails[:, 0]
    v[:, 1 : m_points - 1] = tails[:, :-1] - tails[:, 1:]
    v[:, m_points - 1] = tails[:, -1]
    return v


def pber_general(
    pattern: BitPattern,
    constellation: Constellation,
    thresholds: ThresholdSet,
    params: ChannelParams,
) -> float:
    """PBER of a sign demodulator with the given decision boundaries."""
    _check_pair(pattern, constellation)
    scale = math.sqrt(2.0 * params.snr)
    tails = qfunc((thresholds.betas[None, :] - constellation.points[:, None]) * scale)
    g = relevance_mask(pattern)
    return 0.5 + float((g * tails).sum()) / constellation.size


def pber_interval_form(
    pattern: BitPattern,
    constellation: Constellation,
    thresholds: ThresholdSet,
    params: ChannelParams,
) -> float:
    """Same PBER accumulated from interval probabilities.

    Independent of :func:`pber_general` apart from the shared Q-function;
    kept as a cross-check of the telescoped form.
    """
    _check_pair(pattern, constellation)
    bits = pattern.as_array()
    disagree = bits[:, None] != bits[None, :]
    v = interval_probs(constellation, thresholds, params)
    return float(v[disagree].sum()) / constellation.size


def pattern_coefficients(pattern: BitPattern) -> np.ndarray:
    """Integer Q-function weights of a pattern for equally spaced PAM.

    Entry n-1 (n = 1..M-1) weights Q((2n-1)*d*sqrt(2*snr)) in the PBER.
    The first entry is twice the number of adjacent points whose bits
    differ; the vector is invariant under reflection and inversion of the
    pattern.
    """
    p = pattern.as_array().astype(np.int64)
    m_points = pattern.size
    step = np.diff(p)            # p[k+1] - p[k], k = 0..M-2 (0-based)
    sign = 1 - 2 * p             # 1 - 2*p[i]
    out = np.zeros(m_points - 1, dtype=np.int64)
    for n in range(1, m_points):
        k = np.arange(n, m_points)          # 1-based transition index
        out[n - 1] = int(
            (step[k - 1] * sign[k - n]).sum()
            - (step[k - n] * sign[k]).sum()
        )
    return out


def ber_from_coefficients(
    coefficients: np.ndarray, m_points: int, params: ChannelParams
) -> float:
    """Evaluate a Q-function weight vector for unit-energy M-PAM."""
    coefficients = np.asarray(coefficients)
    if coefficients.shape != (m_points - 1,):
        raise ValueError(f"need {m_points - 1} coefficients, got {coefficients.shape}")
    d = pam_spacing(m_points)
    n = np.arange(1, m_points)
    args = (2 * n - 1) * d * math.sqrt(2.0 * params.snr)
    return float(coefficients @ qfunc(args)) / m_points


def pber_pam(pattern: BitPattern, params: ChannelParams) -> float:
    """PBER of a pattern over equally spaced unit-energy PAM (midpoint rule)."""
    return ber_from_coefficients(
        pattern_coefficients(pattern), pattern.size, params
    )


def labeling_coefficients(labeling: Labeling) -> np.ndarray:
    """Sum of the column patterns' Q-function weight vectors."""
    cols = labeling.columns()
    return np.sum([pattern_coefficients(p) for p in cols], axis=0)


def labeling_ber_pam(labeling: Labeling, params: ChannelParams) -> float:
    """Average BER of a labeling over equally spaced unit-energy PAM."""
    total = ber_from_coefficients(
        labeling_coefficients(labeling), labeling.size, params
    )
    return total / labeling.n_bits


def labeling_ber(
    labeling: Labeling,
    constellation: Constellation,
    params: ChannelParams,
    demod: str = "abd",
) -> float:
    """Average BER over the labeling's bit positions.

    ``demod`` selects the decision boundaries: ``"abd"`` (or ``"sd"``,
    which decides identically) uses midpoints; ``"bd"`` solves the exact
    L-value boundaries at this SNR for every column pattern.  Threshold
    solver failures propagate.
    """
    if constellation.size != labeling.size:
        raise ValueError("labeling and constellation sizes differ")
    kind = demod.lower()
    if kind not in ("abd", "sd", "bd"):
        raise ValueError(f"demod must be one of sd, abd, bd; got {demod!r}")
    total = 0.0
    for pat in labeling.columns():
        if kind == "bd":
            thr = bd_thresholds(pat, constellation, params)
        else:
            thr = midpoint_thresholds(constellation)
        total += pber_general(pat, constellation, thr, params)
    return total / labeling.n_bits


def high_snr_bicm_parameter(labeling: Labeling) -> int:
    """``2*m*(M-1)`` minus the first labeling weight.

    Equals twice the number of adjacent label pairs agreeing per bit
    position summed over positions; non-negative for every labeling.
    """
    alpha1 = int(labeling_coefficients(labeling)[0])
    return 2 * labeling.n_bits * (labeling.size - 1) - alpha1
