"""Symbol-wise and bit-wise demodulators for the real AWGN channel.

Three demodulators operate on a channel observation ``y = x + noise``
where the noise is zero-mean Gaussian with variance ``1/(2*snr)``:

* SD: hard decision on the nearest constellation point, label read off.
* BD: exact per-bit log-likelihood ratios (L-values), decided by sign.
* ABD: max-log approximate L-values, decided by sign.

Sign convention: positive L-value favors bit 1, i.e. the L-value is
``log(Pr{bit=1 | y} / Pr{bit=0 | y})``.

Tie rules: the SD resolves an exact midpoint toward the lower-indexed
point; sign decisions map an exact zero L-value to bit 1.  The two rules
can disagree only on that measure-zero set.

All functions broadcast over ``y``; scalars in, scalars out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import BitPattern, Constellation, Labeling


@dataclass(frozen=True)
class ChannelParams:
    """AWGN channel at average signal-to-noise ratio ``snr`` (linear).

    With unit-energy constellations the noise spectral density is
    ``n0 = 1/snr`` and the per-dimension noise variance is ``n0/2``.
    """

    snr: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "snr", float(self.snr))
        if not math.isfinite(self.snr) or self.snr <= 0:
            raise ValueError(f"snr must be positive and finite, got {self.snr}")

    @classmethod
    def from_db(cls, snr_db: float) -> "ChannelParams":
        return cls(snr=10.0 ** (snr_db / 10.0))

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.snr)

    @property
    def n0(self) -> float:
        return 1.0 / self.snr

    @property
    def noise_std(self) -> float:
        """Standard deviation of the real noise sample, sqrt(n0/2)."""
        return 1.0 / math.sqrt(2.0 * self.snr)


def nearest_point_index(y, constellation: Constellation) -> np.ndarray:
    """0-based index of the constellation point closest to each ``y``.

    Exact midpoints resolve to the lower-indexed point.
    """
    y = np.asarray(y, dtype=float)
    return np.searchsorted(constellation.midpoints(), y, side="left")


def sd_decide(y, labeling: Labeling, constellation: Constellation) -> np.ndarray:
    """Hard symbol decision: label of the nearest point, shape ``y.shape + (m,)``."""
    if constellation.size != labeling.size:
        raise ValueError("labeling and constellation sizes differ")
    idx = nearest_point_index(y, constellation)
    return labeling.matrix[idx]


def _split_squared_distances(y, bits: np.ndarray, points: np.ndarray):
    y = np.asarray(y, dtype=float)
    sq = (y[..., None] - points) ** 2
    ones = np.asarray(bits, dtype=bool)
    return sq[..., ones], sq[..., ~ones]


def _maxlog_from_splits(sq_one, sq_zero, snr: float):
    return snr * (sq_zero.min(axis=-1) - sq_one.min(axis=-1))


def _exact_from_splits(sq_one, sq_zero, snr: float):
    # Max-log term plus log-domain corrections.  Extracting the subset
    # minimum first keeps every exponent <= 0, so nothing overflows no
    # matter how large snr*(y-x)^2 gets; far-away terms underflow to 0.
    # Sorting fixes the summation order, so mirror-symmetric subsets give
    # an exactly antisymmetric L-value (zero at the symmetry center).
    s1 = np.sort(sq_one, axis=-1)
    s0 = np.sort(sq_zero, axis=-1)
    m1 = s1[..., 0]
    m0 = s0[..., 0]
    c1 = np.log(np.exp(-snr * (s1 - m1[..., None])).sum(axis=-1))
    c0 = np.log(np.exp(-snr * (s0 - m0[..., None])).sum(axis=-1))
    # grouped so that swapping the subsets negates the result exactly
    return snr * (m0 - m1) + (c1 - c0)


def _as_input_shape(out: np.ndarray, y):
    if np.ndim(y) == 0:
        return float(out)
    return out


def pattern_exact_llr(
    y, pattern: BitPattern, constellation: Constellation, params: ChannelParams
):
    """Exact L-value of the single bit governed by ``pattern``.

    Equals ``log(sum_1 exp(-snr*(y-x)^2) / sum_0 exp(-snr*(y-x)^2))`` with
    the sums running over the points labeled 1 and 0 by the pattern.
    """
    if pattern.size != constellation.size:
        raise ValueError("pattern and constellation sizes differ")
    sq1, sq0 = _split_squared_distances(y, pattern.as_array(), constellation.points)
    return _as_input_shape(_exact_from_splits(sq1, sq0, params.snr), y)


def pattern_maxlog_llr(
    y, pattern: BitPattern, constellation: Constellation, params: ChannelParams
):
    """Max-log L-value: ``snr * (min_0 (y-x)^2 - min_1 (y-x)^2)``."""
    if pattern.size != constellation.size:
        raise ValueError("pattern and constellation sizes differ")
    sq1, sq0 = _split_squared_distances(y, pattern.as_array(), constellation.points)
    return _as_input_shape(_maxlog_from_splits(sq1, sq0, params.snr), y)


def _stack_per_bit(y, labeling, constellation, params, kernel) -> np.ndarray:
    if constellation.size != labeling.size:
        raise ValueError("labeling and constellation sizes differ")
    y_arr = np.asarray(y, dtype=float)
    sq = (y_arr[..., None] - constellation.points) ** 2
    out = np.empty(y_arr.shape + (labeling.n_bits,))
    for j in range(labeling.n_bits):
        ones = labeling.matrix[:, j].astype(bool)
        out[..., j] = kernel(sq[..., ones], sq[..., ~ones], params.snr)
    return out


def exact_llr(
    y, labeling: Labeling, constellation: Constellation, params: ChannelParams
) -> np.ndarray:
    """Exact L-values for all m bit positions, shape ``y.shape + (m,)``."""
    return _stack_per_bit(y, labeling, constellation, params, _exact_from_splits)


def maxlog_llr(
    y, labeling: Labeling, constellation: Constellation, params: ChannelParams
) -> np.ndarray:
    """Max-log L-values for all m bit positions, shape ``y.shape + (m,)``."""
    return _stack_per_bit(y, labeling, constellation, params, _maxlog_from_splits)


def abd_decide(llr) -> np.ndarray:
    """Sign decision on L-values: bit 1 when the L-value is >= 0."""
    return np.where(np.asarray(llr) >= 0, 1, 0).astype(np.int8)
