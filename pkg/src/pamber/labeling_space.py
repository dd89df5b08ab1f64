"""Census of binary labelings by their error-rate curve.

A labeling is, up to column order, a set of m = log2(M) balanced
patterns whose column stack has pairwise distinct rows.  Its BER curve
over equally spaced PAM is fixed by the integer weight vector summed over
the column patterns; counting distinct weight vectors counts labelings
with genuinely different BER.

Exhaustive enumeration is practical for M in {2, 4, 8} (C(70,3) = 54834
candidate sets for M = 8).  For larger M a seeded sampler is provided and
is explicitly non-exhaustive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .analytic import labeling_coefficients
from .constellation import Labeling
from .pattern_classes import pattern_indices

_EXHAUSTIVE_SIZES = (2, 4, 8)


def _bit_columns(m_points: int, indices: Sequence[int]) -> np.ndarray:
    shifts = np.arange(m_points - 1, -1, -1)
    return (np.asarray(indices)[:, None] >> shifts[None, :]) & 1  # (m, M)


def is_bijective_set(m_points: int, indices: Sequence[int]) -> bool:
    """True when stacking the patterns as columns yields M distinct rows."""
    cols = _bit_columns(m_points, indices)
    rows = np.zeros(m_points, dtype=np.int64)
    for bits in cols:
        rows = (rows << 1) | bits
    return np.unique(rows).size == m_points


def enumerate_labelings(m_points: int) -> Iterator[Labeling]:
    """Every labeling of M points, one per unordered pattern set.

    Column order within a yielded labeling follows ascending pattern
    index; the BER does not depend on it.
    """
    if m_points not in _EXHAUSTIVE_SIZES:
        raise ValueError(
            f"exhaustive enumeration supports M in {_EXHAUSTIVE_SIZES}, got {m_points}"
        )
    n_bits = m_points.bit_length() - 1
    pool = list(pattern_indices(m_points))
    for combo in itertools.combinations(pool, n_bits):
        if is_bijective_set(m_points, combo):
            yield Labeling.from_indices(m_points, combo)


def sample_labelings(
    m_points: int, count: int, seed: int
) -> list[Labeling]:
    """Random labelings for sizes too large to enumerate; NOT exhaustive."""
    if m_points < 4 or m_points & (m_points - 1):
        raise ValueError(f"M must be a power of two >= 4, got {m_points}")
    n_bits = m_points.bit_length() - 1
    pool = np.fromiter(pattern_indices(m_points), dtype=np.int64)
    rng = np.random.default_rng(seed)
    out: list[Labeling] = []
    while len(out) < count:
        combo = sorted(rng.choice(pool, size=n_bits, replace=False).tolist())
        if is_bijective_set(m_points, combo):
            out.append(Labeling.from_indices(m_points, combo))
    return out


@dataclass(frozen=True, eq=False)
class LabelingClass:
    """All labelings sharing one weight vector, hence one BER curve."""

    alpha: tuple[int, ...]
    witness: Labeling
    population: int


def labeling_census(m_points: int) -> list[LabelingClass]:
    """Group every labeling by weight vector, best to worst at high SNR.

    The witness of each class is the first set encountered in ascending
    pattern-index order, so the census is deterministic.
    """
    table: dict[tuple[int, ...], list] = {}
    for lab in enumerate_labelings(m_points):
        alpha = tuple(int(x) for x in labeling_coefficients(lab))
        entry = table.get(alpha)
        if entry is None:
            table[alpha] = [lab, 1]
        else:
            entry[1] += 1
    classes = [
        LabelingClass(alpha=alpha, witness=lab, population=pop)
        for alpha, (lab, pop) in table.items()
    ]
    return order_labelings_high_snr(classes)


def order_labelings_high_snr(classes: list[LabelingClass]) -> list[LabelingClass]:
    """Ascending lexicographic order of weight vectors.

    The leading weight dominates at high SNR; ties fall through to the
    next weight, and so on.
    """
    return sorted(classes, key=lambda c: c.alpha)


def count_distinct_ber_labelings(m_points: int) -> int:
    """Number of labelings with pairwise different BER curves."""
    return len(labeling_census(m_points))
