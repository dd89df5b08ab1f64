"""One-dimensional constellations, bit patterns, and binary labelings.

Conventions used throughout the package:

* Constellation points are sorted strictly ascending and kept at full
  double precision.
* A bit pattern is a length-M binary vector of Hamming weight M/2.  Its
  decimal index reads the vector as a big-endian binary number over the
  constellation positions (leftmost bit belongs to the lowest point), so
  for M = 4 the vector [0, 1, 0, 1] has index 5.
* A labeling assigns a distinct m-bit label to each of the M = 2^m
  points.  Bit position j (1-based) is column j of the M-by-m label
  matrix; every column of a bijective labeling is a valid bit pattern.

All types are immutable after construction and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

EQUALLY_SPACED_PAM = "equally-spaced-pam"
ARBITRARY = "arbitrary"

#: Named labelings with a generic construction, see :func:`named_labeling`.
CONSTRUCTIVE_LABELINGS = ("BRGC", "NBC")

# Pattern-index sets for named labelings that are only defined here for
# specific sizes (column order is the conventional one).
_FIXED_LABELINGS = {
    ("AG", 4): (5, 6),
    ("FBC", 8): (15, 60, 90),
    ("BSGC", 8): (105, 60, 102),
    ("AG", 8): (90, 105, 85),
}


def pam_spacing(m_points: int) -> float:
    """Half the distance between adjacent points of unit-energy PAM."""
    return math.sqrt(3.0 / (m_points * m_points - 1.0))


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Constellation:
    """Ordered real amplitudes with unit-average-energy scaling metadata.

    Attributes:
        points: strictly increasing float64 array of the M amplitudes.
        spacing: ``EQUALLY_SPACED_PAM`` or ``ARBITRARY``.
    """

    points: np.ndarray
    spacing: str = ARBITRARY

    def __post_init__(self) -> None:
        pts = _readonly(np.array(self.points, dtype=float))
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("need a 1-D array of at least two points")
        if pts.size % 2 != 0:
            raise ValueError(f"number of points must be even, got {pts.size}")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("points must be strictly increasing")
        if self.spacing not in (EQUALLY_SPACED_PAM, ARBITRARY):
            raise ValueError(f"unknown spacing kind {self.spacing!r}")
        if self.spacing == EQUALLY_SPACED_PAM:
            energy = float(np.mean(pts**2))
            if abs(energy - 1.0) > 1e-12:
                raise ValueError(
                    f"equally spaced PAM must have unit mean energy, got {energy!r}"
                )

    @property
    def size(self) -> int:
        """Number of points M."""
        return int(self.points.size)

    @property
    def mean_energy(self) -> float:
        return float(np.mean(self.points**2))

    def midpoints(self) -> np.ndarray:
        """The M-1 midpoints between adjacent points."""
        return 0.5 * (self.points[:-1] + self.points[1:])


def make_pam(m_points: int) -> Constellation:
    """Equally spaced M-PAM normalized to unit average symbol energy.

    The points are ``-d*(M-1), -d*(M-3), ..., d*(M-1)`` with
    ``d = sqrt(3/(M^2-1))``, which makes ``mean(points**2) == 1``.

    Raises:
        ValueError: if M is odd or smaller than 2.
    """
    if m_points < 2 or m_points % 2 != 0:
        raise ValueError(f"M must be an even integer >= 2, got {m_points}")
    d = pam_spacing(m_points)
    pts = np.array([-d * (m_points - 2 * i + 1) for i in range(1, m_points + 1)])
    return Constellation(points=pts, spacing=EQUALLY_SPACED_PAM)


@dataclass(frozen=True)
class BitPattern:
    """Length-M binary vector of Hamming weight M/2 with its decimal index."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        m = len(bits)
        if m < 2 or m % 2 != 0:
            raise ValueError(f"pattern length must be even and >= 2, got {m}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("pattern entries must be 0 or 1")
        if sum(bits) != m // 2:
            raise ValueError(
                f"pattern of length {m} must have weight {m // 2}, got {sum(bits)}"
            )

    @property
    def size(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        """Decimal index: bits read as a big-endian binary number."""
        w = 0
        for b in self.bits:
            w = (w << 1) | b
        return w

    def as_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.int8)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def pattern_from_index(m_points: int, index: int) -> BitPattern:
    """Build the pattern whose big-endian binary expansion equals ``index``.

    Raises:
        ValueError: if the expansion does not fit in M bits or its
            Hamming weight differs from M/2.
    """
    if not 0 <= index < (1 << m_points):
        raise ValueError(f"index {index} out of range for M={m_points}")
    bits = tuple((index >> (m_points - i)) & 1 for i in range(1, m_points + 1))
    return BitPattern(bits)


@dataclass(frozen=True, eq=False)
class Labeling:
    """Binary labeling of M = 2^m points, stored as an M-by-m bit matrix.

    Row i is the label of point i (0-based); rows are pairwise distinct so
    the label-to-point map is a bijection.  Column j-1 is the bit pattern
    governing bit position j.
    """

    matrix: np.ndarray
    pattern_set: frozenset[int] = field(init=False)

    def __post_init__(self) -> None:
        mat = _readonly(np.array(self.matrix, dtype=np.int8))
        object.__setattr__(self, "matrix", mat)
        if mat.ndim != 2:
            raise ValueError("labeling matrix must be 2-D")
        m_points, n_bits = mat.shape
        if m_points != 1 << n_bits:
            raise ValueError(
                f"matrix is {m_points}x{n_bits}; need 2^{n_bits} = {1 << n_bits} rows"
            )
        if not np.isin(mat, (0, 1)).all():
            raise ValueError("labeling matrix entries must be 0 or 1")
        rows = {tuple(r) for r in mat}
        if len(rows) != m_points:
            raise ValueError("labeling rows must be pairwise distinct (bijection)")
        # Holds automatically for a bijection on 2^m points; checked anyway
        # because everything downstream relies on it.
        if not np.all(mat.sum(axis=0) == m_points // 2):
            raise ValueError("every labeling column must have weight M/2")
        object.__setattr__(
            self, "pattern_set", frozenset(p.index for p in self.columns())
        )

    @property
    def size(self) -> int:
        """Number of labeled points M."""
        return int(self.matrix.shape[0])

    @property
    def n_bits(self) -> int:
        """Bits per label m = log2(M)."""
        return int(self.matrix.shape[1])

    def columns(self) -> tuple[BitPattern, ...]:
        """The m column patterns, in bit-position order."""
        return tuple(BitPattern(tuple(col)) for col in self.matrix.T)

    def label_of(self, point_index: int) -> tuple[int, ...]:
        """Label bits of point ``point_index`` (0-based)."""
        return tuple(int(b) for b in self.matrix[point_index])

    def point_of(self, label: Sequence[int]) -> int:
        """Inverse map: 0-based index of the point carrying ``label``."""
        target = tuple(int(b) for b in label)
        for i in range(self.size):
            if self.label_of(i) == target:
                return i
        raise KeyError(f"label {target} not in labeling")

    @classmethod
    def from_patterns(cls, patterns: Iterable[BitPattern]) -> "Labeling":
        """Stack patterns as columns, in the order given."""
        cols = [p.as_array() for p in patterns]
        return cls(np.column_stack(cols))

    @classmethod
    def from_indices(cls, m_points: int, indices: Iterable[int]) -> "Labeling":
        return cls.from_patterns(
            pattern_from_index(m_points, w) for w in indices
        )


def _brgc_rows(n_bits: int) -> list[list[int]]:
    # reflect-and-prefix recursion
    rows = [[0], [1]]
    for _ in range(n_bits - 1):
        rows = [[0] + r for r in rows] + [[1] + r for r in reversed(rows)]
    return rows


def _nbc_rows(n_bits: int) -> list[list[int]]:
    return [
        [(i >> (n_bits - 1 - j)) & 1 for j in range(n_bits)]
        for i in range(1 << n_bits)
    ]


def named_labeling(name: str, m_points: int) -> Labeling:
    """Standard labeling by name: BRGC, NBC, FBC, BSGC, or AG.

    BRGC (binary reflected Gray code) and NBC (natural binary code) are
    constructed for any power-of-two M.  FBC, BSGC, and AG come from fixed
    pattern-index sets and are available for M = 8 (AG also for M = 4).

    Raises:
        ValueError: unknown name, M not a power of two, or a name/size
            combination with no definition here.
    """
    if m_points < 2 or m_points & (m_points - 1):
        raise ValueError(f"M must be a power of two >= 2, got {m_points}")
    key = name.strip().upper()
    n_bits = m_points.bit_length() - 1
    if key == "BRGC":
        return Labeling(np.array(_brgc_rows(n_bits)))
    if key == "NBC":
        return Labeling(np.array(_nbc_rows(n_bits)))
    try:
        indices = _FIXED_LABELINGS[(key, m_points)]
    except KeyError:
        known = {k for k, _ in _FIXED_LABELINGS} | set(CONSTRUCTIVE_LABELINGS)
        if key not in known:
            raise ValueError(f"unknown labeling name {name!r}") from None
        raise ValueError(f"labeling {key} is not defined for M={m_points}") from None
    return Labeling.from_indices(m_points, indices)


def subconstellation(
    labeling: Labeling,
    constellation: Constellation,
    bit_position: int,
    bit_value: int,
) -> np.ndarray:
    """Points whose label bit ``bit_position`` (1-based) equals ``bit_value``."""
    if constellation.size != labeling.size:
        raise ValueError("labeling and constellation sizes differ")
    if not 1 <= bit_position <= labeling.n_bits:
        raise ValueError(
            f"bit position must be in 1..{labeling.n_bits}, got {bit_position}"
        )
    if bit_value not in (0, 1):
        raise ValueError("bit value must be 0 or 1")
    mask = labeling.matrix[:, bit_position - 1] == bit_value
    return constellation.points[mask]
