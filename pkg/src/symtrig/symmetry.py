"""The extended affine symmetric group, fundamental-domain folding, and the
dominant label / grid sets used by the finite transforms.

Group elements combine a permutation, per-coordinate sign flips and an integer
shift.  They act on points in a fixed order: permute, then flip, then shift::

    act(g, x)[i] = signs[i] * x[perm[i]] + shift[i]
"""
from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from .errors import InvalidArgumentError
from .kernel import permutation_sign

__all__ = [
    "DominantLabelSet",
    "GridKind",
    "GridPoint",
    "GroupElement",
    "LabelSetKind",
    "act",
    "enumerate_grid",
    "enumerate_labels",
    "fold",
    "label_set_size",
    "stabilizer_order",
]


@dataclass(frozen=True)
class GroupElement:
    """Element of S_n x Z_2^n x T_n.

    ``perm`` is in one-line notation on ``0..n-1``; ``signs`` holds +-1;
    ``shift`` holds integers.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    shift: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise InvalidArgumentError(f"not a permutation of 0..{n - 1}: {self.perm}")
        if len(self.signs) != n or len(self.shift) != n:
            raise InvalidArgumentError("perm, signs and shift must share the dimension")
        if any(s not in (1, -1) for s in self.signs):
            raise InvalidArgumentError("signs must be +1 or -1")
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "shift", tuple(int(t) for t in self.shift))

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(tuple(range(n)), (1,) * n, (0,) * n)

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "GroupElement":
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        return cls(tuple(perm), (1,) * n, (0,) * n)

    @classmethod
    def flip(cls, n: int, i: int) -> "GroupElement":
        signs = [1] * n
        signs[i] = -1
        return cls(tuple(range(n)), tuple(signs), (0,) * n)

    @classmethod
    def translation(cls, shift: Sequence[int]) -> "GroupElement":
        n = len(shift)
        return cls(tuple(range(n)), (1,) * n, tuple(shift))

    @property
    def parity(self) -> int:
        """det w of the permutation part."""
        return permutation_sign(self.perm)

    @property
    def flips(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def is_translation(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(s == 1 for s in self.signs)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        """``(g @ h)`` acts as ``g`` after ``h``."""
        if self.n != other.n:
            raise InvalidArgumentError("dimension mismatch in composition")
        p = self.perm
        perm = tuple(other.perm[p[i]] for i in range(self.n))
        signs = tuple(self.signs[i] * other.signs[p[i]] for i in range(self.n))
        shift = tuple(self.signs[i] * other.shift[p[i]] + self.shift[i] for i in range(self.n))
        return GroupElement(perm, signs, shift)

    def inverse(self) -> "GroupElement":
        inv = [0] * self.n
        for i, p in enumerate(self.perm):
            inv[p] = i
        signs = tuple(self.signs[inv[i]] for i in range(self.n))
        shift = tuple(-self.signs[inv[i]] * self.shift[inv[i]] for i in range(self.n))
        return GroupElement(tuple(inv), signs, shift)


def act(g: GroupElement, x: ArrayLike) -> np.ndarray:
    """Apply ``g`` to a point (or to the last axis of an array of points)."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != g.n:
        raise InvalidArgumentError(f"point dimension does not match group element (n={g.n})")
    return np.asarray(g.signs) * x[..., list(g.perm)] + np.asarray(g.shift)


def fold(x: ArrayLike) -> tuple[np.ndarray, int]:
    """Map ``x`` into ``1/2 >= x_1 >= ... >= x_n >= 0``.

    Each coordinate is reduced mod 1, reflected ``t -> 1 - t`` when above 1/2,
    and the result sorted in descending order.

    Returns
    -------
    point : ndarray
        The folded point.
    sign : int
        +1 or -1 such that ``sin-minus_m(x) == sign * sin-minus_m(point)`` for
        every integer label ``m``: the parity of the sorting permutation times
        -1 for each reflection used.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidArgumentError("fold takes a single point")
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("point entries must be finite")
    t = np.mod(x, 1.0)
    reflect = t > 0.5
    t = np.where(reflect, 1.0 - t, t)
    # stable sort keeps equal coordinates in place, so ties cost no parity
    order = np.argsort(-t, kind="stable")
    sign = permutation_sign(order.tolist())
    if int(np.count_nonzero(reflect)) % 2:
        sign = -sign
    return t[order], sign


def stabilizer_order(m: ArrayLike) -> int:
    """Number of permutations fixing the label: product of multiplicity factorials."""
    values = np.asarray(m).ravel().tolist()
    out = 1
    for count in Counter(values).values():
        out *= math.factorial(count)
    return out


class LabelSetKind(enum.Enum):
    STRICT_POSITIVE = "strict-positive"    # M >= m_1 > ... > m_n > 0
    WEAK_NONNEG = "weak-nonneg"            # M >= m_1 >= ... >= m_n >= 0
    SINE_GRID = "sine-grid"                # N > m_1 > ... > m_n > 0
    STRICT_WITH_ZERO = "strict-with-zero"  # N >= m_1 > ... > m_n >= 0
    WEAK_BOUNDED = "weak-bounded"          # N >= m_1 >= ... >= m_n >= 0
    STRICT_VARIANT = "strict-variant"      # N-1 >= m_1 > ... > m_n >= 0
    WEAK_VARIANT = "weak-variant"          # N-1 >= m_1 >= ... >= m_n >= 0


# (smallest entry, largest entry as offset from N, strict?)
_LABEL_RULES = {
    LabelSetKind.STRICT_POSITIVE: (1, 0, True),
    LabelSetKind.WEAK_NONNEG: (0, 0, False),
    LabelSetKind.SINE_GRID: (1, -1, True),
    LabelSetKind.STRICT_WITH_ZERO: (0, 0, True),
    LabelSetKind.WEAK_BOUNDED: (0, 0, False),
    LabelSetKind.STRICT_VARIANT: (0, -1, True),
    LabelSetKind.WEAK_VARIANT: (0, -1, False),
}


@dataclass(frozen=True)
class DominantLabelSet:
    """A finite set of dominant integer labels.

    For the unbounded sets (strict-positive, weak-nonneg) ``N`` is the
    truncation bound on the largest entry.
    """

    kind: LabelSetKind
    N: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", LabelSetKind(self.kind))
        if self.N < 0 or self.n < 1:
            raise InvalidArgumentError("need N >= 0 and n >= 1")


def _descending_tuples(lo: int, hi: int, n: int, strict: bool) -> list[tuple[int, ...]]:
    values = range(hi, lo - 1, -1)
    if strict:
        return list(itertools.combinations(values, n))
    return list(itertools.combinations_with_replacement(values, n))


def enumerate_labels(labels: DominantLabelSet) -> list[tuple[int, ...]]:
    """All labels of the set in lexicographically descending order."""
    lo, offset, strict = _LABEL_RULES[labels.kind]
    return _descending_tuples(lo, labels.N + offset, labels.n, strict)


def label_set_size(labels: DominantLabelSet) -> int:
    """Closed-form cardinality (binomial counts)."""
    lo, offset, strict = _LABEL_RULES[labels.kind]
    values = max(labels.N + offset - lo + 1, 0)
    if strict:
        return math.comb(values, labels.n)
    return math.comb(values + labels.n - 1, labels.n)


class GridKind(enum.Enum):
    SINE_INTERIOR = "sine-interior"      # N-1 >= k_1 > ... > k_n >= 1
    COSINE_CLOSED = "cosine-closed"      # N >= k_1 >= ... >= k_n >= 0
    STRICT_CLOSED = "strict-closed"      # N >= k_1 > ... > k_n >= 0
    STRICT_HALF_OPEN = "strict-half-open"  # N-1 >= k_1 > ... > k_n >= 0
    WEAK_HALF_OPEN = "weak-half-open"    # N-1 >= k_1 >= ... >= k_n >= 0


_GRID_RULES = {
    GridKind.SINE_INTERIOR: (1, -1, True),
    GridKind.COSINE_CLOSED: (0, 0, False),
    GridKind.STRICT_CLOSED: (0, 0, True),
    GridKind.STRICT_HALF_OPEN: (0, -1, True),
    GridKind.WEAK_HALF_OPEN: (0, -1, False),
}


@dataclass(frozen=True)
class GridPoint:
    """The rational point ``k / N`` stored as integer numerators."""

    numerators: tuple[int, ...]
    N: int

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(int(k) for k in self.numerators))
        if self.N < 1:
            raise InvalidArgumentError("grid denominator must be positive")
        if any(k < 0 or k > self.N for k in self.numerators):
            raise InvalidArgumentError(f"numerators must lie in 0..{self.N}")

    @property
    def n(self) -> int:
        return len(self.numerators)

    @property
    def coords(self) -> np.ndarray:
        return np.asarray(self.numerators, dtype=float) / self.N

    def in_sine_interior(self) -> bool:
        k = self.numerators
        return all(0 < v < self.N for v in k) and all(a > b for a, b in zip(k, k[1:]))

    def in_cosine_closed(self) -> bool:
        k = self.numerators
        return all(a >= b for a, b in zip(k, k[1:]))


def enumerate_grid(kind, N: int, n: int) -> list[GridPoint]:
    """Grid points of the given kind, numerators in lexicographically descending order."""
    kind = GridKind(kind)
    if N < 1 or n < 1:
        raise InvalidArgumentError("need N >= 1 and n >= 1")
    lo, offset, strict = _GRID_RULES[kind]
    return [GridPoint(k, N) for k in _descending_tuples(lo, N + offset, n, strict)]
