"""Finite (discrete) sine and cosine transforms, one-dimensional and multivariate.

Every transform is described by a :class:`TransformKind` (the kind name plus
the grid parameter ``N`` and dimension ``n``).  A kind fixes, as pure data:

* the 1-D kernel ``trig(pi * (r + a) * (k + b) / N)`` with shifts ``a, b`` in
  ``{0, 1/2}``;
* whether the multivariate kernel is the determinant (antisymmetric kinds) or
  the permanent (symmetric kinds) of those entries, scaled by ``|S_n|^{-1/2}``;
* the ordered label set and grid (see :mod:`symtrig.symmetry`);
* the point weights ``w(k)`` and the label norms ``d(r)`` such that::

      sum_k w(k) K_r(k) K_r'(k) = d(r) delta_{r r'}

Forward and inverse transforms follow directly::

      a_r  = d(r)^{-1} sum_k w(k) f(k) K_r(k)
      f(k) = sum_r a_r K_r(k)

and the Plancherel identity reads ``sum_k w |f|^2 == sum_r d |a|^2``.

Weights and norms are kept as exact :class:`fractions.Fraction` values.
"""
from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
import scipy.fft
from numpy.typing import ArrayLike

from .errors import InvalidArgumentError
from .kernel import AngularConvention, Family, evaluate, evaluate_oracle, permutation_sign
from .symmetry import GridPoint, stabilizer_order

__all__ = [
    "Kind",
    "TransformKind",
    "amdst_forward_separable",
    "forward",
    "gram_matrix",
    "inverse",
    "kernel_value",
    "plancherel_defect_discrete",
]

HALF = Fraction(1, 2)


class Kind(enum.Enum):
    DST1D = "dst1d"
    DCT1D = "dct1d"
    DCT1 = "dct-1"
    DCT2 = "dct-2"
    DCT3 = "dct-3"
    DCT4 = "dct-4"
    DST1 = "dst-1"
    DST2 = "dst-2"
    DST3 = "dst-3"
    DST4 = "dst-4"
    AMDST = "amdst"
    SMDCT = "smdct"
    AMDCT1 = "amdct-1"
    AMDCT2 = "amdct-2"
    AMDCT3 = "amdct-3"
    AMDCT4 = "amdct-4"
    SMDCT1 = "smdct-1"
    SMDCT2 = "smdct-2"
    SMDCT3 = "smdct-3"
    SMDCT4 = "smdct-4"

    @property
    def multivariate(self) -> bool:
        return self.value.startswith(("am", "sm"))


MULTIVARIATE_KINDS = tuple(k for k in Kind if k.multivariate)
ONE_D_KINDS = tuple(k for k in Kind if not k.multivariate)


def _one(k: int, N: int) -> Fraction:
    return Fraction(1)


def _half_at(*ends: str) -> Callable[[int, int], Fraction]:
    def weight(k: int, N: int) -> Fraction:
        hit = ("0" in ends and k == 0) or ("N" in ends and k == N)
        return HALF if hit else Fraction(1)
    return weight


def _two_at(*ends: str) -> Callable[[int, int], Fraction]:
    def weight(r: int, N: int) -> Fraction:
        hit = ("0" in ends and r == 0) or ("N" in ends and r == N)
        return Fraction(2) if hit else Fraction(1)
    return weight


@dataclass(frozen=True)
class _Rule:
    sine: bool
    label_shift: Fraction
    point_shift: Fraction
    # inclusive entry ranges as (low, offset from N)
    labels: tuple[int, int]
    grid: tuple[int, int]
    point_weight: Callable[[int, int], Fraction]
    label_weight: Callable[[int, int], Fraction]
    # per-axis norm: N/2 for most kinds, N for the plain cosine transform
    axis_norm_halves: bool = True
    symmetry: str = ""  # "anti", "sym" or "" for 1-D


def _dct_rules(symmetry: str = "") -> dict[int, _Rule]:
    return {
        1: _Rule(False, Fraction(0), Fraction(0), (0, 0), (0, 0),
                 _half_at("0", "N"), _two_at("0", "N"), symmetry=symmetry),
        2: _Rule(False, HALF, Fraction(0), (0, -1), (0, -1),
                 _half_at("0"), _one, symmetry=symmetry),
        3: _Rule(False, Fraction(0), HALF, (0, -1), (0, -1),
                 _one, _two_at("0"), symmetry=symmetry),
        4: _Rule(False, HALF, HALF, (0, -1), (0, -1), _one, _one, symmetry=symmetry),
    }


_DCT = _dct_rules()
_AMDCT = _dct_rules("anti")
_SMDCT = _dct_rules("sym")

_RULES: dict[Kind, _Rule] = {
    Kind.DST1D: _Rule(True, Fraction(0), Fraction(0), (1, -1), (1, -1), _one, _one),
    # r_m = 1/2 inside, 1 at the ends, with norm N per axis
    Kind.DCT1D: _Rule(False, Fraction(0), Fraction(0), (0, 0), (0, 0),
                      _half_at("0", "N"), lambda r, N: Fraction(1) if r in (0, N) else HALF,
                      axis_norm_halves=False),
    Kind.DCT1: _DCT[1],
    Kind.DCT2: _DCT[2],
    Kind.DCT3: _DCT[3],
    Kind.DCT4: _DCT[4],
    # sine counterparts: index ranges shifted so each matrix is square and orthogonal
    Kind.DST1: _Rule(True, Fraction(0), Fraction(0), (1, -1), (1, -1), _one, _one),
    Kind.DST2: _Rule(True, HALF, Fraction(0), (0, -1), (1, 0), _half_at("N"), _one),
    Kind.DST3: _Rule(True, Fraction(0), HALF, (1, 0), (0, -1), _one, _two_at("N")),
    Kind.DST4: _Rule(True, HALF, HALF, (0, -1), (0, -1), _one, _one),
    Kind.AMDST: _Rule(True, Fraction(0), Fraction(0), (1, -1), (1, -1), _one, _one,
                      symmetry="anti"),
    Kind.SMDCT: _Rule(False, Fraction(0), Fraction(0), (0, 0), (0, 0),
                      _half_at("0", "N"), lambda r, N: Fraction(1) if r in (0, N) else HALF,
                      axis_norm_halves=False, symmetry="sym"),
    Kind.AMDCT1: _AMDCT[1],
    Kind.AMDCT2: _AMDCT[2],
    Kind.AMDCT3: _AMDCT[3],
    Kind.AMDCT4: _AMDCT[4],
    Kind.SMDCT1: _SMDCT[1],
    Kind.SMDCT2: _SMDCT[2],
    Kind.SMDCT3: _SMDCT[3],
    Kind.SMDCT4: _SMDCT[4],
}


def _descending(lo: int, hi: int, n: int, strict: bool) -> list[tuple[int, ...]]:
    values = range(hi, lo - 1, -1)
    if strict:
        return list(itertools.combinations(values, n))
    return list(itertools.combinations_with_replacement(values, n))


@dataclass(frozen=True)
class TransformKind:
    """A concrete transform: kind name, grid parameter ``N`` and dimension ``n``."""

    kind: Kind
    N: int
    n: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.N < 1:
            raise InvalidArgumentError("N must be positive")
        if self.n < 1:
            raise InvalidArgumentError("n must be positive")
        if not self.kind.multivariate and self.n != 1:
            raise InvalidArgumentError(f"{self.kind.value} is one-dimensional; n must be 1")

    @property
    def rule(self) -> _Rule:
        return _RULES[self.kind]

    @property
    def family(self) -> Family:
        rule = self.rule
        if rule.symmetry == "sym":
            return Family.SIN_PLUS if rule.sine else Family.COS_PLUS
        return Family.SIN_MINUS if rule.sine else Family.COS_MINUS

    @property
    def normalization(self) -> float:
        """``|S_n|^{-1/2}`` for multivariate kinds, 1 for the 1-D primitives."""
        return 1.0 / math.sqrt(math.factorial(self.n)) if self.kind.multivariate else 1.0

    def labels(self) -> list[tuple[int, ...]]:
        lo, off = self.rule.labels
        return _descending(lo, self.N + off, self.n, self.rule.symmetry != "sym")

    def grid(self) -> list[tuple[int, ...]]:
        lo, off = self.rule.grid
        return _descending(lo, self.N + off, self.n, self.rule.symmetry != "sym")

    def grid_points(self) -> list[GridPoint]:
        return [GridPoint(k, self.N) for k in self.grid()]

    def point_weights(self) -> list[Fraction]:
        """``w(k) = |S_n| c_k`` (divided by ``|S_k|`` for symmetric kinds)."""
        rule = self.rule
        order = math.factorial(self.n)
        out = []
        for k in self.grid():
            w = Fraction(order)
            for v in k:
                w *= rule.point_weight(v, self.N)
            if rule.symmetry == "sym":
                w /= stabilizer_order(k)
            out.append(w)
        return out

    def label_weights(self) -> list[Fraction]:
        """Diagonal of the Gram matrix: ``base^n h_r`` (times ``|S_r|`` for symmetric kinds)."""
        rule = self.rule
        base = Fraction(self.N, 2) if rule.axis_norm_halves else Fraction(self.N)
        out = []
        for r in self.labels():
            d = base ** self.n
            for v in r:
                d *= rule.label_weight(v, self.N)
            if rule.symmetry == "sym":
                d *= stabilizer_order(r)
            out.append(d)
        return out

    def entry_arguments(self, r: ArrayLike, k: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        """Shifted label ``r + a`` and point ``(k + b) / N`` fed to the pi-convention kernel."""
        rule = self.rule
        lam = np.asarray(r, dtype=float) + float(rule.label_shift)
        x = (np.asarray(k, dtype=float) + float(rule.point_shift)) / self.N
        return lam, x

    @classmethod
    def parse(cls, name: str, N: int, n: int = 1) -> "TransformKind":
        try:
            kind = Kind(name.lower())
        except ValueError:
            names = ", ".join(k.value for k in Kind)
            raise InvalidArgumentError(f"unknown transform kind {name!r}; expected one of {names}")
        return cls(kind, N, n)


def _numerators(k) -> tuple[int, ...]:
    if isinstance(k, GridPoint):
        return k.numerators
    return tuple(int(v) for v in np.atleast_1d(k))


def kernel_value(tk: TransformKind, r: Sequence[int], k, strict: bool = False) -> float:
    """Kernel of ``tk`` at label ``r`` and grid point ``k`` (numerators or :class:`GridPoint`).

    With ``strict=True`` the label and point must belong to the kind's sets;
    otherwise any integer vectors are accepted, which is how symmetry of the
    kernel under permutations of ``k`` is tested.
    """
    if isinstance(k, GridPoint) and k.N != tk.N:
        raise InvalidArgumentError(f"grid point has N={k.N}, transform has N={tk.N}")
    r = tuple(int(v) for v in np.atleast_1d(r))
    k = _numerators(k)
    if len(r) != tk.n or len(k) != tk.n:
        raise InvalidArgumentError(f"label and point must have n={tk.n} entries")
    if strict:
        if r not in set(tk.labels()):
            raise InvalidArgumentError(f"label {r} is not in the label set of {tk.kind.value}")
        if k not in set(tk.grid()):
            raise InvalidArgumentError(f"point {k} is not in the grid of {tk.kind.value}")
    lam, x = tk.entry_arguments(r, k)
    return tk.normalization * evaluate(tk.family, AngularConvention.PI, lam, x)


@functools.lru_cache(maxsize=256)
def _matrix(tk: TransformKind, oracle: bool) -> np.ndarray:
    labels = np.asarray(tk.labels(), dtype=float).reshape(-1, tk.n)
    grid = np.asarray(tk.grid(), dtype=float).reshape(-1, tk.n)
    lam, x = tk.entry_arguments(labels, grid)
    if oracle:
        out = np.array([[evaluate_oracle(tk.family, AngularConvention.PI, l, p) for p in x]
                        for l in lam]).reshape(len(labels), len(grid))
    else:
        out = evaluate(tk.family, AngularConvention.PI, lam[:, None, :], x[None, :, :])
        out = np.asarray(out).reshape(len(labels), len(grid))
    out = tk.normalization * out
    out.flags.writeable = False
    return out


def kernel_matrix(tk: TransformKind, oracle: bool = False) -> np.ndarray:
    """Kernel values with rows indexed by labels and columns by grid points.

    The matrix is cached per ``(tk, oracle)`` and returned read-only.
    ``oracle=True`` builds it from the permutation-sum reference instead of
    the determinant/permanent routines.
    """
    return _matrix(tk, bool(oracle))


def _weights(tk: TransformKind) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([float(w) for w in tk.point_weights()]),
            np.array([float(d) for d in tk.label_weights()]))


def _check_length(values: ArrayLike, expected: int, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.shape[0] != expected:
        raise InvalidArgumentError(f"{what} must be a vector of length {expected}, got shape {values.shape}")
    return values


def forward(tk: TransformKind, data: ArrayLike, oracle: bool = False) -> np.ndarray:
    """Coefficients ``a_r`` of data sampled on the grid of ``tk`` (canonical order)."""
    data = _check_length(data, len(tk.grid()), "data")
    w, d = _weights(tk)
    return kernel_matrix(tk, oracle) @ (w * data) / d


def inverse(tk: TransformKind, coeffs: ArrayLike) -> np.ndarray:
    """Grid values ``f(k) = sum_r a_r K_r(k)``."""
    coeffs = _check_length(coeffs, len(tk.labels()), "coefficients")
    return kernel_matrix(tk).T @ coeffs


def gram_matrix(tk: TransformKind) -> np.ndarray:
    """Weighted inner products ``sum_k w(k) K_r(k) K_r'(k)`` over the label set."""
    K = kernel_matrix(tk)
    w, _ = _weights(tk)
    return (K * w) @ K.T


def expected_gram_diagonal(tk: TransformKind) -> np.ndarray:
    return _weights(tk)[1]


def plancherel_defect_discrete(tk: TransformKind, data: ArrayLike) -> float:
    """``|sum_k w |f|^2 - sum_r d |a_r|^2|`` for the kind's Plancherel identity."""
    data = _check_length(data, len(tk.grid()), "data")
    w, d = _weights(tk)
    a = forward(tk, data)
    return abs(math.fsum(w * data * data) - math.fsum(d * a * a))


def data_energy(tk: TransformKind, data: ArrayLike) -> float:
    data = _check_length(data, len(tk.grid()), "data")
    return math.fsum(_weights(tk)[0] * data * data)


def amdst_forward_separable(N: int, n: int, data: ArrayLike) -> np.ndarray:
    """AMDST coefficients computed through a tensor 1-D DST-I.

    The data on the strictly descending grid is extended antisymmetrically to
    the full cube ``{1..N-1}^n`` (zero where coordinates repeat), transformed
    axis by axis with :func:`scipy.fft.dstn`, and the dominant entries are
    rescaled by ``sqrt(n!)``.  Independent of the determinant kernels.
    """
    tk = TransformKind(Kind.AMDST, N, n)
    grid = tk.grid()
    data = _check_length(data, len(grid), "data")
    labels = tk.labels()
    if not labels:
        return np.zeros(0)
    full = np.zeros((N - 1,) * n)
    for k, value in zip(grid, data):
        for w in itertools.permutations(range(n)):
            full[tuple(k[i] - 1 for i in w)] = permutation_sign(w) * value
    # scipy's unnormalised DST-I carries a factor 2 per axis
    tensor = scipy.fft.dstn(full, type=1) / N ** n
    scale = math.sqrt(math.factorial(n))
    return np.array([scale * tensor[tuple(m - 1 for m in r)] for r in labels])
