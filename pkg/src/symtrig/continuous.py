"""Quadrature and finite-difference checks of the continuous-domain identities.

Integrals over the closed fundamental domain ``1/2 >= x_1 >= ... >= x_n >= 0``
are computed as a tensor Gauss-Legendre integral over the box ``[0, 1/2]^n``
divided by ``n!``.  This is exact bookkeeping whenever the integrand is
symmetric under coordinate permutations, which holds for every product of two
functions from the same (anti)symmetric family and for ``|f|^2`` of an
(anti)symmetric sample.
"""
from __future__ import annotations

import enum
import functools
import math
import warnings
from itertools import combinations
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from .errors import AccuracyWarning, InvalidArgumentError
from .kernel import AngularConvention, Family, evaluate
from .symmetry import DominantLabelSet, LabelSetKind, enumerate_labels, stabilizer_order

__all__ = [
    "Mix",
    "QuadratureRule",
    "SeriesCoefficients",
    "box_integral",
    "cross_orthogonality",
    "default_step",
    "elementary_symmetric",
    "expand",
    "inner_product_F",
    "laplace_eigen_defect",
    "orthogonality_constant",
    "partial_sum",
    "plancherel_defect",
    "series_coefficient",
    "series_labels",
    "sigma_k_apply",
    "sigma_k_eigen_defect",
]

TWO_PI = AngularConvention.TWO_PI
Sample = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor Gauss-Legendre rule on ``[0, 1/2]`` per axis."""

    points: int = 32

    def __post_init__(self):
        if self.points < 1:
            raise InvalidArgumentError("quadrature needs at least one point per axis")

    def axis(self) -> tuple[np.ndarray, np.ndarray]:
        return _axis_rule(self.points)

    def nodes(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Nodes of shape ``(points**n, n)`` and matching weights."""
        return _tensor_rule(self.points, n)

    def resolves(self, frequency: float) -> bool:
        """Whether ``cos(2 pi q t)`` with ``q <= frequency`` is integrated to ~1e-14.

        Heuristic: the rule needs a few more nodes than the number of
        half-oscillations ``pi q / 2`` across ``[0, 1/2]``.
        """
        return self.points >= math.pi * frequency / 2.0 + 6


@functools.lru_cache(maxsize=32)
def _axis_rule(points: int) -> tuple[np.ndarray, np.ndarray]:
    u, w = np.polynomial.legendre.leggauss(points)
    t, wt = (u + 1.0) / 4.0, w / 4.0
    t.flags.writeable = False
    wt.flags.writeable = False
    return t, wt


@functools.lru_cache(maxsize=32)
def _tensor_rule(points: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = _axis_rule(points)
    grids = np.meshgrid(*([t] * n), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.ones(points ** n)
    for wg in np.meshgrid(*([w] * n), indexing="ij"):
        weights = weights * wg.ravel()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def box_integral(values: ArrayLike, weights: ArrayLike) -> float:
    """Compensated weighted sum, independent of summation order to ~1 ulp."""
    return math.fsum(np.asarray(weights) * np.asarray(values))


def _as_family(family) -> Family:
    return family if isinstance(family, Family) else Family(family)


def _label(m: ArrayLike) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 1 or m.shape[0] < 1:
        raise InvalidArgumentError("label must be a non-empty vector")
    return m


def _warn_if_unresolved(rule: QuadratureRule, frequency: float) -> None:
    if not rule.resolves(frequency):
        warnings.warn(
            f"{rule.points} Gauss-Legendre points per axis may not resolve frequency {frequency:g}",
            AccuracyWarning,
            stacklevel=3,
        )


def inner_product_F(family, m: ArrayLike, m2: ArrayLike,
                    rule: QuadratureRule = QuadratureRule()) -> float:
    """``2^{2n}`` times the integral of ``f_m f_m2`` over the closed fundamental domain."""
    family = _as_family(family)
    m, m2 = _label(m), _label(m2)
    if m.shape != m2.shape:
        raise InvalidArgumentError("labels must have the same dimension")
    n = m.shape[0]
    _warn_if_unresolved(rule, np.abs(m).max() + np.abs(m2).max())
    x, w = rule.nodes(n)
    f = evaluate(family, TWO_PI, m[None, :], x)
    g = evaluate(family, TWO_PI, m2[None, :], x)
    return 4.0 ** n / math.factorial(n) * box_integral(f * g, w)


def orthogonality_constant(family, m: ArrayLike) -> float:
    """``2^{2n} * integral of f_m^2`` over the closed fundamental domain.

    For labels without zero entries this is 1 (minus families) or ``|G_m|``
    (plus families).  A zero entry contributes the 1-D factor
    ``4 * int_0^{1/2} cos^2(0) dt = 2`` for cosine families and kills sine
    families outright.
    """
    family = _as_family(family)
    m = np.asarray(m)
    zeros = int(np.count_nonzero(m == 0))
    if family.alternating and stabilizer_order(m) > 1:
        return 0.0
    if family.is_sine and zeros:
        return 0.0
    base = 1.0 if family.alternating else float(stabilizer_order(m))
    return base * 2.0 ** zeros


class Mix(enum.Enum):
    SIN_MINUS_COS_PLUS = "sin-minus/cos-plus"
    SIN_PLUS_COS_MINUS = "sin-plus/cos-minus"

    @property
    def families(self) -> tuple[Family, Family]:
        if self is Mix.SIN_MINUS_COS_PLUS:
            return Family.SIN_MINUS, Family.COS_PLUS
        return Family.SIN_PLUS, Family.COS_MINUS


def _in_closure(x: np.ndarray) -> np.ndarray:
    inside = (x[:, 0] <= 0.5) & (x[:, -1] >= 0.0)
    for i in range(x.shape[1] - 1):
        inside &= x[:, i] >= x[:, i + 1]
    return inside


def cross_orthogonality(mix, m: ArrayLike, m2: ArrayLike,
                        rule: QuadratureRule = QuadratureRule()) -> float:
    """Integral of the mixed product over the domain extended by the swap of ``x_1, x_2``.

    For ``n = 1`` there is no transposition; the extension is by ``x -> -x``
    and the integral runs over a full period ``[-1/2, 1/2]``.
    """
    mix = mix if isinstance(mix, Mix) else Mix(mix)
    fa, fb = mix.families
    m, m2 = _label(m), _label(m2)
    if m.shape != m2.shape:
        raise InvalidArgumentError("labels must have the same dimension")
    n = m.shape[0]
    _warn_if_unresolved(rule, np.abs(m).max() + np.abs(m2).max())
    x, w = rule.nodes(n)
    if n == 1:
        x = np.concatenate([x, -x])
        w = np.concatenate([w, w])
        inside = np.ones(len(w), dtype=bool)
    else:
        swapped = x.copy()
        swapped[:, [0, 1]] = swapped[:, [1, 0]]
        inside = _in_closure(x) | _in_closure(swapped)
    f = evaluate(fa, TWO_PI, m[None, :], x) * evaluate(fb, TWO_PI, m2[None, :], x)
    return box_integral(np.where(inside, f, 0.0), w)


def series_labels(family, n: int, bound: int) -> list[tuple[int, ...]]:
    """Dominant labels with entries ``<= bound`` that carry a non-zero basis function.

    Minus families use strictly descending labels, plus families weakly
    descending ones.  Sine families need every entry positive; cosine
    families also admit zero entries.
    """
    family = _as_family(family)
    if family.alternating:
        kind = LabelSetKind.STRICT_POSITIVE if family.is_sine else LabelSetKind.STRICT_WITH_ZERO
    else:
        kind = LabelSetKind.WEAK_NONNEG
    labels = enumerate_labels(DominantLabelSet(kind, bound, n))
    if family is Family.SIN_PLUS:
        labels = [m for m in labels if m[-1] > 0]
    return labels


@dataclass
class SeriesCoefficients:
    """Truncated expansion ``f = sum_m c_m f_m`` over dominant labels."""

    family: Family
    coefficients: dict[tuple[int, ...], float] = field(default_factory=dict)
    bound: Optional[int] = None

    def __post_init__(self):
        self.family = _as_family(self.family)
        for m in self.coefficients:
            _check_dominant(self.family, m)


def _check_dominant(family: Family, m: Sequence[int]) -> None:
    pairs = list(zip(m, m[1:]))
    ok = all(a > b for a, b in pairs) if family.alternating else all(a >= b for a, b in pairs)
    if not ok or (m and m[-1] < 0):
        kind = "strictly" if family.alternating else "weakly"
        raise InvalidArgumentError(f"label {tuple(m)} is not {kind} descending and non-negative")


def _sample_values(sample: Sample, x: np.ndarray) -> np.ndarray:
    values = np.asarray(sample(x), dtype=float)
    if values.shape != (x.shape[0],):
        raise InvalidArgumentError("sample must map an (P, n) array of points to P values")
    return values


def series_coefficient(family, sample: Sample, m: ArrayLike,
                       rule: QuadratureRule = QuadratureRule()) -> float:
    """Expansion coefficient ``c_m = 2^{2n} / C_m * integral of f * f_m`` over the domain.

    ``C_m`` is :func:`orthogonality_constant` (1 for minus families, ``|G_m|``
    for plus families when ``m`` has no zero entries).  ``sample`` receives an
    array of shape ``(P, n)`` of points in ``[0, 1/2]^n`` and must be
    (anti)symmetric in the way ``f_m`` is.
    """
    family = _as_family(family)
    m = _label(m)
    _check_dominant(family, tuple(int(v) for v in m))
    norm = orthogonality_constant(family, m)
    if norm == 0.0:
        raise InvalidArgumentError(f"label {tuple(m)} gives the zero function for {family.value}")
    n = m.shape[0]
    _warn_if_unresolved(rule, 2 * np.abs(m).max())
    x, w = rule.nodes(n)
    f = evaluate(family, TWO_PI, m[None, :], x)
    return 4.0 ** n / math.factorial(n) * box_integral(_sample_values(sample, x) * f, w) / norm


def expand(family, sample: Sample, n: int, bound: int,
           rule: QuadratureRule = QuadratureRule()) -> SeriesCoefficients:
    """All coefficients of ``sample`` for labels with entries ``<= bound``."""
    family = _as_family(family)
    coeffs = {m: series_coefficient(family, sample, m, rule) for m in series_labels(family, n, bound)}
    return SeriesCoefficients(family, coeffs, bound)


def partial_sum(family, coeffs: SeriesCoefficients | Mapping, x: ArrayLike) -> np.ndarray | float:
    """``sum_m c_m f_m(x)``; ``x`` may be one point or an array of points."""
    family = _as_family(family)
    if isinstance(coeffs, SeriesCoefficients):
        if coeffs.family is not family:
            raise InvalidArgumentError("coefficients were computed for a different family")
        coeffs = coeffs.coefficients
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape[:-1])
    for m, c in coeffs.items():
        total = total + c * evaluate(family, TWO_PI, np.asarray(m, dtype=float), x)
    return float(total) if total.ndim == 0 else total


def plancherel_defect(family, coeffs: SeriesCoefficients | Mapping, sample: Sample,
                      rule: QuadratureRule = QuadratureRule(), n: Optional[int] = None) -> float:
    """``|sum_m C_m c_m^2 - 2^{2n} * integral of f^2|`` over the fundamental domain.

    ``n`` is only needed when ``coeffs`` is empty.
    """
    family = _as_family(family)
    if isinstance(coeffs, SeriesCoefficients):
        coeffs = coeffs.coefficients
    if coeffs:
        n = len(next(iter(coeffs)))
    elif n is None:
        raise InvalidArgumentError("pass n when the coefficient set is empty")
    energy = math.fsum(orthogonality_constant(family, m) * c * c for m, c in coeffs.items())
    x, w = rule.nodes(n)
    f = _sample_values(sample, x)
    return abs(energy - 4.0 ** n / math.factorial(n) * box_integral(f * f, w))


def elementary_symmetric(values: Sequence[float], k: int) -> float:
    """``sigma_k(values)``: sum over k-subsets of the products."""
    e = [1.0] + [0.0] * len(values)
    for v in values:
        for j in range(len(values), 0, -1):
            e[j] += e[j - 1] * v
    return e[k] if 0 <= k <= len(values) else 0.0


def default_step(k: int = 1) -> float:
    """Finite-difference step for a product of ``k`` second differences.

    Roundoff grows like ``eps / h^{2k}``, so higher orders need larger steps
    to keep the ``h^2`` truncation term dominant.
    """
    return {1: 1e-3, 2: 1e-2}.get(k, 3e-2)


def _difference_product(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray,
                        axes: Sequence[int], h: float) -> float:
    # product over ``axes`` of the 3-point second difference (1, -2, 1) / h^2
    offsets = np.array(np.meshgrid(*([[-1, 0, 1]] * len(axes)), indexing="ij")).reshape(len(axes), -1).T
    coeff = np.prod(np.where(offsets == 0, -2.0, 1.0), axis=1)
    pts = np.repeat(x[None, :], len(offsets), axis=0)
    pts[:, list(axes)] += h * offsets
    return math.fsum(coeff * func(pts)) / h ** (2 * len(axes))


def sigma_k_apply(func: Callable[[np.ndarray], np.ndarray], x: ArrayLike, k: int, h: float) -> float:
    """``sigma_k(D_1, ..., D_n) func`` at ``x``, each ``D_i`` a central second difference.

    ``func`` maps an ``(P, n)`` array of points to ``P`` values.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if not 1 <= k <= n:
        raise InvalidArgumentError(f"k must lie in 1..{n}")
    return math.fsum(_difference_product(func, x, axes, h) for axes in combinations(range(n), k))


def sigma_k_eigen_defect(family, lam: ArrayLike, k: int, x: ArrayLike,
                         h: Optional[float] = None) -> float:
    """``|sigma_k(D_1, ..., D_n) f - (-4 pi^2)^k sigma_k(lam^2) f|`` at ``x``.

    ``D_i`` is the central second difference along axis ``i``; the defect is
    O(h^2).
    """
    family = _as_family(family)
    lam, x = _label(lam), _label(x)
    n = lam.shape[0]
    if x.shape[0] != n:
        raise InvalidArgumentError("label and point must have the same dimension")
    if not 1 <= k <= n:
        raise InvalidArgumentError(f"k must lie in 1..{n}")
    h = default_step(k) if h is None else float(h)
    if h <= 0:
        raise InvalidArgumentError("step must be positive")
    if np.finfo(float).eps * 4.0 ** k / h ** (2 * k) > 1e-4:
        warnings.warn(f"step h={h:g} is small enough for cancellation to dominate",
                      AccuracyWarning, stacklevel=2)

    def func(p):
        return evaluate(family, TWO_PI, lam[None, :], p)

    applied = sigma_k_apply(func, x, k, h)
    eigen = (-4.0 * math.pi ** 2) ** k * elementary_symmetric(lam ** 2, k)
    return abs(applied - eigen * evaluate(family, TWO_PI, lam, x))


def laplace_eigen_defect(family, lam: ArrayLike, x: ArrayLike, h: Optional[float] = None) -> float:
    """``|Delta_h f + 4 pi^2 <lam, lam> f|`` at ``x``, Delta_h the (2n+1)-point Laplacian."""
    return sigma_k_eigen_defect(family, lam, 1, x, h)
