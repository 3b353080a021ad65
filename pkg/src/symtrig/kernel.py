"""Evaluation of the four (anti)symmetric multivariate sine/cosine families.

For a label ``lam = (lam_1, ..., lam_n)`` and a point ``x = (x_1, ..., x_n)``
every family is built from the n x n matrix ``K[i, j] = trig(c * lam_i * x_j)``
where ``trig`` is sin or cos and ``c`` is 2*pi or pi depending on the angular
convention.  The *minus* families take ``det(K)``, the *plus* families take the
permanent ``det+(K)`` (every permutation term with sign +).

Three evaluation routes are provided:

* :func:`evaluate` -- Gaussian elimination for det, Ryser/direct sums for the
  permanent; vectorised over leading batch axes.
* :func:`evaluate_oracle` -- literal sum over the n! permutations; slow, used
  as ground truth.
* :func:`special_product` -- the closed product forms at the special labels
  rho_1, rho_2, rho_3.
"""
from __future__ import annotations

import enum
import itertools
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from .errors import InvalidArgumentError, SizeLimitError

__all__ = [
    "AngularConvention",
    "Family",
    "Rho",
    "determinant",
    "evaluate",
    "evaluate_oracle",
    "kernel_matrix",
    "permanent",
    "permutation_sign",
    "product_identity_constant",
    "rho",
    "special_product",
]

#: Permanents of size >= this use Ryser's formula; smaller ones the n! sum.
RYSER_THRESHOLD = 6
#: Largest size accepted by the permutation-sum oracle.
ORACLE_MAX_N = 8


class Family(enum.Enum):
    SIN_MINUS = "sin-minus"
    SIN_PLUS = "sin-plus"
    COS_MINUS = "cos-minus"
    COS_PLUS = "cos-plus"

    @property
    def alternating(self) -> bool:
        """True for the determinant (minus) families."""
        return self in (Family.SIN_MINUS, Family.COS_MINUS)

    @property
    def is_sine(self) -> bool:
        return self in (Family.SIN_MINUS, Family.SIN_PLUS)

    @property
    def trig(self):
        return np.sin if self.is_sine else np.cos

    @property
    def scalar_trig(self):
        return math.sin if self.is_sine else math.cos


class AngularConvention(enum.Enum):
    TWO_PI = "two-pi"
    PI = "pi"

    @property
    def scale(self) -> float:
        return 2.0 * math.pi if self is AngularConvention.TWO_PI else math.pi


class Rho(enum.Enum):
    """Special labels admitting product forms."""

    RHO1 = "rho1"  # (n, n-1, ..., 1)
    RHO2 = "rho2"  # (n-1/2, ..., 1/2)
    RHO3 = "rho3"  # (n-1, ..., 1, 0)


def _as_family(family) -> Family:
    return family if isinstance(family, Family) else Family(family)


def _as_convention(conv) -> AngularConvention:
    return conv if isinstance(conv, AngularConvention) else AngularConvention(conv)


def _check_pair(lam: ArrayLike, x: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    lam = np.asarray(lam, dtype=float)
    x = np.asarray(x, dtype=float)
    if lam.ndim == 0 or x.ndim == 0:
        raise InvalidArgumentError("label and point must be vectors")
    if lam.shape[-1] != x.shape[-1]:
        raise InvalidArgumentError(
            f"dimension mismatch: label has n={lam.shape[-1]}, point has n={x.shape[-1]}"
        )
    if lam.shape[-1] < 1:
        raise InvalidArgumentError("dimension must be at least 1")
    if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(x))):
        raise InvalidArgumentError("label and point entries must be finite")
    return lam, x


def permutation_sign(perm) -> int:
    """Sign of a permutation of ``0..n-1`` given in one-line notation."""
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(a: ArrayLike) -> np.ndarray | float:
    """Determinant by Gaussian elimination with partial pivoting.

    Works on stacks of matrices: the last two axes hold the square matrix and
    any leading axes are treated as a batch.
    """
    a = np.array(a, dtype=float, copy=True)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise InvalidArgumentError("determinant needs square matrices")
    n = a.shape[-1]
    batch_shape = a.shape[:-2]
    a = a.reshape(-1, n, n)
    rows = np.arange(a.shape[0])
    sign = np.ones(a.shape[0])
    for k in range(n):
        pivot = k + np.argmax(np.abs(a[:, k:, k]), axis=1)
        swapped = pivot != k
        sign[swapped] = -sign[swapped]
        top = a[rows, k].copy()
        a[rows, k] = a[rows, pivot]
        a[rows, pivot] = top
        p = a[:, k, k]
        # a zero pivot means the whole column below is zero as well
        safe = np.where(p == 0.0, 1.0, p)
        factors = a[:, k + 1:, k] / safe[:, None]
        a[:, k + 1:, k:] -= factors[:, :, None] * a[:, None, k, k:]
    out = sign * np.prod(np.diagonal(a, axis1=1, axis2=2), axis=1)
    out = out.reshape(batch_shape)
    return float(out) if out.ndim == 0 else out


def _permanent_direct(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    idx = np.arange(n)
    total = np.zeros(a.shape[:-2])
    for cols in itertools.permutations(range(n)):
        total = total + np.prod(a[..., idx, cols], axis=-1)
    return total


def _permanent_ryser(a: np.ndarray) -> np.ndarray:
    # Gray-code walk over column subsets; row sums are updated one column at a time.
    n = a.shape[-1]
    rowsums = np.zeros(a.shape[:-1])
    total = np.zeros(a.shape[:-2])
    members = 0
    in_subset = [False] * n
    for step in range(1, 2 ** n):
        j = (step & -step).bit_length() - 1
        if in_subset[j]:
            rowsums = rowsums - a[..., :, j]
            members -= 1
        else:
            rowsums = rowsums + a[..., :, j]
            members += 1
        in_subset[j] = not in_subset[j]
        term = np.prod(rowsums, axis=-1)
        total = total + term if members % 2 == 0 else total - term
    return total if n % 2 == 0 else -total


def permanent(a: ArrayLike) -> np.ndarray | float:
    """Permanent (antideterminant) of one matrix or a stack of matrices.

    Sizes below :data:`RYSER_THRESHOLD` use the direct n! sum, larger ones
    Ryser's inclusion-exclusion formula.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise InvalidArgumentError("permanent needs square matrices")
    if a.shape[-1] >= RYSER_THRESHOLD:
        out = _permanent_ryser(a)
    else:
        out = _permanent_direct(a)
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def kernel_matrix(family, conv, lam: ArrayLike, x: ArrayLike) -> np.ndarray:
    """The matrix ``trig(c * lam_i * x_j)``; broadcasts over leading axes."""
    family, conv = _as_family(family), _as_convention(conv)
    lam, x = _check_pair(lam, x)
    return family.trig(conv.scale * lam[..., :, None] * x[..., None, :])


def evaluate(family, conv, lam: ArrayLike, x: ArrayLike) -> np.ndarray | float:
    """Value of ``family`` at label ``lam`` and point ``x``.

    Parameters
    ----------
    family : Family or str
        One of ``sin-minus``, ``sin-plus``, ``cos-minus``, ``cos-plus``.
    conv : AngularConvention or str
        ``two-pi`` for ``trig(2 pi lam x)``, ``pi`` for ``trig(pi lam x)``.
    lam, x : array_like, shape (..., n)
        Label and point.  Leading axes broadcast against each other, so a
        whole mesh of points can be evaluated in one call.

    Returns
    -------
    float or ndarray
        A float for single vectors, otherwise an array of the broadcast
        batch shape.
    """
    family = _as_family(family)
    k = kernel_matrix(family, conv, lam, x)
    return determinant(k) if family.alternating else permanent(k)


def evaluate_oracle(family, conv, lam: ArrayLike, x: ArrayLike) -> float:
    """Literal permutation sum; the reference every fast path is checked against."""
    family, conv = _as_family(family), _as_convention(conv)
    lam, x = _check_pair(lam, x)
    if lam.ndim != 1 or x.ndim != 1:
        raise InvalidArgumentError("the oracle evaluates one label/point pair")
    n = lam.shape[0]
    if n > ORACLE_MAX_N:
        raise SizeLimitError(f"oracle limited to n <= {ORACLE_MAX_N}, got n={n}")
    trig = family.scalar_trig
    c = conv.scale
    terms = []
    for w in itertools.permutations(range(n)):
        term = 1.0
        for i in range(n):
            term *= trig(c * float(lam[w[i]]) * float(x[i]))
        if family.alternating and permutation_sign(w) < 0:
            term = -term
        terms.append(term)
    return math.fsum(terms)


def rho(which, n: int) -> np.ndarray:
    """The special label rho_1, rho_2 or rho_3 in dimension ``n``."""
    which = which if isinstance(which, Rho) else Rho(which)
    top = np.arange(n, 0, -1, dtype=float)
    if which is Rho.RHO1:
        return top
    if which is Rho.RHO2:
        return top - 0.5
    return top - 1.0


def special_product(which, family, x: ArrayLike) -> np.ndarray | float:
    """Closed product over pairs at a special label.

    Returns ``prod_{i<j} t(pi(x_i - x_j)) t(pi(x_i + x_j))`` times
    ``prod_i t(2 pi x_i)`` (rho_1), ``prod_i t(pi x_i)`` (rho_2) or 1 (rho_3),
    where ``t`` is sin for ``sin-minus`` and cos for ``cos-plus``.

    The product is returned exactly as written, with no normalising constant;
    :func:`product_identity_constant` gives the factor relating it to
    :func:`evaluate` where such a factor exists.
    """
    which = which if isinstance(which, Rho) else Rho(which)
    family = _as_family(family)
    if family not in (Family.SIN_MINUS, Family.COS_PLUS):
        raise InvalidArgumentError("product forms exist for sin-minus and cos-plus only")
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] < 1:
        raise InvalidArgumentError("point must be a vector with n >= 1")
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("point entries must be finite")
    t = family.trig
    n = x.shape[-1]
    out = np.ones(x.shape[:-1])
    for i in range(n):
        for j in range(i + 1, n):
            out = out * t(np.pi * (x[..., i] - x[..., j])) * t(np.pi * (x[..., i] + x[..., j]))
    if which is Rho.RHO1:
        out = out * np.prod(t(2 * np.pi * x), axis=-1)
    elif which is Rho.RHO2:
        out = out * np.prod(t(np.pi * x), axis=-1)
    return float(out) if out.ndim == 0 else out


def product_identity_constant(which, family, n: int) -> Optional[float]:
    """Factor ``C`` with ``evaluate(family, two-pi, rho, x) == C * special_product(...)``.

    Returns None when no such constant exists (the function is not a
    multiple of the product).  The values follow from writing each row as a
    Chebyshev polynomial in ``cos 2 pi x_j`` and factoring the Vandermonde
    determinant; ``sin-minus`` at rho_3 has a zero row, hence constant 0.
    """
    which = which if isinstance(which, Rho) else Rho(which)
    family = _as_family(family)
    pairs = n * (n - 1) // 2
    if family is Family.SIN_MINUS:
        if which is Rho.RHO3:
            return 0.0
        return float((-4) ** pairs)
    if family is Family.COS_PLUS:
        if n == 1:
            return 1.0
        if n == 2 and which is Rho.RHO3:
            return 2.0
        return None
    raise InvalidArgumentError("product forms exist for sin-minus and cos-plus only")
