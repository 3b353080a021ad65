"""Invariant suites run by ``symtrig verify``.

Each check returns its maximum defect; a row passes when the defect is at or
below the check's tolerance.  Checks draw from a fixed-seed generator so a
suite is reproducible run to run.
"""
from __future__ import annotations

import itertools
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import continuous as cont
from . import discrete as disc
from .errors import AccuracyWarning
from .kernel import AngularConvention, Family, evaluate, evaluate_oracle
from .symmetry import (DominantLabelSet, GridKind, GroupElement, LabelSetKind, act,
                       enumerate_grid, enumerate_labels, fold, label_set_size,
                       stabilizer_order)

__all__ = ["Check", "Row", "SUITES", "build_checks", "run_suite"]

SUITES = ("kernel", "symmetry", "continuous", "discrete", "all")
SEED = 20240917
TWO_PI = AngularConvention.TWO_PI
PI = AngularConvention.PI

# (N, n) sizes exercised by the discrete suite when none is requested
DISCRETE_SIZES = ((4, 2), (6, 2), (5, 3), (3, 3))
ONE_D_SIZES = (4, 6)


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], float]
    tol: float
    # "defect" tolerances follow --tol; "ratio" checks keep their own band
    kind: str = "defect"


@dataclass(frozen=True)
class Row:
    name: str
    max_defect: float
    tol: float
    passed: bool


def _rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def _relative(a, b) -> float:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / (1.0 + np.abs(b)), initial=0.0))


def _random_perm(rng, n):
    return tuple(int(v) for v in rng.permutation(n))


def _random_element(rng, n, shift=3):
    return GroupElement(_random_perm(rng, n),
                        tuple(int(s) for s in rng.choice([-1, 1], size=n)),
                        tuple(int(t) for t in rng.integers(-shift, shift + 1, size=n)))


# ---------------------------------------------------------------- kernel

def kernel_oracle_defect(pairs: int = 100, dims: Sequence[int] = (1, 2, 3, 4, 5)) -> float:
    rng = _rng(1)
    worst = 0.0
    for family in Family:
        for n in dims:
            lam = rng.uniform(-4, 4, size=(pairs, n))
            x = rng.uniform(-1, 1, size=(pairs, n))
            fast = evaluate(family, TWO_PI, lam, x)
            slow = np.array([evaluate_oracle(family, TWO_PI, l, p) for l, p in zip(lam, x)])
            worst = max(worst, _relative(fast, slow))
    return worst


def kernel_permutation_defect(trials: int = 20) -> float:
    rng = _rng(2)
    worst = 0.0
    for family in Family:
        for n in (2, 3, 4):
            for _ in range(trials):
                lam, x = rng.uniform(-3, 3, n), rng.uniform(-1, 1, n)
                base = evaluate(family, TWO_PI, lam, x)
                for w in itertools.permutations(range(n)):
                    g = GroupElement(w, (1,) * n, (0,) * n)
                    sign = g.parity if family.alternating else 1
                    worst = max(worst, abs(evaluate(family, TWO_PI, lam, act(g, x)) - sign * base))
    return worst


def kernel_sign_flip_defect(trials: int = 50) -> float:
    rng = _rng(3)
    worst = 0.0
    for family in Family:
        for _ in range(trials):
            n = int(rng.integers(1, 5))
            lam, x = rng.uniform(-3, 3, n), rng.uniform(-1, 1, n)
            i = int(rng.integers(n))
            flipped = x.copy()
            flipped[i] = -flipped[i]
            sign = -1 if family.is_sine else 1
            worst = max(worst, abs(evaluate(family, TWO_PI, lam, flipped)
                                   - sign * evaluate(family, TWO_PI, lam, x)))
    return worst


def kernel_duality_defect(trials: int = 100) -> float:
    rng = _rng(4)
    worst = 0.0
    for family in Family:
        for conv in AngularConvention:
            n = 3
            lam, x = rng.uniform(-3, 3, (trials, n)), rng.uniform(-1, 1, (trials, n))
            worst = max(worst, float(np.max(np.abs(evaluate(family, conv, lam, x)
                                                   - evaluate(family, conv, x, lam)))))
    return worst


def kernel_scaling_defect(trials: int = 100) -> float:
    rng = _rng(5)
    worst = 0.0
    for family in Family:
        n = 3
        lam, x = rng.uniform(-3, 3, (trials, n)), rng.uniform(-1, 1, (trials, n))
        c = rng.uniform(-2, 2, (trials, 1))
        worst = max(worst, float(np.max(np.abs(evaluate(family, TWO_PI, c * lam, x)
                                               - evaluate(family, TWO_PI, lam, c * x)))))
    return worst


def kernel_convention_defect(trials: int = 100) -> float:
    rng = _rng(6)
    worst = 0.0
    for family in Family:
        n = 3
        lam, x = rng.uniform(-3, 3, (trials, n)), rng.uniform(-1, 1, (trials, n))
        worst = max(worst, float(np.max(np.abs(evaluate(family, TWO_PI, lam, x)
                                               - evaluate(family, PI, lam, 2 * x)))))
    return worst


def kernel_boundary_defect(trials: int = 50) -> float:
    rng = _rng(7)
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        lam = rng.uniform(-3, 3, n)
        x = np.sort(rng.uniform(0, 0.5, n))[::-1].copy()
        i = int(rng.integers(n - 1))
        tied = x.copy()
        tied[i + 1] = tied[i]
        zero = x.copy()
        zero[-1] = 0.0
        worst = max(worst,
                    abs(evaluate(Family.SIN_MINUS, TWO_PI, lam, tied)),
                    abs(evaluate(Family.COS_MINUS, TWO_PI, lam, tied)),
                    abs(evaluate(Family.SIN_MINUS, TWO_PI, lam, zero)),
                    abs(evaluate(Family.SIN_PLUS, TWO_PI, lam, zero)))
    return worst


# ---------------------------------------------------------------- symmetry

def group_axiom_defect(trials: int = 100) -> float:
    """Count of failed axiom instances (associativity, identity, inverse, parity, normality)."""
    rng = _rng(10)
    failures = 0
    for _ in range(trials):
        n = int(rng.integers(1, 5))
        g, h, k = (_random_element(rng, n) for _ in range(3))
        e = GroupElement.identity(n)
        failures += (g @ h) @ k != g @ (h @ k)
        failures += g @ e != g or e @ g != g
        failures += g @ g.inverse() != e or g.inverse() @ g != e
        failures += (g @ h).parity != g.parity * h.parity
        t = GroupElement.translation(tuple(int(v) for v in rng.integers(-3, 4, n)))
        failures += not (g @ t @ g.inverse()).is_translation()
        x = rng.uniform(-2, 2, n)
        failures += not np.allclose(act(g @ h, x), act(g, act(h, x)), rtol=0, atol=1e-12)
    return float(failures)


def fold_defect(trials: int = 200) -> float:
    rng = _rng(11)
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 5))
        x = rng.uniform(-3, 3, n)
        point, sign = fold(x)
        again, sign2 = fold(point)
        inside = point[0] <= 0.5 and point[-1] >= 0 and np.all(np.diff(point) <= 0)
        m = np.sort(rng.choice(np.arange(1, 9), size=n, replace=False))[::-1]
        value = evaluate(Family.SIN_MINUS, TWO_PI, m, x)
        worst = max(worst, float(np.max(np.abs(again - point))), float(sign2 != 1),
                    float(not inside),
                    abs(value - sign * evaluate(Family.SIN_MINUS, TWO_PI, m, point)))
    return worst


def equivariance_defect(trials: int = 200) -> float:
    rng = _rng(12)
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(1, 5))
        g = _random_element(rng, n)
        m = rng.integers(-6, 7, n)
        x = rng.uniform(-1, 1, n)
        y = act(g, x)
        sign = g.parity * (-1) ** g.flips
        worst = max(worst,
                    abs(evaluate(Family.SIN_MINUS, TWO_PI, m, y)
                        - sign * evaluate(Family.SIN_MINUS, TWO_PI, m, x)),
                    abs(evaluate(Family.COS_PLUS, TWO_PI, m, y)
                        - evaluate(Family.COS_PLUS, TWO_PI, m, x)))
    return worst


def stabilizer_defect(trials: int = 100) -> float:
    rng = _rng(13)
    failures = 0
    for _ in range(trials):
        n = int(rng.integers(1, 5))
        m = tuple(int(v) for v in rng.integers(0, 3, n))
        orbit = set(itertools.permutations(m))
        failures += stabilizer_order(m) * len(orbit) != math.factorial(n)
        fixing = sum(1 for w in itertools.permutations(range(n))
                     if tuple(m[i] for i in w) == m)
        failures += stabilizer_order(m) != fixing
    return float(failures)


def cardinality_defect(max_N: int = 10, max_n: int = 4) -> float:
    failures = 0
    for N in range(1, max_N + 1):
        for n in range(1, max_n + 1):
            labels = enumerate_labels(DominantLabelSet(LabelSetKind.SINE_GRID, N, n))
            grid = enumerate_grid(GridKind.SINE_INTERIOR, N, n)
            failures += len(labels) != len(grid)
            for kind in LabelSetKind:
                labels = enumerate_labels(DominantLabelSet(kind, N, n))
                failures += len(labels) != label_set_size(DominantLabelSet(kind, N, n))
                failures += labels != sorted(labels, reverse=True)
    return float(failures)


# ---------------------------------------------------------------- continuous

def quadrature_selftest_defect(points: int = 32, top: int = 8) -> float:
    # k = k' = 8 puts frequency 16 on [0, 1/2]; 16 nodes leave ~6e-3, 28 reach 1e-14
    t, w = cont.QuadratureRule(points).axis()
    worst = 0.0
    for k in range(1, top + 1):
        for k2 in range(1, top + 1):
            value = 4.0 * cont.box_integral(np.sin(2 * np.pi * k * t) * np.sin(2 * np.pi * k2 * t), w)
            worst = max(worst, abs(value - (k == k2)))
    return worst


def _gram_labels(family: Family, bound: int = 3) -> list[tuple[int, ...]]:
    # strictly for minus families, weakly for plus families; entries 1..bound
    values = range(bound, 0, -1)
    if family.alternating:
        return list(itertools.combinations(values, 2))
    return list(itertools.combinations_with_replacement(values, 2))


def continuous_gram_defect(family: Family, points: int = 32, labels=None) -> float:
    rule = cont.QuadratureRule(points)
    labels = _gram_labels(family) if labels is None else labels
    worst = 0.0
    for m in labels:
        for m2 in labels:
            expected = cont.orthogonality_constant(family, m) if m == m2 else 0.0
            worst = max(worst, abs(cont.inner_product_F(family, m, m2, rule) - expected))
    return worst


CROSS_PAIRS = (
    ((2, 1), (1, 1)), ((1, 0), (2, 1)), ((3, 1), (2, 2)), ((2, 1), (2, 1)), ((3, 2), (1, 0)),
    ((3, 0), (3, 1)), ((1, 1), (2, 0)), ((4, 2), (3, 3)), ((2, 2), (4, 1)), ((3, 3), (3, 2)),
)


def cross_orthogonality_defect(pairs=CROSS_PAIRS, points: int = 32) -> float:
    rule = cont.QuadratureRule(points)
    return max(abs(cont.cross_orthogonality(mix, m, m2, rule))
               for mix in cont.Mix for m, m2 in pairs)


def _wall_points(rng, n: int, count: int) -> np.ndarray:
    x = np.sort(rng.uniform(0, 0.5, (count, n)), axis=1)[:, ::-1].copy()
    wall = rng.integers(0, n + 1, count)
    for row, which in zip(x, wall):
        if which == n:
            row[-1] = 0.0
        elif which == 0:
            row[0] = 0.5
        else:
            row[which] = row[which - 1]
    return x


def dirichlet_defect(count: int = 100) -> float:
    rng = _rng(20)
    worst = 0.0
    for n in (2, 3):
        x = _wall_points(rng, n, count)
        for m in [(2, 1), (3, 1), (5, 2)] if n == 2 else [(3, 2, 1), (4, 2, 1)]:
            values = evaluate(Family.SIN_MINUS, TWO_PI, np.asarray(m, float), x)
            worst = max(worst, float(np.max(np.abs(values))))
    return worst


def neumann_bound(m: Sequence[int]) -> float:
    """Third-derivative bound for the central normal difference of cos-plus."""
    n = len(m)
    return math.factorial(n) * (2 * math.pi * sum(abs(v) for v in m)) ** 3 / 6.0


def neumann_defect(count: int = 100, h: float = 1e-4) -> float:
    """Worst ``|D_h| / (C h^2)`` of the central normal difference on the walls."""
    rng = _rng(21)
    worst = 0.0
    for m in [(2, 1), (1, 1), (3, 0)]:
        lam = np.asarray(m, float)
        x = _wall_points(rng, 2, count)
        for p in x:
            normals = []
            if p[1] == 0.0:
                normals.append(np.array([0.0, 1.0]))
            if p[0] == 0.5:
                normals.append(np.array([1.0, 0.0]))
            if p[0] == p[1]:
                normals.append(np.array([1.0, -1.0]) / math.sqrt(2))
            for nu in normals:
                d = (evaluate(Family.COS_PLUS, TWO_PI, lam, p + h * nu)
                     - evaluate(Family.COS_PLUS, TWO_PI, lam, p - h * nu)) / (2 * h)
                worst = max(worst, abs(d) / (neumann_bound(m) * h * h))
    return worst


def eigen_ratio_defect(trials: int = 20, ks=(1, 2)) -> float:
    """Worst ``|ratio - 4|`` of the finite-difference defect under ``h -> h/2``."""
    rng = _rng(22)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        for _ in range(trials):
            family = list(Family)[int(rng.integers(4))]
            lam = rng.uniform(0.5, 3.0, 2)
            x = rng.uniform(0.05, 0.45, 2)
            for k in ks:
                h = cont.default_step(k)
                coarse = cont.sigma_k_eigen_defect(family, lam, k, x, h)
                fine = cont.sigma_k_eigen_defect(family, lam, k, x, h / 2)
                worst = max(worst, abs(coarse / fine - 4.0))
    return worst


def series_roundtrip_defect(points: int = 32) -> float:
    rng = _rng(23)
    rule = cont.QuadratureRule(points)
    worst = 0.0
    for family in Family:
        labels = cont.series_labels(family, 2, 3)
        chosen = [labels[i] for i in rng.choice(len(labels), size=3, replace=False)]
        weights = rng.uniform(-2, 2, 3)

        def sample(x, family=family, chosen=chosen, weights=weights):
            return sum(c * evaluate(family, TWO_PI, np.asarray(m, float), x)
                       for c, m in zip(weights, chosen))

        coeffs = cont.expand(family, sample, 2, 3, rule)
        x = np.sort(rng.uniform(0.01, 0.49, (25, 2)), axis=1)[:, ::-1]
        worst = max(worst, float(np.max(np.abs(cont.partial_sum(family, coeffs, x) - sample(x)))))
        energy = math.fsum(cont.orthogonality_constant(family, m) * c * c for m, c in zip(chosen, weights))
        worst = max(worst, cont.plancherel_defect(family, coeffs, sample, rule) / (1.0 + energy))
    return worst


# ---------------------------------------------------------------- discrete

def _discrete_sizes(N: Optional[int], n: Optional[int]):
    if N is not None or n is not None:
        sizes = [(N or 4, n or 2)]
    else:
        sizes = list(DISCRETE_SIZES)
    multi = [(N_, n_) for N_, n_ in sizes if n_ >= 1]
    one_d = [N_ for N_, _ in sizes] if (N is not None or n is not None) else list(ONE_D_SIZES)
    return multi, sorted(set(one_d))


def _all_transforms(N: Optional[int], n: Optional[int]) -> list[disc.TransformKind]:
    multi, one_d = _discrete_sizes(N, n)
    out = [disc.TransformKind(kind, N_, n_) for N_, n_ in multi for kind in disc.MULTIVARIATE_KINDS]
    out += [disc.TransformKind(kind, N_) for N_ in one_d for kind in disc.ONE_D_KINDS]
    return out


def discrete_gram_defect(transforms: Iterable[disc.TransformKind]) -> float:
    worst = 0.0
    for tk in transforms:
        if not tk.labels():
            continue
        gram = disc.gram_matrix(tk)
        worst = max(worst, float(np.max(np.abs(gram - np.diag(disc.expected_gram_diagonal(tk))))))
    return worst


def discrete_roundtrip_defect(transforms: Iterable[disc.TransformKind], vectors: int = 50) -> float:
    rng = _rng(30)
    worst = 0.0
    for tk in transforms:
        size = len(tk.grid())
        if not size:
            continue
        data = rng.standard_normal((vectors, size))
        coeffs = rng.standard_normal((vectors, size))
        for f, a in zip(data, coeffs):
            worst = max(worst,
                        float(np.max(np.abs(disc.inverse(tk, disc.forward(tk, f)) - f))),
                        float(np.max(np.abs(disc.forward(tk, disc.inverse(tk, a)) - a))))
    return worst


def discrete_plancherel_defect(transforms: Iterable[disc.TransformKind], vectors: int = 20) -> float:
    rng = _rng(31)
    worst = 0.0
    for tk in transforms:
        size = len(tk.grid())
        for _ in range(vectors if size else 0):
            f = rng.standard_normal(size)
            worst = max(worst, disc.plancherel_defect_discrete(tk, f) / disc.data_energy(tk, f))
    return worst


def discrete_square_defect(max_N: int = 10, max_n: int = 4) -> float:
    failures = 0
    for N in range(1, max_N + 1):
        for kind in disc.MULTIVARIATE_KINDS:
            for n in range(1, max_n + 1):
                tk = disc.TransformKind(kind, N, n)
                failures += len(tk.labels()) != len(tk.grid())
        for kind in disc.ONE_D_KINDS:
            tk = disc.TransformKind(kind, N)
            failures += len(tk.labels()) != len(tk.grid())
    return float(failures)


def discrete_oracle_defect(transforms: Iterable[disc.TransformKind]) -> float:
    rng = _rng(32)
    worst = 0.0
    for tk in transforms:
        if tk.n > 4 or not tk.grid():
            continue
        f = rng.standard_normal(len(tk.grid()))
        worst = max(worst, float(np.max(np.abs(disc.forward(tk, f) - disc.forward(tk, f, oracle=True)))))
    return worst


def discrete_separable_defect(sizes) -> float:
    rng = _rng(33)
    worst = 0.0
    for N, n in sizes:
        tk = disc.TransformKind(disc.Kind.AMDST, N, n)
        if not tk.grid():
            continue
        f = rng.standard_normal(len(tk.grid()))
        worst = max(worst, float(np.max(np.abs(disc.forward(tk, f)
                                               - disc.amdst_forward_separable(N, n, f)))))
    return worst


ONE_D_PAIRS = (
    (disc.Kind.AMDST, disc.Kind.DST1D),
    (disc.Kind.AMDCT1, disc.Kind.DCT1), (disc.Kind.AMDCT2, disc.Kind.DCT2),
    (disc.Kind.AMDCT3, disc.Kind.DCT3), (disc.Kind.AMDCT4, disc.Kind.DCT4),
    (disc.Kind.SMDCT, disc.Kind.DCT1D),
    (disc.Kind.SMDCT1, disc.Kind.DCT1), (disc.Kind.SMDCT2, disc.Kind.DCT2),
    (disc.Kind.SMDCT3, disc.Kind.DCT3), (disc.Kind.SMDCT4, disc.Kind.DCT4),
)


def discrete_one_d_defect(Ns=(3, 4, 6)) -> float:
    worst = 0.0
    for N in Ns:
        for multi, flat in ONE_D_PAIRS:
            a = disc.kernel_matrix(disc.TransformKind(multi, N, 1))
            b = disc.kernel_matrix(disc.TransformKind(flat, N))
            if a.shape != b.shape:
                return math.inf
            worst = max(worst, float(np.max(np.abs(a - b), initial=0.0)))
    return worst


def discrete_kernel_symmetry_defect(transforms: Iterable[disc.TransformKind]) -> float:
    rng = _rng(34)
    worst = 0.0
    for tk in transforms:
        if tk.n < 2 or not tk.labels():
            continue
        anti = tk.family.alternating
        for _ in range(5):
            r = tk.labels()[int(rng.integers(len(tk.labels())))]
            k = tuple(int(v) for v in rng.integers(0, tk.N + 1, tk.n))
            w = _random_perm(rng, tk.n)
            sign = GroupElement(w, (1,) * tk.n, (0,) * tk.n).parity if anti else 1
            permuted = tuple(k[i] for i in w)
            worst = max(worst, abs(disc.kernel_value(tk, r, permuted) - sign * disc.kernel_value(tk, r, k)))
            if anti:
                tied = (k[0],) + k[:-1]
                worst = max(worst, abs(disc.kernel_value(tk, r, tied)))
    return worst


# ---------------------------------------------------------------- assembly

def build_checks(suite: str, N: Optional[int] = None, n: Optional[int] = None,
                 quad_points: int = 32) -> list[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    checks: list[Check] = []
    if suite in ("kernel", "all"):
        checks += [
            Check("kernel.oracle-equivalence", kernel_oracle_defect, 1e-10),
            Check("kernel.permutation-law", kernel_permutation_defect, 1e-10),
            Check("kernel.sign-flip-law", kernel_sign_flip_defect, 1e-12),
            Check("kernel.duality", kernel_duality_defect, 1e-12),
            Check("kernel.scaling", kernel_scaling_defect, 1e-12),
            Check("kernel.convention-bridge", kernel_convention_defect, 1e-12),
            Check("kernel.boundary-vanishing", kernel_boundary_defect, 1e-12),
        ]
    if suite in ("symmetry", "all"):
        checks += [
            Check("symmetry.group-axioms", group_axiom_defect, 0.0),
            Check("symmetry.fold", fold_defect, 1e-12),
            Check("symmetry.equivariance", equivariance_defect, 1e-12),
            Check("symmetry.stabilizer-order", stabilizer_defect, 0.0),
            Check("symmetry.cardinalities", cardinality_defect, 0.0),
        ]
    if suite in ("continuous", "all"):
        checks += [Check("continuous.quadrature-selftest",
                         lambda: quadrature_selftest_defect(quad_points), 1e-12)]
        checks += [Check(f"continuous.gram.{f.value}",
                         lambda f=f: continuous_gram_defect(f, quad_points), 1e-7)
                   for f in Family]
        checks += [
            Check("continuous.cross-orthogonality",
                  lambda: cross_orthogonality_defect(points=quad_points), 1e-7),
            Check("continuous.dirichlet", dirichlet_defect, 1e-12),
            Check("continuous.neumann", neumann_defect, 1.0, kind="ratio"),
            Check("continuous.eigen-ratio", eigen_ratio_defect, 0.4, kind="ratio"),
            Check("continuous.series-roundtrip",
                  lambda: series_roundtrip_defect(quad_points), 1e-6),
        ]
    if suite in ("discrete", "all"):
        transforms = _all_transforms(N, n)
        multi, _ = _discrete_sizes(N, n)
        checks += [
            Check("discrete.gram", lambda: discrete_gram_defect(transforms), 1e-10),
            Check("discrete.roundtrip", lambda: discrete_roundtrip_defect(transforms), 1e-10),
            Check("discrete.plancherel", lambda: discrete_plancherel_defect(transforms), 1e-10),
            Check("discrete.oracle-kernels", lambda: discrete_oracle_defect(transforms), 1e-10),
            Check("discrete.kernel-symmetry", lambda: discrete_kernel_symmetry_defect(transforms), 1e-12),
            Check("discrete.separable-amdst", lambda: discrete_separable_defect(multi), 1e-10),
            Check("discrete.one-d-consistency", discrete_one_d_defect, 1e-12),
            Check("discrete.square-matrices", discrete_square_defect, 0.0),
        ]
    return checks


def _threads() -> int:
    raw = os.environ.get("SYMTRIG_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return min(4, os.cpu_count() or 1)


def run_suite(suite: str = "all", N: Optional[int] = None, n: Optional[int] = None,
              quad_points: int = 32, tol: Optional[float] = None) -> list[Row]:
    """Run the checks of ``suite`` and return one row per check, in declaration order.

    ``tol`` replaces the tolerance of every defect-type check; ratio bands
    (finite-difference convergence, Neumann bound) are unaffected.
    """
    checks = build_checks(suite, N, n, quad_points)

    def run(check: Check) -> Row:
        limit = tol if (tol is not None and check.kind == "defect") else check.tol
        value = float(check.run())
        return Row(check.name, value, limit, bool(value <= limit))

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(run, checks))
