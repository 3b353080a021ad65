import itertools
import math
import warnings

import numpy as np
import pytest

from symtrig import continuous as cont
from symtrig.continuous import Mix, QuadratureRule
from symtrig.errors import AccuracyWarning, InvalidArgumentError
from symtrig.kernel import AngularConvention, Family, evaluate

TWO_PI = AngularConvention.TWO_PI
RULE = QuadratureRule(32)


def family_sample(family, terms):
    """Callable sample ``sum c * f_m`` for ``terms = [(c, m), ...]``."""

    def sample(x):
        return sum(c * evaluate(family, TWO_PI, np.asarray(m, float), x) for c, m in terms)

    return sample


# ---------------------------------------------------------------- quadrature

@pytest.mark.parametrize("points", [28, 32, 48])
def test_one_dimensional_sine_orthogonality(points):
    t, w = QuadratureRule(points).axis()
    for k, k2 in itertools.product(range(1, 9), repeat=2):
        value = 4.0 * cont.box_integral(np.sin(2 * np.pi * k * t) * np.sin(2 * np.pi * k2 * t), w)
        assert value == pytest.approx(float(k == k2), abs=1e-12)


def test_sixteen_points_resolve_low_frequencies_only():
    t, w = QuadratureRule(16).axis()
    low = max(abs(4.0 * cont.box_integral(np.sin(2 * np.pi * k * t) * np.sin(2 * np.pi * k2 * t), w) - (k == k2))
              for k, k2 in itertools.product(range(1, 4), repeat=2))
    high = abs(4.0 * cont.box_integral(np.sin(16 * np.pi * t) ** 2, w) - 1.0)
    assert low < 1e-12
    assert high > 1e-4


def test_tensor_rule_weights_sum_to_box_volume():
    for n in (1, 2, 3):
        _, w = RULE.nodes(n)
        assert math.fsum(w) == pytest.approx(0.5 ** n, rel=1e-14)


def test_box_integral_independent_of_order(rng):
    x, w = QuadratureRule(24).nodes(3)
    f = evaluate(Family.COS_PLUS, TWO_PI, np.array([3.0, 2.0, 1.0]), x) ** 2
    perm = rng.permutation(len(w))
    assert abs(cont.box_integral(f, w) - cont.box_integral(f[perm], w[perm])) <= 1e-13


def test_invalid_rule():
    with pytest.raises(InvalidArgumentError):
        QuadratureRule(0)


def test_under_resolved_rule_warns():
    with pytest.warns(AccuracyWarning):
        cont.inner_product_F(Family.SIN_MINUS, (9, 8), (9, 7), QuadratureRule(8))


# ---------------------------------------------------------------- orthogonality

def test_inner_product_examples():
    assert cont.inner_product_F(Family.SIN_MINUS, (2, 1), (2, 1), RULE) == pytest.approx(1.0, abs=1e-8)
    assert cont.inner_product_F(Family.SIN_MINUS, (2, 1), (3, 1), RULE) == pytest.approx(0.0, abs=1e-8)
    assert cont.inner_product_F(Family.COS_PLUS, (1, 1), (1, 1), RULE) == pytest.approx(2.0, abs=1e-8)


@pytest.mark.parametrize("family", list(Family), ids=lambda f: f.value)
def test_gram_matrix_n3(family):
    labels = [m for m in itertools.combinations_with_replacement(range(3, 0, -1), 3)
              if not family.alternating or len(set(m)) == 3]
    for m in labels:
        for m2 in labels:
            expected = cont.orthogonality_constant(family, m) if m == m2 else 0.0
            assert cont.inner_product_F(family, m, m2, QuadratureRule(16)) == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("family, m, constant", [
    (Family.COS_MINUS, (1, 0), 2.0),
    (Family.COS_MINUS, (3, 0), 2.0),
    (Family.COS_PLUS, (2, 0), 2.0),
    (Family.COS_PLUS, (0, 0), 8.0),
    (Family.COS_PLUS, (1, 1, 0), 4.0),
    (Family.SIN_PLUS, (1, 0), 0.0),
    (Family.SIN_MINUS, (2, 2), 0.0),
    (Family.COS_MINUS, (1, 1), 0.0),
])
def test_labels_with_zero_or_repeated_entries(family, m, constant):
    # a zero entry doubles the cosine norm on that axis; the plain |G_m| does not hold there
    assert cont.orthogonality_constant(family, m) == constant
    assert cont.inner_product_F(family, m, m, RULE) == pytest.approx(constant, abs=1e-8)


def test_cross_orthogonality_examples():
    assert abs(cont.cross_orthogonality(Mix.SIN_MINUS_COS_PLUS, (2, 1), (1, 1), RULE)) <= 1e-8
    assert abs(cont.cross_orthogonality(Mix.SIN_PLUS_COS_MINUS, (1, 0), (2, 1), RULE)) <= 1e-8


@pytest.mark.parametrize("mix", list(Mix))
@pytest.mark.parametrize("m, m2", [((1,), (1,)), ((2,), (3,)), ((3,), (0,))])
def test_cross_orthogonality_one_dimension(mix, m, m2):
    assert abs(cont.cross_orthogonality(mix, m, m2, RULE)) <= 1e-12


def test_cross_orthogonality_is_not_trivial_on_the_plain_domain():
    # over F alone the mixed product need not vanish; the extension does the work
    x, w = RULE.nodes(2)
    inside = (x[:, 0] >= x[:, 1])
    f = evaluate(Family.SIN_MINUS, TWO_PI, np.array([2.0, 1.0]), x) * evaluate(Family.COS_PLUS, TWO_PI, np.array([1.0, 1.0]), x)
    assert abs(cont.box_integral(np.where(inside, f, 0.0), w)) > 1e-3
    assert abs(cont.cross_orthogonality(Mix.SIN_MINUS_COS_PLUS, (2, 1), (1, 1), RULE)) <= 1e-12


def test_dimension_mismatch():
    with pytest.raises(InvalidArgumentError):
        cont.inner_product_F(Family.SIN_PLUS, (2, 1), (2, 1, 0))


# ---------------------------------------------------------------- series

def test_series_coefficient_examples():
    s = family_sample(Family.SIN_MINUS, [(1.0, (2, 1))])
    assert cont.series_coefficient(Family.SIN_MINUS, s, (2, 1), RULE) == pytest.approx(1.0, abs=1e-8)
    assert cont.series_coefficient(Family.SIN_MINUS, s, (3, 2), RULE) == pytest.approx(0.0, abs=1e-8)
    c = family_sample(Family.COS_PLUS, [(1.0, (1, 1))])
    assert cont.series_coefficient(Family.COS_PLUS, c, (1, 1), RULE) == pytest.approx(1.0, abs=1e-8)


def test_series_coefficient_rejects_bad_labels():
    s = family_sample(Family.SIN_MINUS, [(1.0, (2, 1))])
    with pytest.raises(InvalidArgumentError):
        cont.series_coefficient(Family.SIN_MINUS, s, (1, 2), RULE)
    with pytest.raises(InvalidArgumentError):
        cont.series_coefficient(Family.SIN_PLUS, s, (1, 0), RULE)


def test_series_labels():
    assert cont.series_labels(Family.SIN_MINUS, 2, 3) == [(3, 2), (3, 1), (2, 1)]
    assert (1, 0) in cont.series_labels(Family.COS_MINUS, 2, 3)
    assert (0, 0) in cont.series_labels(Family.COS_PLUS, 2, 1)
    assert all(m[-1] > 0 for m in cont.series_labels(Family.SIN_PLUS, 2, 3))


def test_partial_sum_examples(rng):
    x = rng.uniform(0, 0.5, (10, 2))
    coeffs = cont.SeriesCoefficients(Family.SIN_MINUS, {(2, 1): 1.0})
    np.testing.assert_array_equal(cont.partial_sum(Family.SIN_MINUS, coeffs, x),
                                  evaluate(Family.SIN_MINUS, TWO_PI, np.array([2.0, 1.0]), x))
    assert cont.partial_sum(Family.SIN_MINUS, {}, np.array([0.3, 0.1])) == 0.0


def test_coefficients_must_be_dominant():
    with pytest.raises(InvalidArgumentError):
        cont.SeriesCoefficients(Family.COS_MINUS, {(1, 1): 1.0})
    cont.SeriesCoefficients(Family.COS_PLUS, {(1, 1): 1.0})


@pytest.mark.parametrize("family", list(Family), ids=lambda f: f.value)
def test_expansion_round_trip(family, rng):
    labels = cont.series_labels(family, 2, 4)
    chosen = [labels[i] for i in rng.choice(len(labels), 3, replace=False)]
    terms = list(zip(rng.uniform(-2, 2, 3), chosen))
    sample = family_sample(family, terms)
    coeffs = cont.expand(family, sample, 2, 4, RULE)
    for c, m in terms:
        assert coeffs.coefficients[m] == pytest.approx(c, abs=1e-8)
    x = np.sort(rng.uniform(0.01, 0.49, (25, 2)), axis=1)[:, ::-1]
    np.testing.assert_allclose(cont.partial_sum(family, coeffs, x), sample(x), atol=1e-6)
    assert cont.plancherel_defect(family, coeffs, sample, RULE) <= 1e-8


def test_plancherel_examples():
    one = family_sample(Family.SIN_MINUS, [(1.0, (2, 1))])
    assert cont.plancherel_defect(Family.SIN_MINUS, {(2, 1): 1.0}, one, RULE) <= 1e-8
    mix = family_sample(Family.SIN_MINUS, [(3.0, (2, 1)), (-1.0, (3, 2))])
    coeffs = cont.expand(Family.SIN_MINUS, mix, 2, 3, RULE)
    energy = math.fsum(c * c for c in coeffs.coefficients.values())
    assert energy == pytest.approx(10.0, abs=1e-8)
    assert cont.plancherel_defect(Family.SIN_MINUS, coeffs, mix, RULE) <= 1e-8


def test_plancherel_of_zero_sample_is_exactly_zero():
    zero = lambda x: np.zeros(len(x))
    coeffs = cont.expand(Family.COS_PLUS, zero, 2, 2, RULE)
    assert cont.plancherel_defect(Family.COS_PLUS, coeffs, zero, RULE) == 0.0
    assert cont.plancherel_defect(Family.COS_PLUS, {}, zero, RULE, n=2) == 0.0
    with pytest.raises(InvalidArgumentError):
        cont.plancherel_defect(Family.COS_PLUS, {}, zero, RULE)


def test_plus_family_plancherel_uses_stabilizer_weight():
    sample = family_sample(Family.COS_PLUS, [(1.5, (2, 2)), (0.5, (2, 1))])
    x, w = RULE.nodes(2)
    integral = 16 / 2 * cont.box_integral(sample(x) ** 2, w)
    # |G_(2,2)| = 2 weighs the first coefficient; the unweighted sum would be 2.5
    assert integral == pytest.approx(2 * 1.5 ** 2 + 0.5 ** 2, abs=1e-8)
    assert cont.plancherel_defect(Family.COS_PLUS, {(2, 2): 1.5, (2, 1): 0.5}, sample, RULE) <= 1e-8


# ---------------------------------------------------------------- eigen-equations

def test_elementary_symmetric():
    assert cont.elementary_symmetric([4.0, 1.0], 2) == 4.0
    assert cont.elementary_symmetric([1.0, 2.0, 3.0], 1) == 6.0
    assert cont.elementary_symmetric([1.0, 2.0, 3.0], 2) == 11.0
    assert cont.elementary_symmetric([1.0, 2.0, 3.0], 3) == 6.0
    assert cont.elementary_symmetric([1.0, 2.0], 0) == 1.0


@pytest.mark.parametrize("family, lam", [
    (Family.SIN_MINUS, (2.0, 1.0)), (Family.COS_PLUS, (1.0, 1.0)),
    (Family.SIN_PLUS, (1.7, 0.4)), (Family.COS_MINUS, (2.5, 0.5)),
    (Family.SIN_MINUS, (1.0,)),
])
def test_laplace_second_order(family, lam):
    x = np.array([0.31, 0.12][:len(lam)])
    h = cont.default_step(1)
    coarse = cont.laplace_eigen_defect(family, lam, x, h)
    fine = cont.laplace_eigen_defect(family, lam, x, h / 2)
    assert coarse / fine == pytest.approx(4.0, abs=0.1)
    # truncation ~ h^2 (2 pi |lam|)^4 / 12 against a term of size 4 pi^2 |lam|^2
    assert coarse < 1e-4 * 4 * math.pi ** 2 * sum(v * v for v in lam)


def test_sigma_1_is_the_laplacian():
    x = np.array([0.27, 0.08, 0.2])
    lam = (3.0, 2.0, 1.0)
    assert cont.sigma_k_eigen_defect(Family.COS_MINUS, lam, 1, x, 1e-3) == cont.laplace_eigen_defect(
        Family.COS_MINUS, lam, x, 1e-3)


def test_sigma_2_eigenvalue():
    # sigma_2(4, 1) = 4, eigenvalue 16 pi^4 * 4 = 64 pi^4
    lam = np.array([2.0, 1.0])
    x = np.array([0.3, 0.1])
    f = evaluate(Family.SIN_MINUS, TWO_PI, lam, x)
    func = lambda p: evaluate(Family.SIN_MINUS, TWO_PI, lam[None, :], p)
    applied = cont.sigma_k_apply(func, x, 2, 1e-3)
    assert applied == pytest.approx(64 * math.pi ** 4 * f, rel=1e-4)


def test_sigma_n_vanishes_for_zero_entry():
    lam = (2.0, 0.0)
    x = np.array([0.3, 0.1])
    func = lambda p: evaluate(Family.COS_PLUS, TWO_PI, np.array(lam)[None, :], p)
    assert abs(cont.sigma_k_apply(func, x, 2, 1e-2)) < 1e-9
    assert cont.sigma_k_eigen_defect(Family.COS_PLUS, lam, 2, x) < 1e-9


@pytest.mark.filterwarnings("ignore::symtrig.errors.AccuracyWarning")
@pytest.mark.parametrize("k", [1, 2, 3])
def test_sigma_k_second_order_n3(k, rng):
    lam = rng.uniform(0.5, 2.5, 3)
    x = rng.uniform(0.05, 0.45, 3)
    h = cont.default_step(k)
    ratio = (cont.sigma_k_eigen_defect(Family.SIN_PLUS, lam, k, x, h)
             / cont.sigma_k_eigen_defect(Family.SIN_PLUS, lam, k, x, h / 2))
    assert ratio == pytest.approx(4.0, abs=0.4)


def test_sigma_operators_commute():
    def f(p):
        return np.exp(np.sin(3 * p[:, 0]) + p[:, 1] ** 2) * np.cos(p[:, 0] - 2 * p[:, 1])

    h = 2e-2
    x = np.array([0.3, 0.15])
    sigma1 = lambda func: (lambda p: np.array([cont.sigma_k_apply(func, q, 1, h) for q in p]))
    sigma2 = lambda func: (lambda p: np.array([cont.sigma_k_apply(func, q, 2, h) for q in p]))
    a = cont.sigma_k_apply(sigma2(f), x, 1, h)
    b = cont.sigma_k_apply(sigma1(f), x, 2, h)
    assert a == pytest.approx(b, rel=1e-6)


def test_small_step_warns():
    with pytest.warns(AccuracyWarning):
        cont.sigma_k_eigen_defect(Family.SIN_MINUS, (2.0, 1.0), 2, np.array([0.3, 0.1]), 1e-4)
    with warnings.catch_warnings():
        warnings.simplefilter("error", AccuracyWarning)
        cont.sigma_k_eigen_defect(Family.SIN_MINUS, (2.0, 1.0), 2, np.array([0.3, 0.1]))


def test_sigma_k_range():
    with pytest.raises(InvalidArgumentError):
        cont.sigma_k_eigen_defect(Family.SIN_MINUS, (2.0, 1.0), 3, np.array([0.3, 0.1]))
    with pytest.raises(InvalidArgumentError):
        cont.sigma_k_eigen_defect(Family.SIN_MINUS, (2.0, 1.0), 1, np.array([0.3, 0.1]), h=-1.0)


# ---------------------------------------------------------------- boundary behaviour

def test_dirichlet_on_walls(rng):
    m = np.array([3.0, 1.0])
    t = rng.uniform(0, 0.5, 100)
    walls = [np.stack([t, t], 1), np.stack([t, np.zeros_like(t)], 1), np.stack([np.full_like(t, 0.5), t], 1)]
    for pts in walls:
        assert np.max(np.abs(evaluate(Family.SIN_MINUS, TWO_PI, m, pts))) <= 1e-12


@pytest.mark.parametrize("m", [(2, 1), (1, 1), (3, 0), (2, 2)])
def test_neumann_on_walls(m, rng):
    lam = np.asarray(m, float)
    h = 1e-4
    bound = math.factorial(2) * (2 * math.pi * sum(m)) ** 3 / 6 * h * h
    for t in rng.uniform(0, 0.5, 20):
        for p, nu in [((t, 0.0), (0.0, 1.0)), ((0.5, t), (1.0, 0.0)), ((t, t), (1 / math.sqrt(2), -1 / math.sqrt(2)))]:
            p, nu = np.array(p), np.array(nu)
            d = (evaluate(Family.COS_PLUS, TWO_PI, lam, p + h * nu)
                 - evaluate(Family.COS_PLUS, TWO_PI, lam, p - h * nu)) / (2 * h)
            assert abs(d) <= bound
