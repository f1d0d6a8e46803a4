import math
import random
from fractions import Fraction

import numpy as np
import pytest

from kfermion.algebra import structure_function_value
from kfermion.analytic import (
    BargmannPoly,
    GrassmannElement,
    anticommutator_identities_check,
    bargmann_coefficients,
    bargmann_monomial,
    bargmann_transform,
    coherent_diagnostics,
    coherent_state,
    derivative,
    e_kappa,
    e_kappa_terms,
    euler_operator,
    faithfulness_check,
    fibonacci_difference,
    generalized_derivative,
    grassmann_coherent,
    intertwining_check,
    parity,
    residual,
)
from kfermion.analytic.coherent import closed_form_coefficients
from kfermion.analytic.grassmann import fermion_lower, grassmann_coherent_state
from kfermion.exceptions import DomainError, GrassmannParityError


def _random_samples(count, seed=0):
    rng = random.Random(seed)
    for _ in range(count):
        yield Fraction(rng.randint(1, 30), 10), complex(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4))


@pytest.mark.parametrize("kappa0, z", list(_random_samples(20)))
def test_coherent_state_properties(kappa0, z):
    state = coherent_state(kappa0, z)
    assert residual(state) <= 1e-10
    assert abs(state.norm_sq - 1) <= 1e-12
    assert state.truncation >= 2
    assert coherent_diagnostics(kappa0, z).ok()


def test_coherent_state_at_origin():
    state = coherent_state(Fraction(1, 2), 0)
    assert state.truncation == 2
    np.testing.assert_array_equal(state.coefficients, [1, 0])


def test_coherent_state_harmonic_case():
    # κ = 1 is the ordinary oscillator: F₊(n) = n
    z = 0.8 + 0.0j
    state = coherent_state(1, z)
    expected = np.array([math.exp(-abs(z) ** 2 / 2) * z.real ** n / math.sqrt(math.factorial(n)) for n in range(state.truncation)])
    np.testing.assert_allclose(state.coefficients.real, expected, rtol=1e-10, atol=1e-14)


def test_coherent_state_domain():
    with pytest.raises(DomainError):
        coherent_state(0, 0.5)
    with pytest.raises(DomainError):
        coherent_state(1, 0.5, tol=0)


def test_coherent_state_is_read_only():
    state = coherent_state(1, 0.3j)
    with pytest.raises(ValueError):
        state.coefficients[0] = 0


def test_closed_form_is_proportional():
    state = coherent_state(Fraction(3, 2), 0.6 - 0.2j)
    closed = closed_form_coefficients(Fraction(3, 2), 0.6 - 0.2j, state.truncation)
    np.testing.assert_allclose(closed / np.linalg.norm(closed), state.coefficients, rtol=1e-12, atol=1e-15)


def test_e_kappa_terms_sum():
    kappa0, x = Fraction(1, 3), 0.7
    terms = e_kappa_terms(kappa0, x, 60)
    assert terms.sum() == pytest.approx(e_kappa(kappa0, x), rel=1e-13)
    assert e_kappa(kappa0, 0) == pytest.approx(1 / math.gamma(1.5))
    with pytest.raises(DomainError):
        e_kappa(kappa0, -1)


def test_pair_weights_sum_to_norm():
    state = coherent_state(Fraction(2), 1.1)
    weights = state.pair_weights()
    assert len(weights) == state.truncation // 2
    assert weights.sum() <= state.norm_sq + 1e-15


def test_polynomial_basics():
    p = BargmannPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert p == BargmannPoly([1, 2])
    assert BargmannPoly().degree is None
    assert p.times_z() == BargmannPoly([0, 1, 2])
    assert p(3) == 7
    assert derivative(BargmannPoly([5, 1, 3])) == BargmannPoly([1, 6])
    assert euler_operator(BargmannPoly([5, 1, 3])) == BargmannPoly([0, 1, 6])
    assert parity(BargmannPoly([1, 1, 1])) == BargmannPoly([1, -1, 1])


def test_fibonacci_difference():
    p = BargmannPoly([4, 3, 2, 1])
    z = 0.7
    assert fibonacci_difference(p)(z) == pytest.approx((p(z) - p(-z)) / (2 * z))
    assert fibonacci_difference(fibonacci_difference(p)).is_zero()


def test_generalized_derivative_on_monomials():
    kappa0 = Fraction(2, 3)
    for m in range(1, 8):
        got = generalized_derivative(kappa0, BargmannPoly.monomial(m))
        assert got == BargmannPoly.monomial(m - 1, structure_function_value(kappa0, m))
    assert generalized_derivative(0, BargmannPoly([1, 1, 1])) == BargmannPoly([1])
    with pytest.raises(DomainError):
        generalized_derivative(-1, BargmannPoly([1]))


@pytest.mark.parametrize("kappa0", [Fraction(1, 3), Fraction(1, 2), Fraction(2)])
def test_bargmann_faithfulness(kappa0):
    assert faithfulness_check(kappa0, 60).passed


@pytest.mark.parametrize("kappa0", [Fraction(0), Fraction(1, 3), Fraction(5, 2)])
def test_bargmann_anticommutators(kappa0):
    report = anticommutator_identities_check(kappa0, 30)
    assert report.passed, report.details["failures"]


def test_bargmann_intertwining():
    assert intertwining_check(Fraction(3, 4), 20).passed


def test_bargmann_transform_inverse():
    kappa0 = Fraction(1, 3)
    psi = np.array([0.5, -1j, 0.25, 2.0])
    np.testing.assert_allclose(bargmann_coefficients(bargmann_transform(psi, kappa0), kappa0), psi, rtol=1e-12)


def test_bargmann_monomial_norm_ratio():
    kappa0 = Fraction(1, 4)
    # ν_n / ν_{n-1} = F₊(n)
    for n in range(1, 10):
        ratio = (bargmann_monomial(kappa0, n - 1).coefficient(n - 1) / bargmann_monomial(kappa0, n).coefficient(n)) ** 2
        assert ratio == pytest.approx(float(structure_function_value(kappa0, n)), rel=1e-12)


def test_grassmann_algebra():
    theta = GrassmannElement.generator()
    theta_bar = theta.conjugate()
    assert (theta * theta).is_zero()
    assert (theta_bar * theta + theta * theta_bar).is_zero()
    assert (theta * theta_bar).theta_theta_bar == 1
    assert str(GrassmannElement()) == "0"


def test_grassmann_coherent_state():
    theta = GrassmannElement.generator(2)
    state = grassmann_coherent_state(theta)
    lowered = fermion_lower(state)
    assert (lowered[0] - theta * state[0]).is_zero()
    assert (lowered[1] - theta * state[1]).is_zero()
    assert grassmann_coherent(theta).passed


def test_grassmann_even_label_rejected():
    with pytest.raises(GrassmannParityError):
        grassmann_coherent(GrassmannElement(1, 1))
    with pytest.raises(DomainError):
        grassmann_coherent_state(GrassmannElement(theta_theta_bar=1))
