import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from kfermion.algebra import LOWER, RAISE, word_normalize
from kfermion.exceptions import DomainError
from kfermion.fock import (
    ActionCoefficient,
    action_matrix,
    adjointness_check,
    algebraic_spectrum,
    anticommutator_matrix_check,
    bosonized_relations_check,
    build_operator,
    exact_action,
    exact_matrix_agreement,
    gap_analysis,
    isospectral_check,
    ladder_amplitudes,
    word_action,
)


def test_ladder_matrix_entries():
    k = Fraction(1, 3)
    lower = build_operator("f-", 5, k).matrix
    assert lower[0, 1] == pytest.approx(1.0)
    assert lower[1, 2] == pytest.approx(math.sqrt(2 / 3))
    assert lower[2, 3] == pytest.approx(math.sqrt(5 / 3))
    np.testing.assert_array_equal(build_operator("f+", 5, k).matrix, lower.T)
    np.testing.assert_allclose(ladder_amplitudes(k, 5), np.diag(lower, k=1))


def test_diagonal_operators():
    np.testing.assert_array_equal(np.diag(build_operator("N", 4, 1).matrix), [0, 1, 2, 3])
    np.testing.assert_array_equal(np.diag(build_operator("P0", 4, 1).matrix), [1, 0, 1, 0])
    np.testing.assert_array_equal(np.diag(build_operator("P1", 4, 1).matrix), [0, 1, 0, 1])


def test_matrices_are_read_only():
    m = build_operator("f-", 3, 1)
    with pytest.raises(ValueError):
        m.matrix[0, 1] = 2.0


def test_ordinary_fermion_is_nilpotent():
    lower = build_operator("f-", 2, 0)
    np.testing.assert_array_equal((lower @ lower).matrix, np.zeros((2, 2)))
    np.testing.assert_array_equal(
        build_operator("f-f+", 2, 0).matrix + build_operator("f+f-", 2, 0).matrix, np.eye(2)
    )


@pytest.mark.parametrize("D, kappa0", [(1, 1), (4, -1)])
def test_build_operator_domain(D, kappa0):
    with pytest.raises(DomainError):
        build_operator("f+", D, kappa0)


def test_exact_action_matches_word_action():
    k = Fraction(2, 5)
    word = [LOWER, RAISE, RAISE, LOWER, RAISE]
    nf = word_normalize(word)
    for n in range(6):
        normal = exact_action(nf, n, k)
        raw = word_action(word, n, k)
        assert {m: c.squared() for m, c in normal.items()} == {m: c.squared() for m, c in raw.items()}


@pytest.mark.slow
@pytest.mark.parametrize("kappa0", [Fraction(1, 3), Fraction(1, 2), Fraction(2), Fraction(5, 7)])
def test_normal_form_action_is_faithful(kappa0):
    for length in range(9):
        for word in itertools.product((RAISE, LOWER), repeat=length):
            nf = word_normalize(word)
            for n in range(25):
                assert exact_action(nf, n, kappa0) == word_action(word, n, kappa0), (word, n)


def test_word_action_shared_radical():
    k = Fraction(1, 2)
    action = word_action("f+f+", 1, k)
    coeff = action[3]
    assert coeff.radicand_span == (1, 3)
    assert coeff.rational_part == 1
    assert coeff.radicand == Fraction(1) * Fraction(2)  # F(2) F(3) at κ = 1/2
    assert word_action("f-", 0, k) == {}


def test_action_coefficient_arithmetic():
    a = ActionCoefficient(Fraction(1, 2), (0, 2), Fraction(3))
    b = ActionCoefficient(Fraction(1, 2), (0, 2), Fraction(3))
    assert (a + b).rational_part == 1
    assert float(a + b) == pytest.approx(math.sqrt(3))
    assert (a + b).squared() == 3
    with pytest.raises(DomainError):
        a + ActionCoefficient(Fraction(1), (1, 2), Fraction(3))


def test_action_matrix_matches_dense_product():
    k = Fraction(3, 4)
    word = [LOWER, LOWER, RAISE]
    dense = build_operator(word, 10, k).matrix
    exact = action_matrix(word_normalize(word), 10, k)
    # the last column of the dense product is cut by the truncation
    np.testing.assert_allclose(exact[:, :9], dense[:, :9], rtol=1e-12, atol=1e-12)


def test_exact_matrix_agreement():
    report = exact_matrix_agreement(samples=60, seed=3)
    assert report.passed, report.details["failures"]


def test_spectrum_at_four_fifths():
    spectrum = algebraic_spectrum("f+f-", Fraction(4, 5), 6)
    assert spectrum == [0, 1, Fraction(8, 5), Fraction(13, 5), Fraction(16, 5), Fraction(21, 5)]
    assert algebraic_spectrum("f-f+", Fraction(4, 5), 5) == spectrum[1:]


def test_gaps_alternate():
    kappa0 = Fraction(4, 5)
    gaps = gap_analysis(algebraic_spectrum("plus_minus", kappa0, 10))
    assert gaps == [1 if i % 2 == 0 else Fraction(3, 5) for i in range(9)]


def test_spectrum_domain():
    with pytest.raises(DomainError):
        algebraic_spectrum("f+f+", 1, 3)
    with pytest.raises(DomainError):
        algebraic_spectrum("f+f-", 1, 0)


@pytest.mark.parametrize("kappa0", [Fraction(1, 3), Fraction(2)])
def test_isospectral(kappa0):
    assert isospectral_check(kappa0, 24).passed


def test_isospectral_ordinary_fermion():
    report = isospectral_check(0, 2)
    assert report.passed
    assert report.notes


def test_isospectral_rejects_odd_dimension():
    with pytest.raises(DomainError):
        isospectral_check(Fraction(1, 3), 7)


@pytest.mark.parametrize("kappa0", [Fraction(1, 3), Fraction(2)])
def test_matrix_relations(kappa0):
    assert adjointness_check(kappa0, 12).passed
    assert anticommutator_matrix_check(kappa0, 12).passed
    assert bosonized_relations_check(kappa0, 12).passed


def test_bosonized_relations_need_positive_kappa():
    with pytest.raises(DomainError):
        bosonized_relations_check(0, 8)
