from fractions import Fraction

import pytest

from kfermion.algebra import (
    LOWER,
    RAISE,
    G_plus,
    NormalForm,
    anticommutator_check,
    bosonization_check,
    bosonize,
    bosonized_structure_expected,
    confluence_check,
    diagonal_reduce,
    graded_commutator_check,
    number_operator,
    operators_equal,
    parse_word,
    projector,
    projector_check,
    reorder_identity_check,
    reorder_remainder,
    sigma,
    structure_function_poly,
    structure_function_value,
    structure_recursion_check,
    word_normalize,
)
from kfermion.exact import NSigmaPoly
from kfermion.exceptions import DomainError, SerializationError

kappa = NSigmaPoly.kappa()


def test_structure_function_values():
    assert [structure_function_value(0, n) for n in range(6)] == [0, 1, 0, 1, 0, 1]
    k = Fraction(4, 5)
    assert [structure_function_value(k, n) for n in range(4)] == [0, 1, Fraction(8, 5), Fraction(13, 5)]


@pytest.mark.parametrize("kappa0, n", [(-1, 2), (Fraction(1, 2), -1)])
def test_structure_function_domain(kappa0, n):
    with pytest.raises(DomainError):
        structure_function_value(kappa0, n)


def test_structure_function_poly_matches_values():
    F = structure_function_poly()
    for kappa0 in (Fraction(0), Fraction(2, 7), Fraction(3)):
        for n in range(12):
            assert F.evaluate(kappa0, n) == structure_function_value(kappa0, n)


def test_defining_relations():
    assert anticommutator_check().passed
    assert graded_commutator_check().passed
    assert projector_check().passed


def test_structure_recursion():
    report = structure_recursion_check(60)
    assert report.passed, report.details["failures"]


@pytest.mark.parametrize("n", range(1, 7))
def test_reordering_identities(n):
    assert reorder_identity_check(n).passed


def test_reorder_remainder_low_orders():
    assert reorder_remainder(1) == G_plus()
    assert reorder_remainder(2) == 2 * kappa


def test_basic_rewrites():
    assert word_normalize([LOWER, RAISE]) == NormalForm.scalar(structure_function_poly().shift(1))
    assert word_normalize([RAISE, LOWER]) == NormalForm({(1, 1): NSigmaPoly.one()})
    assert word_normalize([]) == NormalForm.identity()


def test_reduction_collapses_diagonal_blocks():
    assert diagonal_reduce(word_normalize([RAISE, LOWER])) == NormalForm.scalar(structure_function_poly())
    total = word_normalize([LOWER, RAISE]) + word_normalize([RAISE, LOWER])
    assert operators_equal(total, NormalForm.scalar(G_plus()))


def test_products_agree_with_rewriting():
    a = word_normalize([LOWER, RAISE, RAISE])
    b = word_normalize([LOWER, LOWER, RAISE])
    assert operators_equal(a * b, word_normalize([LOWER, RAISE, RAISE, LOWER, LOWER, RAISE]))


def test_confluence():
    assert confluence_check(5).passed


def test_unknown_strategy():
    with pytest.raises(DomainError):
        word_normalize([RAISE], strategy="middle")


def test_parse_word():
    assert parse_word("f-f+f+") == [LOWER, RAISE, RAISE]
    assert parse_word(["f+", "f-"]) == [RAISE, LOWER]
    assert parse_word("") == []
    for bad in ("f+f", "f*f+", ["f+", "g"]):
        with pytest.raises(DomainError):
            parse_word(bad)


def test_normal_form_rejects_negative_powers():
    with pytest.raises(DomainError):
        NormalForm({(-1, 0): NSigmaPoly.one()})


def test_normal_form_json():
    nf = word_normalize([LOWER, LOWER, RAISE])
    assert NormalForm.from_json(nf.to_json()) == nf
    with pytest.raises(SerializationError):
        NormalForm.from_json({"bad": 1})


def test_projectors():
    assert projector("even") + projector("odd") == 1
    assert projector("even") - projector("odd") == sigma()
    with pytest.raises(DomainError):
        projector("both")


def test_bosonization():
    assert bosonization_check().passed
    b = bosonize()
    N = number_operator()
    assert b.commutator == 2 * kappa * (2 * kappa * N + 1)
    assert b.F_of_N == bosonized_structure_expected()
