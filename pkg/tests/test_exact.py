import random
from fractions import Fraction

import pytest

from kfermion.exact import (
    NSigmaPoly,
    check_kappa,
    kpoly,
    kpoly_coefficients,
    kpoly_degree,
    kpoly_eval,
    parse_rational,
)
from kfermion.exceptions import DomainError, SerializationError

kappa = NSigmaPoly.kappa()
N = NSigmaPoly.number()
sigma = NSigmaPoly.sigma_unit()


@pytest.mark.parametrize("text, expected", [
    ("4/5", Fraction(4, 5)),
    ("-2/6", Fraction(-1, 3)),
    ("0.25", Fraction(1, 4)),
    ("3", Fraction(3)),
    (7, Fraction(7)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["abc", "1/0", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(DomainError):
        parse_rational(text)


def test_sigma_squares_to_one():
    assert sigma * sigma == 1
    assert sigma * sigma * sigma == sigma


def test_shift():
    assert N.shift(2) == N + 2
    assert sigma.shift(1) == -sigma
    assert sigma.shift(2) == sigma
    assert (kappa * N * N).shift(-1) == kappa * (N - 1) * (N - 1)


def test_evaluate():
    p = kappa * N + (1 - kappa) * (1 - sigma) / 2
    assert p.evaluate(Fraction(1, 2), 4) == 2
    assert p.evaluate(Fraction(1, 2), 3) == Fraction(1, 2) * 3 + Fraction(1, 2)
    assert p.evaluate(0, 5) == 1
    with pytest.raises(DomainError):
        p.evaluate(1, -1)


def test_at_binds_level():
    p = kappa * N + (1 - kappa) * (1 - sigma) / 2
    assert p.at(3) == kpoly([1, 2])
    assert p.at(4) == kpoly([0, 4])


def test_specialize_and_constant():
    assert (kappa * N).specialize(0).is_zero()
    assert (2 + kappa).specialize(Fraction(1, 3)).constant_value() == Fraction(7, 3)
    with pytest.raises(DomainError):
        N.constant_value()


def test_division_and_powers():
    assert (2 * kappa) / 2 == kappa
    assert (1 + kappa) ** 2 == 1 + 2 * kappa + kappa * kappa
    assert kappa ** 0 == 1
    with pytest.raises(DomainError):
        kappa ** -1


def test_immutable():
    with pytest.raises(AttributeError):
        kappa.even = None


def test_kappa_degree():
    assert (kappa ** 3 * N + sigma).kappa_degree() == 3
    assert NSigmaPoly.zero().kappa_degree() is None


def test_json_restores_value():
    p = kappa * kappa * N * (N - 1) - Fraction(2, 3) * kappa * sigma
    assert NSigmaPoly.from_json(p.to_json()) == p


@pytest.mark.parametrize("payload", [{"even": "x"}, {"sigma": []}, '{"even": [["1/0"]], "sigma": []}'])
def test_json_rejects_malformed(payload):
    with pytest.raises(SerializationError):
        NSigmaPoly.from_json(payload)


def test_kpoly_helpers():
    p = kpoly([1, 0, Fraction(1, 2)])
    assert kpoly_coefficients(p) == [1, 0, Fraction(1, 2)]
    assert kpoly_degree(p) == 2
    assert kpoly_eval(p, 2) == 3
    assert kpoly_degree(kpoly([])) is None
    assert kpoly_coefficients(kpoly([0, 0])) == []


def _random_poly(rng):
    p = NSigmaPoly.zero()
    for _ in range(rng.randint(1, 4)):
        term = Fraction(rng.randint(-5, 5), rng.randint(1, 4)) * kappa ** rng.randint(0, 2) * N ** rng.randint(0, 3)
        p = p + (term * sigma if rng.random() < 0.5 else term)
    return p


def test_ring_axioms_on_random_triples():
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a - a).is_zero()


def test_shift_commutes_with_evaluation():
    rng = random.Random(11)
    for _ in range(10):
        a = _random_poly(rng)
        kappa0 = Fraction(rng.randint(0, 9), rng.randint(1, 7))
        for d in range(-3, 4):
            for n in range(3, 41):
                assert a.shift(d).evaluate(kappa0, n) == a.evaluate(kappa0, n + d)


def test_rational_arithmetic_round_trips():
    rng = random.Random(3)
    for _ in range(200):
        x = Fraction(rng.randint(-10 ** 12, 10 ** 12), rng.randint(1, 10 ** 12))
        y = Fraction(rng.randint(-10 ** 12, 10 ** 12), rng.randint(1, 10 ** 12))
        assert (x + y) - y == x
        assert parse_rational(str(x)) == x
        assert x.denominator > 0


def test_check_kappa():
    assert check_kappa(0) == 0
    assert check_kappa(Fraction(2, 6)) == Fraction(1, 3)
    with pytest.raises(DomainError):
        check_kappa(Fraction(-1, 2))
