import re
from fractions import Fraction

import pytest

from kfermion.interpreter.parsers import (
    expect_options,
    identity_parser,
    is_exact,
    option_parser,
    register_token_type,
    typed_parser,
)


def test_typed_parser():
    tokens = ["4", "-3", "4/5", "0.5", "1e-3", "1+2j", "true", "False", "2000,4000", "abc", "4/0"]
    assert typed_parser(tokens) == [4, -3, Fraction(4, 5), 0.5, 0.001, 1 + 2j, True, False, [2000, 4000], "abc", "4/0"]


def test_typed_parser_keeps_converted_values():
    assert typed_parser([Fraction(1, 2), "2"]) == [Fraction(1, 2), 2]


def test_identity_parser():
    assert identity_parser(["4", "x"]) == ["4", "x"]


def test_register_token_type_checks_arguments():
    with pytest.raises(TypeError):
        register_token_type("^x$", str)
    with pytest.raises(TypeError):
        register_token_type(re.compile("^x$"), "not callable")


def test_option_parser():
    assert option_parser(["--max-r", "4", "--kappa", "1/3", "--flag"]) == {
        "max_r": 4,
        "kappa": Fraction(1, 3),
        "flag": True,
    }
    with pytest.raises(ValueError):
        option_parser(["4"])
    with pytest.raises(ValueError):
        option_parser(["--"])


def test_expect_options():
    assert expect_options(["--r", "3"], ("r",), ("kappa",)) == {"r": 3}
    with pytest.raises(ValueError):
        expect_options([], ("r",))
    with pytest.raises(ValueError):
        expect_options(["--r", "3", "--s", "1"], ("r",))


@pytest.mark.parametrize("value, exact", [(1, True), (Fraction(1, 2), True), (0.5, False), (True, False), ("1", False)])
def test_is_exact(value, exact):
    assert is_exact(value) is exact
