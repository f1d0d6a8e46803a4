from typing import Any, Callable
from fractions import Fraction
import re


def identity_parser(tokens: list[str]) -> list[str]:
    """Do-nothing parser. Takes a list of tokens and returns it directly."""
    return tokens



_token_converters: list[tuple[re.Pattern, Callable[[str], Any]]] = []
def register_token_type(pattern: re.Pattern, converter: Callable[[str], Any]):
    """Registers a new token type for the typed_parser. Requires a compiled regex, and some kind
    of callable that converts the token to a value of the registered type.

    Patterns are tried in registration order, so narrower types must be registered first.
    """
    if not isinstance(pattern, re.Pattern):
        raise TypeError("pattern must be an `re.Pattern` instance")
    if not callable(converter):
        raise TypeError("converter must be callable")
    _token_converters.append((pattern, converter))

boolean = re.compile("^([tT]rue|[fF]alse)$")
register_token_type(boolean, (lambda t: t == "true" or t == "True"))

integer = re.compile(r"^[+-]?\d+$")
register_token_type(integer, int)

rational = re.compile(r"^[+-]?\d+/\d*[1-9]\d*$")
register_token_type(rational, Fraction)

number = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
register_token_type(number, float)

complex_number = re.compile(r"^\(?[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?([+-](\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?[jJ]\)?$")
register_token_type(complex_number, (lambda t: complex(t.replace("(", "").replace(")", ""))))

integer_list = re.compile(r"^\d+(,\d+)+$")
register_token_type(integer_list, (lambda t: [int(v) for v in t.split(",")]))

def _convert_token(token: str) -> Any:
    for reg, conv in _token_converters:
        if reg.match(token):
            return conv(token)

    return token


def typed_parser(tokens: list[str]) -> list[Any]:
    """Attempts to convert a list of tokens to a list of typed values, based on appearance
    (e.g. `4` becomes an `int`, `4/5` an exact `Fraction`, `0.4` a `float`, `0.7+0.3j` a `complex`,
    `2000,4000,8000` a list of ints, "true" a `bool`).
    If the parser doesn't recognize a type for a token, it returns it as it was (a string).
    """
    return [_convert_token(t) if isinstance(t, str) else t for t in tokens]


def is_exact(value: Any) -> bool:
    """True for values the symbolic commands accept as κ: ints and `Fraction`s, not floats."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def option_parser(tokens: list[Any]) -> dict[str, Any]:
    """Groups `--name value` pairs into a dict keyed by `name` (dashes become underscores).

    A `--name` with no value following it is a flag and maps to True. Values are converted
    with the registered token types. Stray positional tokens raise a ValueError.
    """
    options: dict[str, Any] = {}
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if not isinstance(token, str) or not token.startswith("--") or len(token) == 2:
            raise ValueError("unexpected token '{}'".format(token))
        name = token[2:].replace("-", "_")
        if i + 1 < len(tokens) and not (isinstance(tokens[i + 1], str) and tokens[i + 1].startswith("--")):
            options[name] = _convert_token(tokens[i + 1]) if isinstance(tokens[i + 1], str) else tokens[i + 1]
            i += 2
        else:
            options[name] = True
            i += 1
    return options


def expect_options(tokens: list[Any], required: tuple[str, ...] = (), optional: tuple[str, ...] = ()) -> dict[str, Any]:
    """`option_parser`, plus a ValueError for missing required names or names outside `required + optional`."""
    options = option_parser(tokens)
    unknown = set(options) - set(required) - set(optional)
    if unknown:
        raise ValueError("unknown option(s): {}".format(", ".join("--" + u.replace("_", "-") for u in sorted(unknown))))
    missing = [name for name in required if name not in options]
    if missing:
        raise ValueError("missing option(s): {}".format(", ".join("--" + m.replace("_", "-") for m in missing)))
    return options


def is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)
