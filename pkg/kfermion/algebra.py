"""The generalized fermion algebra itself.

Words in ``f⁺`` and ``f⁻`` are rewritten into the middle-convention normal form
``Σ (f⁺)^a · c(N, σ, κ) · (f⁻)^b`` using only

* ``f⁻ f⁺ -> F₊(N+1)``
* ``c(N) f⁺ -> f⁺ c(N+1)``   (σ picks up a sign)
* ``f⁻ c(N) -> c(N+1) f⁻``   (the mirror of ``c(N) f⁻ -> f⁻ c(N-1)``)
* ``c · c' -> cc'``

``f⁺ f⁻`` is left alone by the rules, so two words that are equal as operators
can rewrite to different normal forms. :meth:`NormalForm.reduced` collapses
every ``f⁺ c f⁻`` block with ``f⁺ c(N) f⁻ = F₊(N) c(N-1)`` and is the form used
whenever operator identities are compared.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Literal, Sequence, Union

from .exact import KAPPA_RING, NSigmaPoly, Scalar, check_kappa, kpoly, kpoly_eval
from .exceptions import DomainError, SerializationError
from .report import Report

logger = logging.getLogger(__name__)


class Generator(Enum):
    RAISE = "f+"
    LOWER = "f-"

    def __str__(self) -> str:
        return self.value


RAISE = Generator.RAISE
LOWER = Generator.LOWER

Parity = Literal["even", "odd"]

_CLOSED_FORM_SAMPLES = (Fraction(0), Fraction(1, 3), Fraction(5, 7), Fraction(2))


def structure_function_value(kappa0: Scalar, n: int) -> Fraction:
    """``F₊(n)`` from the closed form, exact.

    ``F₊(n) = ½(1-(-1)^n)(1+κ(n-1)) + ½κn(1+(-1)^n)``; κ = 0 gives the ordinary
    fermion ladder ``n mod 2``.
    """
    kappa0 = check_kappa(kappa0)
    if n < 0:
        raise DomainError("Fock level must be non-negative, got {}".format(n))
    sign = -1 if n % 2 else 1
    return Fraction(1 - sign, 2) * (1 + kappa0 * (n - 1)) + kappa0 / 2 * n * (1 + sign)


def projector(parity: Parity) -> NSigmaPoly:
    sigma = NSigmaPoly.sigma_unit()
    if parity == "even":
        return (1 + sigma) / 2
    if parity == "odd":
        return (1 - sigma) / 2
    raise DomainError("parity must be 'even' or 'odd', got {!r}".format(parity))


def structure_function_poly() -> NSigmaPoly:
    """``F₊(N) = κN + (1-κ)Π₁``."""
    kappa = NSigmaPoly.kappa()
    return kappa * NSigmaPoly.number() + (1 - kappa) * projector("odd")


def number_operator() -> NSigmaPoly:
    return NSigmaPoly.number()


def sigma() -> NSigmaPoly:
    """The involution ``(-1)^N``."""
    return NSigmaPoly.sigma_unit()


def G_plus() -> NSigmaPoly:
    """The anticommutator ``{f⁻, f⁺} = 1 + 2κN``."""
    return 1 + 2 * NSigmaPoly.kappa() * NSigmaPoly.number()


def reorder_remainder(n: int) -> NSigmaPoly:
    """Remainder coefficient of ``f⁻(f⁺)^n`` past ``(f⁺)^n f⁻``.

    ``h_n(N) = ½(1-(-1)^n)(1+κ+2κN) + (-1)^n κ n``.
    """
    kappa = NSigmaPoly.kappa()
    sign = -1 if n % 2 else 1
    odd_part = Fraction(1 - sign, 2) * (1 + kappa + 2 * kappa * NSigmaPoly.number())
    return odd_part + sign * n * kappa


Monomial = tuple[int, int]
Factor = Union[Generator, NSigmaPoly]


class NormalForm:
    """Finite sum of middle-convention monomials ``(f⁺)^a c (f⁻)^b``.

    ``terms`` maps ``(a, b)`` to a nonzero :class:`NSigmaPoly`. Values are
    immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Monomial, NSigmaPoly] | None = None) -> None:
        cleaned = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise DomainError("ladder powers must be non-negative, got {}".format((a, b)))
            if c:
                cleaned[(a, b)] = c
        self._terms = dict(sorted(cleaned.items()))

    @classmethod
    def identity(cls) -> "NormalForm":
        return cls({(0, 0): NSigmaPoly.one()})

    @classmethod
    def scalar(cls, c: NSigmaPoly | Scalar) -> "NormalForm":
        return cls({(0, 0): NSigmaPoly._wrap(c)})

    @classmethod
    def generator(cls, g: Generator) -> "NormalForm":
        return cls({(1, 0) if g is RAISE else (0, 1): NSigmaPoly.one()})

    @property
    def terms(self) -> dict[Monomial, NSigmaPoly]:
        return dict(self._terms)

    def coefficient(self, a: int, b: int) -> NSigmaPoly:
        return self._terms.get((a, b), NSigmaPoly.zero())

    def __add__(self, other: "NormalForm") -> "NormalForm":
        merged = dict(self._terms)
        for key, c in other._terms.items():
            merged[key] = merged.get(key, NSigmaPoly.zero()) + c
        return NormalForm(merged)

    def __neg__(self) -> "NormalForm":
        return NormalForm({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + (-other)

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        return normal_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def reduced(self) -> "NormalForm":
        return diagonal_reduce(self)

    def to_json(self) -> dict[str, Any]:
        return {
            "terms": [
                {"raise": a, "lower": b, "coeff": c.to_json()}
                for (a, b), c in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> "NormalForm":
        try:
            terms = {
                (int(t["raise"]), int(t["lower"])): NSigmaPoly.from_json(t["coeff"])
                for t in payload["terms"]
            }
        except (KeyError, TypeError, ValueError) as err:
            raise SerializationError("malformed NormalForm payload") from err
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self._terms.items():
            left = "(f+)^{} ".format(a) if a else ""
            right = " (f-)^{}".format(b) if b else ""
            parts.append("{}[{}]{}".format(left, c, right))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return "NormalForm({})".format(self)


@lru_cache(maxsize=None)
def _contraction(b: int, m: int) -> NSigmaPoly:
    """Coefficient produced by contracting ``m`` pairs out of ``(f⁻)^b (f⁺)^m``, placed on the left."""
    F = structure_function_poly()
    out = NSigmaPoly.one()
    for t in range(m):
        out = out * F.shift(b - t)
    return out


def _monomial_product(left: tuple[Monomial, NSigmaPoly], right: tuple[Monomial, NSigmaPoly]) -> tuple[Monomial, NSigmaPoly]:
    (a1, b1), c1 = left
    (a2, b2), c2 = right
    m = min(b1, a2)
    P = _contraction(b1, m)
    if b1 >= a2:
        # (f⁻)^(b1-a2) remains in the middle, c2 moves left past it
        return (a1, b1 - a2 + b2), c1 * P * c2.shift(b1 - a2)
    k = a2 - b1
    return (a1 + k, b2), c1.shift(k) * P.shift(k) * c2


def normal_mul(a: NormalForm, b: NormalForm) -> NormalForm:
    """Normal form of the operator product ``a·b``."""
    acc: dict[Monomial, NSigmaPoly] = {}
    for left in a._terms.items():
        for right in b._terms.items():
            key, c = _monomial_product(left, right)
            acc[key] = acc.get(key, NSigmaPoly.zero()) + c
    return NormalForm(acc)


def _find_redex(factors: list[Factor], strategy: str) -> int | None:
    indices = range(len(factors) - 1)
    if strategy == "rightmost":
        indices = reversed(indices)
    for i in indices:
        x, y = factors[i], factors[i + 1]
        if x is LOWER and (y is RAISE or isinstance(y, NSigmaPoly)):
            return i
        if isinstance(x, NSigmaPoly) and (y is RAISE or isinstance(y, NSigmaPoly)):
            return i
    return None


def _rewrite(factors: list[Factor], i: int) -> list[Factor]:
    x, y = factors[i], factors[i + 1]
    if x is LOWER and y is RAISE:
        replacement: list[Factor] = [structure_function_poly().shift(1)]
    elif x is LOWER:
        replacement = [y.shift(1), LOWER]
    elif y is RAISE:
        replacement = [RAISE, x.shift(1)]
    else:
        replacement = [x * y]
    return factors[:i] + replacement + factors[i + 2:]


def word_normalize(word: Iterable[Generator], strategy: str = "leftmost") -> NormalForm:
    """Rewrite a generator word into its normal form.

    ``strategy`` picks which redex is reduced first (``"leftmost"`` or
    ``"rightmost"``); the system is confluent so the result does not depend on it.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise DomainError("unknown rewrite strategy {!r}".format(strategy))
    factors: list[Factor] = list(word)
    steps = 0
    while (i := _find_redex(factors, strategy)) is not None:
        factors = _rewrite(factors, i)
        steps += 1
    logger.debug("normalized word in %d rewrites", steps)

    raises = sum(1 for f in factors if f is RAISE)
    lowers = sum(1 for f in factors if f is LOWER)
    coeffs = [f for f in factors if isinstance(f, NSigmaPoly)]
    coeff = coeffs[0] if coeffs else NSigmaPoly.one()
    return NormalForm({(raises, lowers): coeff})


def confluence_check(max_length: int = 6) -> Report:
    """Leftmost and rightmost rewriting agree on every word up to ``max_length``."""
    mismatches = []
    for length in range(max_length + 1):
        for bits in itertools.product((RAISE, LOWER), repeat=length):
            if word_normalize(bits, "leftmost") != word_normalize(bits, "rightmost"):
                mismatches.append("".join(str(g) for g in bits))
    return Report("confluence", not mismatches, {"max_length": max_length, "mismatches": mismatches})


def parse_word(text: str | Sequence[str]) -> list[Generator]:
    """Parse ``"f-f+f+"`` (or a list of ``"f+"``/``"f-"`` tokens) into generators."""
    if isinstance(text, str):
        compact = text.replace(" ", "").replace(",", "")
        if len(compact) % 2:
            raise DomainError("'{}' is not a generator word".format(text))
        tokens = [compact[i:i + 2] for i in range(0, len(compact), 2)]
    else:
        tokens = list(text)
    try:
        return [Generator(t) for t in tokens]
    except ValueError as err:
        raise DomainError("'{}' is not a generator word".format(text)) from err


def diagonal_reduce(nf: NormalForm) -> NormalForm:
    """Collapse ``f⁺ c(N) f⁻ = F₊(N) c(N-1)`` until every monomial has ``min(a, b) = 0``."""
    F = structure_function_poly()
    acc: dict[Monomial, NSigmaPoly] = {}
    for (a, b), c in nf.terms.items():
        while a and b:
            c = F * c.shift(-1)
            a, b = a - 1, b - 1
        acc[(a, b)] = acc.get((a, b), NSigmaPoly.zero()) + c
    return NormalForm(acc)


def operators_equal(x: NormalForm, y: NormalForm) -> bool:
    return (x - y).reduced().is_zero()


def reorder_difference(n: int, side: Literal["left", "right"] = "left") -> NormalForm:
    """LHS − RHS of the reordering identity, reduced.

    ``left``:  ``f⁻(f⁺)^n = (-1)^n (f⁺)^n f⁻ + h_n(N) (f⁺)^(n-1)``
    ``right``: ``(f⁻)^n f⁺ = (-1)^n f⁺ (f⁻)^n + (f⁻)^(n-1) h_n(N)``
    """
    if n < 1:
        raise DomainError("n must be at least 1, got {}".format(n))
    sign = -1 if n % 2 else 1
    h = reorder_remainder(n).shift(n - 1)
    if side == "left":
        lhs = word_normalize([LOWER] + [RAISE] * n)
        rhs = NormalForm({(n, 1): NSigmaPoly(sign), (n - 1, 0): h})
    elif side == "right":
        lhs = word_normalize([LOWER] * n + [RAISE])
        rhs = NormalForm({(1, n): NSigmaPoly(sign), (0, n - 1): h})
    else:
        raise DomainError("side must be 'left' or 'right', got {!r}".format(side))
    return (lhs - rhs).reduced()


def reorder_identity_check(n: int) -> Report:
    left = reorder_difference(n, "left")
    right = reorder_difference(n, "right")
    return Report(
        "reorder_identity[n={}]".format(n),
        left.is_zero() and right.is_zero(),
        {"n": n, "left_difference": left, "right_difference": right},
    )


def anticommutator_check() -> Report:
    total = word_normalize([LOWER, RAISE]) + word_normalize([RAISE, LOWER])
    reduced = total.reduced()
    return Report(
        "anticommutator",
        reduced == NormalForm.scalar(G_plus()),
        {"computed": reduced, "expected": G_plus()},
    )


def graded_commutator_check() -> Report:
    commutator = (word_normalize([LOWER, RAISE]) - word_normalize([RAISE, LOWER])).reduced()
    kappa = NSigmaPoly.kappa()
    expected = projector("even") + (2 * kappa - 1) * projector("odd")
    return Report(
        "graded_commutator",
        commutator == NormalForm.scalar(expected),
        {"computed": commutator, "expected": expected},
    )


def projector_check() -> Report:
    p0, p1 = projector("even"), projector("odd")
    passed = p0 + p1 == 1 and (p0 * p1).is_zero() and p0 * p0 == p0 and p1 * p1 == p1
    return Report("projectors", passed, {"even": p0, "odd": p1})


def structure_recursion_check(n_max: int = 200) -> Report:
    """Recursion, alternating-sum, parity-split and period-two shift forms of ``F₊(n)``, symbolic in κ."""
    F, G = structure_function_poly(), G_plus()
    failures: list[dict[str, Any]] = []
    # running Σ_{m<n} (-1)^m G₊(m)
    alternating = KAPPA_RING.zero
    for n in range(n_max + 1):
        f_n = F.at(n)
        if F.at(n + 1) + f_n != G.at(n):
            failures.append({"n": n, "form": "recursion"})
        if F.at(n + 2) != f_n + kpoly([0, 2]):
            failures.append({"n": n, "form": "shift"})
        split = kpoly([0, n]) if n % 2 == 0 else kpoly([1, n - 1])
        if f_n != split:
            failures.append({"n": n, "form": "parity_split"})
        for kappa0 in _CLOSED_FORM_SAMPLES:
            if structure_function_value(kappa0, n) != kpoly_eval(f_n, kappa0):
                failures.append({"n": n, "form": "closed_form", "kappa": kappa0})
        if n >= 1 and (-1) ** (n - 1) * alternating != f_n:
            failures.append({"n": n, "form": "alternating_sum"})
        alternating += (-1) ** n * G.at(n)
    return Report("structure_function", not failures, {"n_max": n_max, "failures": failures})


@dataclass(frozen=True)
class Bosonization:
    X_plus: NormalForm
    X_minus: NormalForm
    F_of_N: NSigmaPoly
    commutator: NSigmaPoly


def bosonize() -> Bosonization:
    """Quadratic ladder operators ``X± = (f±)²`` and their diagonal data."""
    X_plus = word_normalize([RAISE, RAISE])
    X_minus = word_normalize([LOWER, LOWER])
    product = (X_plus * X_minus).reduced()
    commutator = (X_minus * X_plus - X_plus * X_minus).reduced()
    off_diagonal = [k for k in list(product.terms) + list(commutator.terms) if k != (0, 0)]
    if off_diagonal:
        raise ArithmeticError("bosonized products are not diagonal: {}".format(off_diagonal))
    return Bosonization(X_plus, X_minus, product.coefficient(0, 0), commutator.coefficient(0, 0))


def bosonized_structure_expected() -> NSigmaPoly:
    """``F₊(N)F₊(N-1) = κ²N(N-1) + κ(1-κ)N - κ(1-κ)Π₁``."""
    kappa, N = NSigmaPoly.kappa(), NSigmaPoly.number()
    return kappa * kappa * N * (N - 1) + kappa * (1 - kappa) * N - kappa * (1 - kappa) * projector("odd")


def bosonization_check() -> Report:
    b = bosonize()
    kappa, N = NSigmaPoly.kappa(), NSigmaPoly.number()
    expected_commutator = 2 * kappa * (2 * kappa * N + 1)
    direct = structure_function_poly() * structure_function_poly().shift(-1)
    passed = (
        b.commutator == expected_commutator
        and b.F_of_N == direct
        and b.F_of_N == bosonized_structure_expected()
    )
    return Report(
        "bosonization",
        passed,
        {"F_of_N": b.F_of_N, "commutator": b.commutator, "expected_commutator": expected_commutator},
    )
