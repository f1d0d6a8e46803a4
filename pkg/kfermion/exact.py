"""Exact coefficient ring of the algebra.

Every operator-valued coefficient (structure function, projectors, Stirling and
Bell operators) is an element ``p(N) + q(N)·σ`` where ``σ = (-1)^N`` and the
coefficients of ``p`` and ``q`` are polynomials in κ over the rationals. Both
parts are stored as elements of the sparse ring ``QQ[kappa, N]`` so that κ stays
symbolic until evaluation time.

σ never appears to a power: ``σ² = 1`` is applied inside :func:`nsigma_mul`.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from .exceptions import DomainError, SerializationError

Rational = Fraction
KPoly = PolyElement

COEFF_RING, KAPPA, N_SYMBOL = ring("kappa,N", QQ)
KAPPA_RING, KAPPA_ONLY = ring("kappa", QQ)

Scalar = Union[int, Fraction]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, an integer or a terminating decimal into an exact rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as err:
        raise DomainError("'{}' is not a rational number".format(text)) from err


def check_kappa(kappa0: Scalar) -> Fraction:
    """``kappa0`` as an exact rational; κ < 0 is outside every representation."""
    kappa0 = Fraction(kappa0)
    if kappa0 < 0:
        raise DomainError("κ must be non-negative, got {}".format(kappa0))
    return kappa0


def to_qq(value: Scalar) -> Any:
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    raise TypeError("expected int or Fraction, got {}".format(type(value).__name__))


def from_qq(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def kpoly(coefficients: Iterable[Scalar]) -> KPoly:
    """Build a κ-polynomial from its coefficient sequence (index = κ-degree)."""
    terms = {(i,): to_qq(Fraction(c)) for i, c in enumerate(coefficients) if c != 0}
    return KAPPA_RING.from_dict(terms) if terms else KAPPA_RING.zero


def kpoly_coefficients(p: KPoly) -> list[Fraction]:
    """Canonical coefficient list of a κ-polynomial; the zero polynomial gives ``[]``."""
    degree = kpoly_degree(p)
    if degree is None:
        return []
    out = [Fraction(0)] * (degree + 1)
    for (i,), c in p.items():
        out[i] = from_qq(c)
    return out


def kpoly_degree(p: KPoly) -> int | None:
    if not p:
        return None
    return max(i for (i,) in p.keys())


def kpoly_eval(p: KPoly, kappa0: Scalar) -> Fraction:
    kappa0 = Fraction(kappa0)
    return sum((from_qq(c) * kappa0 ** i for (i,), c in p.items()), Fraction(0))


def _coerce_part(value: Any) -> PolyElement:
    if value is None:
        return COEFF_RING.zero
    if isinstance(value, PolyElement):
        if value.ring == COEFF_RING:
            return value
        if value.ring == KAPPA_RING:
            return COEFF_RING.from_dict({(i, 0): c for (i,), c in value.items()})
        raise TypeError("polynomial belongs to a foreign ring {}".format(value.ring))
    return COEFF_RING.ground_new(to_qq(Fraction(value)))


class NSigmaPoly:
    """An exact element ``even(κ, N) + sigma(κ, N)·σ`` of ``Q[κ][N] ⊕ Q[κ][N]·σ``.

    Values are immutable; arithmetic returns new instances. Equality is structural,
    which coincides with equality as operators because both parts are canonical.
    """

    __slots__ = ("even", "sigma")

    even: PolyElement
    sigma: PolyElement

    def __init__(self, even: Any = None, sigma: Any = None) -> None:
        object.__setattr__(self, "even", _coerce_part(even))
        object.__setattr__(self, "sigma", _coerce_part(sigma))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("NSigmaPoly is immutable")

    @classmethod
    def one(cls) -> "NSigmaPoly":
        return cls(1)

    @classmethod
    def zero(cls) -> "NSigmaPoly":
        return cls()

    @classmethod
    def kappa(cls) -> "NSigmaPoly":
        return cls(KAPPA)

    @classmethod
    def number(cls) -> "NSigmaPoly":
        return cls(N_SYMBOL)

    @classmethod
    def sigma_unit(cls) -> "NSigmaPoly":
        return cls(None, 1)

    @staticmethod
    def _wrap(other: Any) -> "NSigmaPoly":
        if isinstance(other, NSigmaPoly):
            return other
        if isinstance(other, (int, Fraction, PolyElement)):
            return NSigmaPoly(other)
        return NotImplemented

    def __add__(self, other: Any) -> "NSigmaPoly":
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return NSigmaPoly(self.even + other.even, self.sigma + other.sigma)

    __radd__ = __add__

    def __neg__(self) -> "NSigmaPoly":
        return NSigmaPoly(-self.even, -self.sigma)

    def __sub__(self, other: Any) -> "NSigmaPoly":
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return NSigmaPoly(self.even - other.even, self.sigma - other.sigma)

    def __rsub__(self, other: Any) -> "NSigmaPoly":
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other: Any) -> "NSigmaPoly":
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return nsigma_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "NSigmaPoly":
        factor = to_qq(1 / Fraction(other))
        return NSigmaPoly(self.even * factor, self.sigma * factor)

    def __pow__(self, exponent: int) -> "NSigmaPoly":
        if exponent < 0:
            raise DomainError("negative powers are not elements of the ring")
        result = NSigmaPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = NSigmaPoly(other)
        if not isinstance(other, NSigmaPoly):
            return NotImplemented
        return self.even == other.even and self.sigma == other.sigma

    def __hash__(self) -> int:
        return hash((self.even, self.sigma))

    def __bool__(self) -> bool:
        return bool(self.even) or bool(self.sigma)

    def is_zero(self) -> bool:
        return not self

    def shift(self, d: int) -> "NSigmaPoly":
        return nsigma_shift(self, d)

    def evaluate(self, kappa0: Scalar, n: int) -> Fraction:
        return nsigma_eval(self, kappa0, n)

    def at(self, n: int) -> KPoly:
        """Bind ``N = n`` (and ``σ = (-1)^n``) keeping κ symbolic."""
        sign = -1 if n % 2 else 1
        acc: dict[int, Any] = {}
        for part, factor in ((self.even, 1), (self.sigma, sign)):
            for (i, j), c in part.items():
                acc[i] = acc.get(i, QQ(0)) + c * QQ(factor) * QQ(n) ** j
        terms = {(i,): c for i, c in acc.items() if c}
        return KAPPA_RING.from_dict(terms) if terms else KAPPA_RING.zero

    def specialize(self, kappa0: Scalar) -> "NSigmaPoly":
        """Bind κ to an exact value, keeping N and σ."""
        value = COEFF_RING.ground_new(to_qq(Fraction(kappa0)))
        return NSigmaPoly(self.even.compose(KAPPA, value), self.sigma.compose(KAPPA, value))

    def is_constant(self) -> bool:
        return not self.sigma and all(m == (0, 0) for m in self.even.keys())

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError("{} is not a constant".format(self))
        return from_qq(self.even.get((0, 0), QQ(0)))

    def kappa_degree(self) -> int | None:
        degrees = [i for part in (self.even, self.sigma) for (i, _) in part.keys()]
        return max(degrees) if degrees else None

    def to_json(self) -> dict[str, list[list[str]]]:
        return {"even": _part_rows(self.even), "sigma": _part_rows(self.sigma)}

    @classmethod
    def from_json(cls, payload: dict[str, Any] | str) -> "NSigmaPoly":
        if isinstance(payload, str):
            payload = json.loads(payload)
        try:
            even = _part_from_rows(payload["even"])
            sigma = _part_from_rows(payload["sigma"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
            raise SerializationError("malformed NSigmaPoly payload: {}".format(payload)) from err
        return cls(even, sigma)

    def __str__(self) -> str:
        if not self.sigma:
            return str(self.even.as_expr())
        if not self.even:
            return "({})*sigma".format(self.sigma.as_expr())
        return "{} + ({})*sigma".format(self.even.as_expr(), self.sigma.as_expr())

    def __repr__(self) -> str:
        return "NSigmaPoly({})".format(self)


def _part_rows(part: PolyElement) -> list[list[str]]:
    if not part:
        return []
    n_degree = max(j for (_, j) in part.keys())
    rows: list[list[str]] = []
    for j in range(n_degree + 1):
        row = {i: from_qq(c) for (i, jj), c in part.items() if jj == j}
        length = max(row) + 1 if row else 0
        rows.append([str(row.get(i, Fraction(0))) for i in range(length)])
    return rows


def _part_from_rows(rows: list[list[str]]) -> PolyElement:
    if not isinstance(rows, list):
        raise TypeError("rows must be a list")
    terms = {}
    for j, row in enumerate(rows):
        for i, text in enumerate(row):
            value = Fraction(text)
            if value:
                terms[(i, j)] = to_qq(value)
    return COEFF_RING.from_dict(terms) if terms else COEFF_RING.zero


def nsigma_mul(a: NSigmaPoly, b: NSigmaPoly) -> NSigmaPoly:
    """Ring product using ``σ² = 1`` and ``σN = Nσ``."""
    even = a.even * b.even + a.sigma * b.sigma
    sigma = a.even * b.sigma + a.sigma * b.even
    return NSigmaPoly(even, sigma)


def nsigma_shift(a: NSigmaPoly, d: int) -> NSigmaPoly:
    """Substitute ``N -> N + d``; σ picks up ``(-1)^d``."""
    if d == 0:
        return a
    target = N_SYMBOL + d
    sigma = a.sigma.compose(N_SYMBOL, target)
    if d % 2:
        sigma = -sigma
    return NSigmaPoly(a.even.compose(N_SYMBOL, target), sigma)


def nsigma_eval(a: NSigmaPoly, kappa0: Scalar, n: int) -> Fraction:
    """Exact value at ``κ = kappa0``, ``N = n``, ``σ = (-1)^n``."""
    if n < 0:
        raise DomainError("n must be non-negative, got {}".format(n))
    kappa0 = Fraction(kappa0)
    sign = -1 if n % 2 else 1
    total = Fraction(0)
    for part, factor in ((a.even, 1), (a.sigma, sign)):
        for (i, j), c in part.items():
            total += factor * from_qq(c) * kappa0 ** i * n ** j
    return total
