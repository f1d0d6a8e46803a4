"""Bargmann representation: states as polynomials in z.

``f⁺`` is multiplication by z and ``f⁻`` is the generalized derivative
``D^κ = κ d/dz + (1-κ) ∂₋₁`` where ``∂₋₁ p(z) = (p(z) - p(-z)) / (2z)``.
Basis monomials are ``f_n(z) = z^n / √ν_n`` with

    ν_{2m}   = (2κ)^{2m}   m! Γ(1/(2κ) + m)
    ν_{2m+1} = (2κ)^{2m+1} m! Γ(1/(2κ) + m + 1)

No inner product on the z side is assumed; everything here acts on
coefficient sequences.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np
from scipy.special import gammaln

from ..algebra import structure_function_value
from ..exact import Scalar
from ..exceptions import DomainError
from ..fock import build_operator
from ..report import Report

Coefficient = Any


@dataclass(frozen=True)
class BargmannPoly:
    """Polynomial ``Σ c_k z^k``; trailing zeros are stripped so the zero polynomial has no coefficients.

    Coefficients may be ``Fraction`` (exact identities) or ``complex``.
    """
    coefficients: tuple[Coefficient, ...]

    def __init__(self, coefficients: Iterable[Coefficient] = ()) -> None:
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, n: int, coefficient: Coefficient = 1) -> "BargmannPoly":
        return cls([0] * n + [coefficient])

    @property
    def degree(self) -> int | None:
        return len(self.coefficients) - 1 if self.coefficients else None

    def coefficient(self, k: int) -> Coefficient:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __add__(self, other: "BargmannPoly") -> "BargmannPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        return BargmannPoly(self.coefficient(k) + other.coefficient(k) for k in range(size))

    def __neg__(self) -> "BargmannPoly":
        return BargmannPoly(-c for c in self.coefficients)

    def __sub__(self, other: "BargmannPoly") -> "BargmannPoly":
        return self + (-other)

    def scale(self, factor: Coefficient) -> "BargmannPoly":
        return BargmannPoly(factor * c for c in self.coefficients)

    def times_z(self) -> "BargmannPoly":
        return BargmannPoly((0,) + self.coefficients) if self.coefficients else self

    def __call__(self, z: complex) -> complex:
        return sum(c * z ** k for k, c in enumerate(self.coefficients))

    def is_zero(self) -> bool:
        return not self.coefficients

    def allclose(self, other: "BargmannPoly", tol: float) -> bool:
        """Coefficientwise agreement relative to the largest coefficient of ``other``."""
        size = max(len(self.coefficients), len(other.coefficients))
        if size == 0:
            return True
        lhs = np.array([complex(self.coefficient(k)) for k in range(size)])
        rhs = np.array([complex(other.coefficient(k)) for k in range(size)])
        scale = max(float(np.max(np.abs(rhs))), float(np.max(np.abs(lhs))), 1e-300)
        return float(np.max(np.abs(lhs - rhs))) <= tol * scale


def _positive_kappa(kappa0: Scalar) -> Fraction:
    kappa0 = Fraction(kappa0)
    if kappa0 <= 0:
        raise DomainError("Bargmann monomials need κ > 0, got {}".format(kappa0))
    return kappa0


def monomial_log_norm(kappa0: Scalar, n: int) -> float:
    """``log ν_n``."""
    kappa0 = _positive_kappa(kappa0)
    if n < 0:
        raise DomainError("degree must be non-negative, got {}".format(n))
    a = 1 / (2 * float(kappa0))
    m, odd = divmod(n, 2)
    return n * math.log(2 * float(kappa0)) + float(gammaln(m + 1)) + float(gammaln(a + m + odd))


def bargmann_monomial(kappa0: Scalar, n: int) -> BargmannPoly:
    return BargmannPoly.monomial(n, math.exp(-0.5 * monomial_log_norm(kappa0, n)))


def derivative(p: BargmannPoly) -> BargmannPoly:
    return BargmannPoly(k * c for k, c in enumerate(p.coefficients) if k)


def euler_operator(p: BargmannPoly) -> BargmannPoly:
    """``z d/dz``, the number operator."""
    return BargmannPoly(k * c for k, c in enumerate(p.coefficients))


def fibonacci_difference(p: BargmannPoly) -> BargmannPoly:
    """``(p(z) - p(-z)) / (2z)``: drops even powers, lowers odd ones by one."""
    return BargmannPoly(c if k % 2 else 0 for k, c in enumerate(p.coefficients) if k)


def generalized_derivative(kappa0: Scalar, p: BargmannPoly) -> BargmannPoly:
    """``D^κ = κ d/dz + (1-κ) ∂₋₁``; on monomials ``D^κ z^m = F₊(m) z^(m-1)``.

    κ = 0 is allowed and gives ``∂₋₁``.
    """
    kappa0 = Fraction(kappa0)
    if kappa0 < 0:
        raise DomainError("κ must be non-negative, got {}".format(kappa0))
    return derivative(p).scale(kappa0) + fibonacci_difference(p).scale(1 - kappa0)


def number_realized_lowering(kappa0: Scalar, p: BargmannPoly) -> BargmannPoly:
    """``(1/z) F₊(z d/dz)`` applied monomial by monomial."""
    kappa0 = Fraction(kappa0)
    return BargmannPoly(structure_function_value(kappa0, k) * c for k, c in enumerate(p.coefficients) if k)


def parity(p: BargmannPoly) -> BargmannPoly:
    """``p(-z)``."""
    return BargmannPoly(-c if k % 2 else c for k, c in enumerate(p.coefficients))


def bargmann_transform(coeffs: Sequence[complex], kappa0: Scalar) -> BargmannPoly:
    """``Ψ(z) = Σ Ψ_n f_n(z)``."""
    kappa0 = _positive_kappa(kappa0)
    return BargmannPoly(
        complex(c) * math.exp(-0.5 * monomial_log_norm(kappa0, n)) for n, c in enumerate(coeffs)
    )


def bargmann_coefficients(p: BargmannPoly, kappa0: Scalar) -> np.ndarray:
    """Inverse of :func:`bargmann_transform`: Fock coefficients of a polynomial."""
    kappa0 = _positive_kappa(kappa0)
    return np.array(
        [complex(c) * math.exp(0.5 * monomial_log_norm(kappa0, n)) for n, c in enumerate(p.coefficients)],
        dtype=complex,
    )


def faithfulness_check(kappa0: Scalar, n_max: int = 60, tol: float = 1e-12) -> Report:
    """``D^κ f_n = √F₊(n) f_{n-1}`` and ``z f_n = √F₊(n+1) f_{n+1}`` for ``n <= n_max``."""
    kappa0 = _positive_kappa(kappa0)
    failures = []
    for n in range(n_max + 1):
        f_n = bargmann_monomial(kappa0, n)
        lowered = generalized_derivative(kappa0, f_n)
        expected_low = (
            bargmann_monomial(kappa0, n - 1).scale(math.sqrt(structure_function_value(kappa0, n)))
            if n
            else BargmannPoly()
        )
        raised = f_n.times_z()
        expected_high = bargmann_monomial(kappa0, n + 1).scale(math.sqrt(structure_function_value(kappa0, n + 1)))
        if not lowered.allclose(expected_low, tol):
            failures.append({"n": n, "action": "lower"})
        if not raised.allclose(expected_high, tol):
            failures.append({"n": n, "action": "raise"})
    return Report("bargmann_faithfulness[κ={}]".format(kappa0), not failures, {"n_max": n_max, "failures": failures})


def _random_rational_poly(rng: random.Random, degree: int) -> BargmannPoly:
    return BargmannPoly(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(degree + 1))


def anticommutator_identities_check(kappa0: Scalar, max_degree: int = 30, samples: int = 10, seed: int = 0) -> Report:
    """``{∂₋₁, z} = 1`` and ``{D^κ, z} = 1 + 2κ z d/dz``, exactly on rational polynomials."""
    kappa0 = Fraction(kappa0)
    rng = random.Random(seed)
    failures = []
    for i in range(samples):
        p = _random_rational_poly(rng, rng.randint(0, max_degree))
        fib = fibonacci_difference(p.times_z()) + fibonacci_difference(p).times_z()
        if fib != p:
            failures.append({"sample": i, "identity": "fibonacci"})
        gen = generalized_derivative(kappa0, p.times_z()) + generalized_derivative(kappa0, p).times_z()
        if gen != p + euler_operator(p).scale(2 * kappa0):
            failures.append({"sample": i, "identity": "generalized"})
        if generalized_derivative(kappa0, p) != number_realized_lowering(kappa0, p):
            failures.append({"sample": i, "identity": "number_realization"})
    return Report(
        "bargmann_anticommutators[κ={}]".format(kappa0),
        not failures,
        {"max_degree": max_degree, "samples": samples, "failures": failures},
    )


def intertwining_check(kappa0: Scalar, D: int = 30, seed: int = 0, tol: float = 1e-12) -> Report:
    """The transform carries ``f⁺`` to ``z·``, ``f⁻`` to ``D^κ`` and ``(-1)^N`` to ``z -> -z``."""
    kappa0 = _positive_kappa(kappa0)
    rng = np.random.default_rng(seed)
    # the top level is left empty so f⁺ stays inside the truncation
    psi = np.zeros(D, dtype=complex)
    psi[: D - 1] = rng.normal(size=D - 1) + 1j * rng.normal(size=D - 1)
    transform = bargmann_transform(psi, kappa0)
    raised = bargmann_transform(build_operator("f+", D, kappa0).apply(psi), kappa0)
    lowered = bargmann_transform(build_operator("f-", D, kappa0).apply(psi), kappa0)
    signs = np.where(np.arange(D) % 2, -1.0, 1.0)
    checks = {
        "raise": raised.allclose(transform.times_z(), tol),
        "lower": lowered.allclose(generalized_derivative(kappa0, transform), tol),
        "parity": bargmann_transform(signs * psi, kappa0).allclose(parity(transform), tol),
        "inverse": bool(np.allclose(bargmann_coefficients(transform, kappa0), psi[: len(transform.coefficients)], rtol=tol, atol=0)),
    }
    return Report("bargmann_intertwining[κ={} D={}]".format(kappa0, D), all(checks.values()), {"checks": checks})
