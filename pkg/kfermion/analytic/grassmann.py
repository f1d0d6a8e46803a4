"""The κ → 0 limit: coherent states labelled by a Grassmann variable.

Elements live in the algebra spanned by ``1, θ, θ̄, θθ̄`` with ``θ² = θ̄² = 0``
and ``θ̄θ = -θθ̄``. The Fock module is two-dimensional with ``f⁻|1⟩ = |0⟩``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..exceptions import GrassmannParityError
from ..report import Report
from .bargmann import BargmannPoly, fibonacci_difference, generalized_derivative


@dataclass(frozen=True)
class GrassmannElement:
    scalar: Any = 0
    theta: Any = 0
    theta_bar: Any = 0
    theta_theta_bar: Any = 0

    @classmethod
    def generator(cls, coefficient: Any = 1) -> "GrassmannElement":
        return cls(theta=coefficient)

    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        return GrassmannElement(
            self.scalar + other.scalar,
            self.theta + other.theta,
            self.theta_bar + other.theta_bar,
            self.theta_theta_bar + other.theta_theta_bar,
        )

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(-self.scalar, -self.theta, -self.theta_bar, -self.theta_theta_bar)

    def __sub__(self, other: "GrassmannElement") -> "GrassmannElement":
        return self + (-other)

    def __mul__(self, other: Any) -> "GrassmannElement":
        if not isinstance(other, GrassmannElement):
            return GrassmannElement(
                self.scalar * other, self.theta * other, self.theta_bar * other, self.theta_theta_bar * other
            )
        a, b = self, other
        return GrassmannElement(
            a.scalar * b.scalar,
            a.scalar * b.theta + a.theta * b.scalar,
            a.scalar * b.theta_bar + a.theta_bar * b.scalar,
            # θ̄θ = -θθ̄
            a.scalar * b.theta_theta_bar + a.theta_theta_bar * b.scalar + a.theta * b.theta_bar - a.theta_bar * b.theta,
        )

    def __rmul__(self, other: Any) -> "GrassmannElement":
        return self * other

    def conjugate(self) -> "GrassmannElement":
        """Swap ``θ ↔ θ̄`` and conjugate coefficients; ``(θθ̄)* = θθ̄``."""
        return GrassmannElement(
            _conj(self.scalar), _conj(self.theta_bar), _conj(self.theta), _conj(self.theta_theta_bar)
        )

    def is_zero(self) -> bool:
        return self.scalar == 0 and self.theta == 0 and self.theta_bar == 0 and self.theta_theta_bar == 0

    def is_odd(self) -> bool:
        return self.scalar == 0 and self.theta_theta_bar == 0

    def __str__(self) -> str:
        parts = [
            "{}{}".format(c, label)
            for c, label in (
                (self.scalar, ""),
                (self.theta, "θ"),
                (self.theta_bar, "θ̄"),
                (self.theta_theta_bar, "θθ̄"),
            )
            if c != 0
        ]
        return " + ".join(parts) or "0"


def _conj(value: Any) -> Any:
    return value.conjugate() if hasattr(value, "conjugate") else value


ONE = GrassmannElement(1)
ZERO = GrassmannElement()


def fermion_lower(state: tuple[GrassmannElement, GrassmannElement]) -> tuple[GrassmannElement, GrassmannElement]:
    """``f⁻`` on ``s₀|0⟩ + s₁|1⟩`` at κ = 0."""
    return state[1], ZERO


def grassmann_coherent_state(z: GrassmannElement) -> tuple[GrassmannElement, GrassmannElement]:
    """``(1 + z z̄)^(-1/2) (|0⟩ + z|1⟩)``; the prefactor truncates to ``1 - z z̄ / 2``."""
    if not z.is_odd():
        raise GrassmannParityError("coherent-state label must be odd, got {}".format(z))
    prefactor = ONE - (z * z.conjugate()) * 0.5
    return prefactor, prefactor * z


def grassmann_coherent(z: GrassmannElement) -> Report:
    """``f⁻|z⟩ = z|z⟩`` in the two-state module, plus nilpotency of ``∂₋₁``."""
    state = grassmann_coherent_state(z)
    lowered = fermion_lower(state)
    scaled = (z * state[0], z * state[1])
    eigen = all((x - y).is_zero() for x, y in zip(lowered, scaled))

    basis = [BargmannPoly([1]), BargmannPoly([0, 1]), BargmannPoly([2, -3])]
    nilpotent = all(fibonacci_difference(fibonacci_difference(p)).is_zero() for p in basis)
    # D^κ at κ = 0 is ∂₋₁
    limit = all(generalized_derivative(0, p) == fibonacci_difference(p) for p in basis)
    return Report(
        "grassmann_coherent[z={}]".format(z),
        eigen and nilpotent and limit,
        {"eigen": eigen, "nilpotent": nilpotent, "derivative_limit": limit, "z_squared": str(z * z)},
    )
