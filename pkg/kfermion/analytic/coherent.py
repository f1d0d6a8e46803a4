"""Coherent states ``f⁻|z⟩ = z|z⟩`` for κ > 0.

Coefficients follow the recurrence ``c_{m+1} = z c_m / √F₊(m+1)`` with
``c_0 = 1`` and are carried as log-magnitudes so that large truncations do not
overflow. With ``a = 1/(2κ)`` and ``y = |z|²/(2κ)`` the unnormalized pair sums
``|c_{2n}|² + |c_{2n+1}|²`` are exactly ``Γ(a)`` times the n-th term of
``e_κ(y) = Σ (a + n + y) y^{2n} / (n! Γ(a + n + 1))``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln, rgamma

from ..algebra import structure_function_value
from ..exact import Scalar
from ..exceptions import DomainError
from ..fock import build_operator
from ..report import Report

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-24
MIN_TRUNCATION = 2
MAX_TRUNCATION = 200_000
SERIES_TOLERANCE = 1e-16


def _positive_kappa(kappa0: Scalar) -> Fraction:
    kappa0 = Fraction(kappa0)
    if kappa0 <= 0:
        raise DomainError("coherent states need κ > 0, got {}; use grassmann_coherent for κ = 0".format(kappa0))
    return kappa0


@dataclass(frozen=True)
class CoherentState:
    kappa: Fraction
    z: complex
    truncation: int
    coefficients: np.ndarray
    norm_sq: float
    log_raw_norm_sq: float

    def pair_weights(self) -> np.ndarray:
        """``|c_{2n}|² + |c_{2n+1}|²`` over the complete pairs of the truncation."""
        weights = np.abs(self.coefficients) ** 2
        pairs = self.truncation // 2
        return weights[0: 2 * pairs: 2] + weights[1: 2 * pairs: 2]

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa,
            "z": [self.z.real, self.z.imag],
            "D": self.truncation,
            "norm_sq": self.norm_sq,
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
        }


def _log_structure(kappa0: Fraction, n: int) -> float:
    return math.log(float(structure_function_value(kappa0, n)))


def _tail_ratio(kappa0: Fraction, m: int, abs_z_sq: float) -> float:
    # bound on |c_{j+1}|²/|c_j|² for every j >= m
    floor = min(structure_function_value(kappa0, m + 1), structure_function_value(kappa0, m + 2))
    return abs_z_sq / float(floor)


def coherent_state(kappa0: Scalar, z: complex, tol: float = DEFAULT_TOLERANCE) -> CoherentState:
    """Normalized coherent state, truncated once the discarded tail of ``Σ|c_n|²`` is below ``tol``."""
    kappa0 = _positive_kappa(kappa0)
    if tol <= 0:
        raise DomainError("tolerance must be positive, got {}".format(tol))
    z = complex(z)
    if z == 0:
        coefficients = np.zeros(MIN_TRUNCATION, dtype=complex)
        coefficients[0] = 1.0
        coefficients.setflags(write=False)
        return CoherentState(kappa0, z, MIN_TRUNCATION, coefficients, 1.0, 0.0)

    abs_z_sq = abs(z) ** 2
    log_z = math.log(abs(z))
    log_mag = [0.0]
    log_norm = 0.0
    m = 0
    while True:
        q = _tail_ratio(kappa0, m, abs_z_sq)
        if m + 1 >= MIN_TRUNCATION and q < 1:
            log_tail = 2 * log_mag[m] + math.log(q / (1 - q))
            if log_tail - log_norm < math.log(tol):
                break
        if m + 1 >= MAX_TRUNCATION:
            raise DomainError("coherent state for |z| = {} did not converge below D = {}".format(abs(z), MAX_TRUNCATION))
        log_mag.append(log_mag[m] + log_z - 0.5 * _log_structure(kappa0, m + 1))
        m += 1
        log_norm = float(np.logaddexp(log_norm, 2 * log_mag[m]))

    D = len(log_mag)
    phases = np.exp(1j * np.angle(z) * np.arange(D))
    coefficients = np.exp(np.array(log_mag) - log_norm / 2) * phases
    coefficients.setflags(write=False)
    norm_sq = float(np.sum(np.abs(coefficients) ** 2))
    logger.debug("coherent state κ=%s z=%s truncated at D=%d", kappa0, z, D)
    return CoherentState(kappa0, z, D, coefficients, norm_sq, log_norm)


def e_kappa_terms(kappa0: Scalar, x: float, count: int) -> np.ndarray:
    """The first ``count`` terms of the ``e_κ`` series."""
    kappa0 = _positive_kappa(kappa0)
    if x < 0:
        raise DomainError("e_κ is defined for x >= 0, got {}".format(x))
    a = 1 / (2 * float(kappa0))
    n = np.arange(count, dtype=float)
    if x == 0:
        terms = np.zeros(count)
        terms[0] = float(rgamma(a))
        return terms
    log_terms = np.log(a + n + x) + 2 * n * math.log(x) - gammaln(n + 1) - gammaln(a + n + 1)
    return np.exp(log_terms)


def e_kappa(kappa0: Scalar, x: float) -> float:
    """``e_κ(x)`` summed until the terms stop mattering at relative ``1e-16``."""
    kappa0 = _positive_kappa(kappa0)
    if x < 0:
        raise DomainError("e_κ is defined for x >= 0, got {}".format(x))
    a = 1 / (2 * float(kappa0))
    if x == 0:
        return float(rgamma(a))
    total = 0.0
    n = 0
    while True:
        log_term = math.log(a + n + x) + 2 * n * math.log(x) - gammaln(n + 1) - gammaln(a + n + 1)
        term = math.exp(log_term)
        total += term
        # terms decrease once n is past the peak near x
        if n > x and term <= SERIES_TOLERANCE * total:
            return total
        n += 1


def residual(state: CoherentState) -> float:
    """``‖f⁻|z⟩ − z|z⟩‖`` with the truncated ladder matrix."""
    lower = build_operator("f-", state.truncation, state.kappa)
    return float(np.linalg.norm(lower.apply(state.coefficients) - state.z * state.coefficients))


def closed_form_coefficients(kappa0: Scalar, z: complex, D: int) -> np.ndarray:
    """``z^n / √((2κ)^n ⌊n/2⌋! Γ(a + ⌈n/2⌉))`` up to the common ``√Γ(a)`` factor, unnormalized."""
    kappa0 = _positive_kappa(kappa0)
    z = complex(z)
    a = 1 / (2 * float(kappa0))
    n = np.arange(D)
    half = n // 2
    log_norm = n * math.log(2 * float(kappa0)) + gammaln(half + 1) + gammaln(a + n - half)
    if z == 0:
        out = np.zeros(D, dtype=complex)
        out[0] = math.exp(-0.5 * log_norm[0])
        return out
    return np.exp(n * math.log(abs(z)) - 0.5 * log_norm) * np.exp(1j * np.angle(z) * n)


def recurrence_check(state: CoherentState, tol: float = 1e-12) -> Report:
    """Even/odd step relations and proportionality to the closed form."""
    c = state.coefficients
    k = float(state.kappa)
    errors = []
    for m in range(state.truncation - 1):
        n = m // 2
        factor = math.sqrt(1 + 2 * k * n) if m % 2 == 0 else math.sqrt(2 * k * (n + 1))
        errors.append(abs(state.z * c[m] - factor * c[m + 1]))
    closed = closed_form_coefficients(state.kappa, state.z, state.truncation)
    closed = closed / np.linalg.norm(closed)
    closed_error = float(np.max(np.abs(closed - c)))
    step_error = max(errors) if errors else 0.0
    return Report(
        "coherent_recurrence[κ={}]".format(state.kappa),
        step_error <= tol and closed_error <= tol,
        {"step_error": step_error, "closed_form_error": closed_error},
    )


def normalization_check(state: CoherentState, tol: float = 1e-12) -> Report:
    """Unnormalized pair sums against ``Γ(a)`` times the ``e_κ`` terms, and the total against ``e_κ``."""
    a = 1 / (2 * float(state.kappa))
    y = abs(state.z) ** 2 / (2 * float(state.kappa))
    pair_sums = state.pair_weights() * math.exp(state.log_raw_norm_sq - gammaln(a))
    terms = e_kappa_terms(state.kappa, y, len(pair_sums))
    scale = max(float(np.max(terms)), 1e-300)
    term_error = float(np.max(np.abs(pair_sums - terms))) / scale
    total = e_kappa(state.kappa, y)
    total_error = abs(math.exp(state.log_raw_norm_sq - gammaln(a)) - total) / total
    norm_error = abs(state.norm_sq - 1)
    return Report(
        "coherent_normalization[κ={}]".format(state.kappa),
        term_error <= tol and norm_error <= tol and total_error <= max(tol, 1e-10),
        {"term_error": term_error, "norm_error": norm_error, "total_error": total_error, "e_kappa": total},
    )


def coherent_diagnostics(kappa0: Scalar, z: complex, tol: float = DEFAULT_TOLERANCE) -> Report:
    state = coherent_state(kappa0, z, tol)
    res = residual(state)
    report = Report.aggregate(
        "coherent[κ={} z={}]".format(state.kappa, z),
        [
            Report("eigen_residual", res <= 1e-10, {"residual": res}),
            recurrence_check(state),
            normalization_check(state),
        ],
        kappa=state.kappa,
        z=state.z,
        D=state.truncation,
        residual=res,
        norm_error=abs(state.norm_sq - 1),
    )
    return report
