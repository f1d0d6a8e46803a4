"""Truncated Fock-space representations.

Two independent evaluators live here. :func:`build_operator` gives dense float
matrices with ``⟨n-1|f⁻|n⟩ = √F₊(n)`` and ``f⁺ = (f⁻)ᵀ``. :func:`exact_action`
and :func:`word_action` give exact amplitudes without ever taking a square
root: every path from ``|n⟩`` to ``|m⟩`` crosses the edges between ``min(n, m)``
and ``max(n, m)`` an odd number of times and every other edge an even number of
times, so all contributions to one target share the radical
``√Π_{(min, max]} F₊``.
"""
from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Literal, Sequence

import numpy as np

from .algebra import (
    LOWER,
    RAISE,
    Generator,
    NormalForm,
    parse_word,
    structure_function_value,
    word_normalize,
)
from .exact import Scalar, check_kappa
from .exceptions import DomainError
from .report import Report

logger = logging.getLogger(__name__)

SpectrumKind = Literal["plus_minus", "minus_plus"]

_SPECTRUM_ALIASES = {
    "plus_minus": "plus_minus",
    "f+f-": "plus_minus",
    "minus_plus": "minus_plus",
    "f-f+": "minus_plus",
}

MATRIX_TOLERANCE = 1e-12


def _structure_product(kappa0: Fraction, lo: int, hi: int) -> Fraction:
    """``Π F₊(j)`` for ``lo < j <= hi``."""
    out = Fraction(1)
    for j in range(lo + 1, hi + 1):
        out *= structure_function_value(kappa0, j)
    return out


@dataclass(frozen=True)
class FockMatrix:
    label: str
    matrix: np.ndarray
    kappa: Fraction

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "FockMatrix") -> "FockMatrix":
        if self.dimension != other.dimension:
            raise DomainError("dimension mismatch {} vs {}".format(self.dimension, other.dimension))
        return _frozen(self.label + other.label, self.matrix @ other.matrix, self.kappa)

    def __add__(self, other: "FockMatrix") -> "FockMatrix":
        return _frozen("({}+{})".format(self.label, other.label), self.matrix + other.matrix, self.kappa)

    def __sub__(self, other: "FockMatrix") -> "FockMatrix":
        return _frozen("({}-{})".format(self.label, other.label), self.matrix - other.matrix, self.kappa)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def to_json(self) -> dict[str, Any]:
        return {"label": self.label, "kappa": self.kappa, "dimension": self.dimension, "matrix": self.matrix}


def _frozen(label: str, matrix: np.ndarray, kappa0: Fraction) -> FockMatrix:
    matrix = np.array(matrix, dtype=float)
    matrix.setflags(write=False)
    return FockMatrix(label, matrix, kappa0)


def ladder_amplitudes(kappa0: Scalar, D: int) -> np.ndarray:
    """``√F₊(n)`` for ``n = 1..D-1``."""
    kappa0 = check_kappa(kappa0)
    values = [float(structure_function_value(kappa0, n)) for n in range(1, D)]
    return np.sqrt(np.array(values, dtype=float))


def build_operator(which: str | Sequence[Generator], D: int, kappa0: Scalar) -> FockMatrix:
    """Dense matrix of a generator, ``N``, a projector or a generator word on ``|0⟩..|D-1⟩``.

    ``which`` is one of ``"f+"``, ``"f-"``, ``"N"``, ``"P0"``, ``"P1"`` or a
    word such as ``"f-f+f+"``; words are multiplied as truncated matrices.
    """
    kappa0 = check_kappa(kappa0)
    if D < 2:
        raise DomainError("truncation dimension must be at least 2, got {}".format(D))
    levels = np.arange(D)
    if which == "N":
        return _frozen("N", np.diag(levels.astype(float)), kappa0)
    if which == "P0":
        return _frozen("P0", np.diag((levels % 2 == 0).astype(float)), kappa0)
    if which == "P1":
        return _frozen("P1", np.diag((levels % 2 == 1).astype(float)), kappa0)

    lower = np.diag(ladder_amplitudes(kappa0, D), k=1)
    word = parse_word(which)
    if not word:
        return _frozen("I", np.eye(D), kappa0)
    matrix = np.eye(D)
    for g in word:
        matrix = matrix @ (lower.T if g is RAISE else lower)
    label = "".join(str(g) for g in word)
    logger.debug("built %s at κ=%s with D=%d", label, kappa0, D)
    return _frozen(label, matrix, kappa0)


@dataclass(frozen=True)
class ActionCoefficient:
    """``rational_part × √(Π F₊ over radicand_span)`` at a fixed κ.

    ``radicand_span`` is the half-open interval ``(lo, hi]``.
    """
    rational_part: Fraction
    radicand_span: tuple[int, int]
    radicand: Fraction

    def __add__(self, other: "ActionCoefficient") -> "ActionCoefficient":
        if self.radicand_span != other.radicand_span:
            raise DomainError("cannot add amplitudes over {} and {}".format(self.radicand_span, other.radicand_span))
        return ActionCoefficient(self.rational_part + other.rational_part, self.radicand_span, self.radicand)

    def squared(self) -> Fraction:
        return self.rational_part ** 2 * self.radicand

    def is_zero(self) -> bool:
        return self.rational_part == 0 or self.radicand == 0

    def __float__(self) -> float:
        return float(self.rational_part) * math.sqrt(self.radicand)

    def to_json(self) -> dict[str, Any]:
        return {"rational": self.rational_part, "radicand_span": list(self.radicand_span), "radicand": self.radicand}


def _amplitude(kappa0: Fraction, n: int, m: int, rational: Fraction) -> ActionCoefficient:
    lo, hi = min(n, m), max(n, m)
    return ActionCoefficient(rational, (lo, hi), _structure_product(kappa0, lo, hi))


def exact_action(nf: NormalForm, n: int, kappa0: Scalar) -> dict[int, ActionCoefficient]:
    """Exact coefficients of ``nf|n⟩``, keyed by target level; zero amplitudes are dropped."""
    kappa0 = check_kappa(kappa0)
    if n < 0:
        raise DomainError("Fock level must be non-negative, got {}".format(n))
    out: dict[int, ActionCoefficient] = {}
    for (a, b), c in nf.terms.items():
        if b > n:
            continue
        base = n - b
        m = base + a
        # the overlap (base, min(n, m)] is crossed twice
        rational = c.evaluate(kappa0, base) * _structure_product(kappa0, base, min(n, m))
        term = _amplitude(kappa0, n, m, rational)
        out[m] = out[m] + term if m in out else term
    return {m: coeff for m, coeff in sorted(out.items()) if not coeff.is_zero()}


def word_action(word: str | Iterable[Generator], n: int, kappa0: Scalar) -> dict[int, ActionCoefficient]:
    """Exact action of a generator word on ``|n⟩``, applied right to left without rewriting."""
    kappa0 = check_kappa(kappa0)
    if n < 0:
        raise DomainError("Fock level must be non-negative, got {}".format(n))
    crossings: Counter[int] = Counter()
    level = n
    for g in reversed(list(parse_word(word) if isinstance(word, str) else word)):
        if g is LOWER:
            if level == 0:
                return {}
            crossings[level] += 1
            level -= 1
        else:
            level += 1
            crossings[level] += 1
    rational = Fraction(1)
    for j, count in crossings.items():
        rational *= structure_function_value(kappa0, j) ** (count // 2)
    coeff = _amplitude(kappa0, n, level, rational)
    return {} if coeff.is_zero() else {level: coeff}


def action_matrix(nf: NormalForm, D: int, kappa0: Scalar) -> np.ndarray:
    """Float matrix of ``nf`` assembled column by column from :func:`exact_action`, targets beyond ``D`` cut."""
    out = np.zeros((D, D))
    for n in range(D):
        for m, coeff in exact_action(nf, n, kappa0).items():
            if m < D:
                out[m, n] = float(coeff)
    return out


def exact_matrix_agreement(samples: int = 200, seed: int = 0, rtol: float = 1e-10) -> Report:
    """Exact actions of rewritten words and of the raw words against float matrix products.

    Words have up to five letters, κ is drawn from small rationals and n from
    ``0..8``; the truncation leaves room for every intermediate level.
    """
    rng = random.Random(seed)
    failures = []
    for i in range(samples):
        word = [rng.choice((RAISE, LOWER)) for _ in range(rng.randint(1, 5))]
        n = rng.randint(0, 8)
        kappa0 = Fraction(rng.randint(1, 12), rng.randint(1, 6))
        D = n + len(word) + 2
        column = build_operator(word, D, kappa0).matrix[:, n]
        expected = {m: float(v) for m, v in enumerate(column) if v != 0}
        for source, action in (
            ("normal_form", exact_action(word_normalize(word), n, kappa0)),
            ("word", word_action(word, n, kappa0)),
        ):
            got = {m: float(c) for m, c in action.items()}
            if set(got) != set(expected) or any(
                not math.isclose(got[m], expected[m], rel_tol=rtol, abs_tol=0.0) for m in got
            ):
                failures.append({"sample": i, "source": source, "word": "".join(map(str, word)), "n": n, "kappa": kappa0})
    return Report("exact_vs_matrix", not failures, {"samples": samples, "failures": failures})


def algebraic_spectrum(which: str, kappa0: Scalar, levels: int) -> list[Fraction]:
    """Eigenvalues of ``f⁺f⁻`` (``F₊(n)``) or ``f⁻f⁺`` (``F₊(n+1)``) in Fock order."""
    kappa0 = check_kappa(kappa0)
    try:
        kind = _SPECTRUM_ALIASES[which]
    except KeyError:
        raise DomainError("operator must be one of {}, got {!r}".format(sorted(_SPECTRUM_ALIASES), which)) from None
    if levels < 1:
        raise DomainError("levels must be at least 1, got {}".format(levels))
    offset = 0 if kind == "plus_minus" else 1
    return [structure_function_value(kappa0, n + offset) for n in range(levels)]


def gap_analysis(spectrum: Iterable[Fraction]) -> list[Fraction]:
    ordered = sorted(spectrum)
    return [b - a for a, b in zip(ordered, ordered[1:])]


def _diagonal_spectrum(word: list[Generator], kappa0: Fraction, levels: int) -> list[Fraction]:
    nf = word_normalize(word)
    values = []
    for n in range(levels):
        action = exact_action(nf, n, kappa0)
        # diagonal amplitudes carry an empty radical
        values.append(action[n].rational_part if n in action else Fraction(0))
    return values


def isospectral_check(kappa0: Scalar, D: int) -> Report:
    """``σ(f⁻f⁺) = σ(f⁺f⁻) \\ {0}`` on the levels clear of the truncation edge.

    κ = 0 with ``D = 2`` is the ordinary fermion: both spectra are ``{0, 1}`` as
    multisets.
    """
    kappa0 = check_kappa(kappa0)
    fermion = kappa0 == 0 and D == 2
    if not fermion and (D < 4 or D % 2):
        raise DomainError("isospectral check needs an even D >= 4, got {}".format(D))
    if fermion:
        plus = _diagonal_spectrum([RAISE, LOWER], kappa0, D)
        minus = _diagonal_spectrum([LOWER, RAISE], kappa0, D)
        passed = Counter(plus) == Counter(minus)
    else:
        plus = _diagonal_spectrum([RAISE, LOWER], kappa0, D - 1)
        minus = _diagonal_spectrum([LOWER, RAISE], kappa0, D - 2)
        trimmed = Counter(plus)
        trimmed[Fraction(0)] -= 1
        passed = +trimmed == Counter(minus) and trimmed[Fraction(0)] >= 0
    report = Report(
        "isospectral[κ={} D={}]".format(kappa0, D),
        passed,
        {"kappa": kappa0, "D": D, "plus_minus": plus, "minus_plus": minus},
    )
    if fermion:
        report.notes.append("ordinary fermion: both spectra are {0, 1}")
    return report


def adjointness_check(kappa0: Scalar, D: int) -> Report:
    raise_m, lower_m = build_operator("f+", D, kappa0), build_operator("f-", D, kappa0)
    return Report("adjointness[κ={} D={}]".format(Fraction(kappa0), D), bool(np.array_equal(raise_m.matrix, lower_m.matrix.T)))


def anticommutator_matrix_check(kappa0: Scalar, D: int, tol: float = MATRIX_TOLERANCE) -> Report:
    """``f⁻f⁺ + f⁺f⁻ = I + 2κN`` on the first ``D-1`` levels."""
    kappa0 = check_kappa(kappa0)
    total = build_operator("f-f+", D, kappa0).matrix + build_operator("f+f-", D, kappa0).matrix
    expected = np.diag(1 + 2 * float(kappa0) * np.arange(D))
    error = float(np.max(np.abs(total - expected)[: D - 1, : D - 1]))
    return Report("anticommutator_matrix[κ={} D={}]".format(kappa0, D), error <= tol, {"max_error": error})


def bosonized_relations_check(kappa0: Scalar, D: int, tol: float = MATRIX_TOLERANCE) -> Report:
    """Quadratic ladder relations away from the last two levels.

    ``[X⁻, X⁺] = 2κ(2κN + 1)`` for ``X± = (f±)²``; with ``a± = X±/√(2κ)`` also
    ``[a⁻, a⁺] = 2κN + 1`` and ``[N, a±] = ±2a±``.
    """
    kappa0 = check_kappa(kappa0)
    if kappa0 == 0:
        raise DomainError("bosonized ladder operators need κ > 0")
    k = float(kappa0)
    x_plus = build_operator("f+f+", D, kappa0).matrix
    x_minus = build_operator("f-f-", D, kappa0).matrix
    number = build_operator("N", D, kappa0).matrix
    levels = np.arange(D)
    interior = D - 2

    def _error(lhs: np.ndarray, rhs: np.ndarray) -> float:
        return float(np.max(np.abs(lhs - rhs)[:interior, :interior]))

    a_plus, a_minus = x_plus / math.sqrt(2 * k), x_minus / math.sqrt(2 * k)
    errors = {
        "X_commutator": _error(x_minus @ x_plus - x_plus @ x_minus, np.diag(2 * k * (2 * k * levels + 1))),
        "a_commutator": _error(a_minus @ a_plus - a_plus @ a_minus, np.diag(2 * k * levels + 1)),
        "N_a_plus": _error(number @ a_plus - a_plus @ number, 2 * a_plus),
        "N_a_minus": _error(number @ a_minus - a_minus @ number, -2 * a_minus),
    }
    return Report(
        "bosonized_relations[κ={} D={}]".format(kappa0, D),
        all(e <= tol for e in errors.values()),
        {"max_errors": errors},
    )
