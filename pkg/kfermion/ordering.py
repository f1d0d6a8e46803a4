"""Normal ordering of powers of ``f⁺f⁻``: κ-deformed Stirling and Bell operators.

The expansion ``(f⁺f⁻)^r = Σ_k (f⁺)^k S(r,k,N) (f⁻)^k`` is not unique once the
coefficients depend on N. The tables here come from one fixed scheme: multiply
on the left by ``f⁺f⁻`` and push ``f⁻`` through ``(f⁺)^k`` with the reordering
identity, which gives

    S(r+1,k,N) = (-1)^(k-1) S(r,k-1,N+1) + h_k(N+k-1) S(r,k,N)

Any table, whatever its origin, is judged by the diagonal identity checked in
:func:`wick_verify`; that check is written against ``F₊(n)`` values only and
never goes through the rewriting engine.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .algebra import (
    LOWER,
    RAISE,
    NormalForm,
    bosonize,
    operators_equal,
    projector,
    reorder_remainder,
    word_normalize,
)
from .exact import KAPPA_RING, KPoly, NSigmaPoly, kpoly
from .exceptions import DomainError
from .report import Report

logger = logging.getLogger(__name__)

MIDDLE_CONVENTION = "middle: (f+)^k S(r,k,N) (f-)^k"
PRINTED_TABLE_ROWS = 4
KAPPA0_BELL_ORDERS = 12


@dataclass(frozen=True)
class StirlingTable:
    r: int
    entries: dict[int, NSigmaPoly]
    source: str = "wick-recurrence"

    def entry(self, k: int) -> NSigmaPoly:
        return self.entries.get(k, NSigmaPoly.zero())

    def bell(self) -> NSigmaPoly:
        total = NSigmaPoly.zero()
        for k in range(1, self.r + 1):
            total = total + self.entry(k)
        return total

    def specialize(self, kappa0: Fraction) -> "StirlingTable":
        return StirlingTable(self.r, {k: c.specialize(kappa0) for k, c in self.entries.items()}, self.source)

    def as_normal_form(self) -> NormalForm:
        return NormalForm({(k, k): c for k, c in self.entries.items()})

    def to_json(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "source": self.source,
            "convention": MIDDLE_CONVENTION,
            "entries": {str(k): c.to_json() for k, c in sorted(self.entries.items())},
        }


def _check_order(r: int) -> None:
    if r < 1:
        raise DomainError("order r must be at least 1, got {}".format(r))


@lru_cache(maxsize=None)
def _wick_rows(r: int) -> tuple[NSigmaPoly, ...]:
    if r == 1:
        return (NSigmaPoly.one(),)
    previous = _wick_rows(r - 1)
    rows = []
    for k in range(1, r + 1):
        value = NSigmaPoly.zero()
        if k >= 2:
            value = value + (-1) ** (k - 1) * previous[k - 2].shift(1)
        if k <= r - 1:
            value = value + reorder_remainder(k).shift(k - 1) * previous[k - 1]
        rows.append(value)
    return tuple(rows)


@lru_cache(maxsize=None)
def _printed_recurrence_rows(r: int) -> tuple[NSigmaPoly, ...]:
    if r == 1:
        return (NSigmaPoly.one(),)
    previous = _printed_recurrence_rows(r - 1)
    rows = []
    for k in range(1, r + 1):
        sign = (-1) ** (k - 1)
        value = NSigmaPoly.zero()
        if k >= 2:
            value = value + sign * previous[k - 2].shift(1)
        if k <= r - 1:
            value = value + sign * reorder_remainder(k) * previous[k - 1]
        rows.append(value)
    return tuple(rows)


def stirling(r: int) -> StirlingTable:
    """κ-deformed Stirling operators of the second kind, symbolic in κ."""
    _check_order(r)
    return StirlingTable(r, dict(enumerate(_wick_rows(r), start=1)))


def stirling_printed_recurrence(r: int) -> StirlingTable:
    """Table from the recurrence as printed: extra ``(-1)^(k-1)`` on the second term, no argument shift.

    Kept for the audit only.
    """
    _check_order(r)
    return StirlingTable(r, dict(enumerate(_printed_recurrence_rows(r), start=1)), "printed-recurrence")


def bell(r: int) -> NSigmaPoly:
    return stirling(r).bell()


def bell_pattern_kappa0(r: int) -> Fraction:
    """Closed ordinary-fermion Bell value: period three in r."""
    _check_order(r)
    if r % 3 == 0:
        return Fraction((-1) ** r)
    if r % 3 == 1:
        return Fraction((-1) ** (r + 1))
    return Fraction(0)


def bell_limit_kappa0(r: int) -> Fraction:
    """``B_r`` at κ = 0; it no longer depends on N."""
    limit = bell(r).specialize(Fraction(0))
    return limit.constant_value()


def _structure_kpoly(n: int) -> KPoly:
    # κn on even levels, 1 + κ(n-1) on odd ones
    return kpoly([0, n]) if n % 2 == 0 else kpoly([1, n - 1])


def wick_verify(table: StirlingTable, n_max: int) -> Report:
    """Check ``F₊(n)^r = Σ_k [Π_{j<k} F₊(n-j)] S(r,k,n-k)`` for ``n = 0..n_max``, symbolically in κ."""
    r = table.r
    if n_max < r:
        raise DomainError("n_max must be at least r = {}, got {}".format(r, n_max))
    failures: list[dict[str, Any]] = []
    for n in range(n_max + 1):
        lhs = _structure_kpoly(n) ** r
        rhs = KAPPA_RING.zero
        ladder = KAPPA_RING.one
        for k in range(1, min(r, n) + 1):
            ladder = ladder * _structure_kpoly(n - k + 1)
            rhs += ladder * table.entry(k).at(n - k)
        if lhs != rhs:
            failures.append({"n": n, "lhs": str(lhs.as_expr()), "rhs": str(rhs.as_expr())})
    if failures:
        logger.info("%s table r=%d fails the diagonal identity at n=%s", table.source, r, [f["n"] for f in failures])
    return Report(
        "wick[{} r={}]".format(table.source, r),
        not failures,
        {"r": r, "n_max": n_max, "source": table.source, "failures": failures},
    )


def kappa0_limit_check(r_max: int = 12) -> Report:
    """The diagonal-identity tables and the printed recurrence coincide once κ = 0."""
    _check_order(r_max)
    mismatches = [
        r for r in range(1, r_max + 1)
        if stirling(r).specialize(Fraction(0)).entries != stirling_printed_recurrence(r).specialize(Fraction(0)).entries
    ]
    return Report("kappa0_limit", not mismatches, {"r_max": r_max, "mismatches": mismatches})


def stirling_expansion_check(r: int) -> Report:
    """``Σ_k (f⁺)^k S(r,k) (f⁻)^k`` against the rewritten ``(f⁺f⁻)^r``."""
    table = stirling(r)
    word = word_normalize([RAISE, LOWER] * r)
    return Report("stirling_expansion[r={}]".format(r), operators_equal(table.as_normal_form(), word), {"r": r})


def printed_stirling_table(r: int) -> StirlingTable:
    """Stirling rows exactly as tabulated for ``r <= 4``."""
    _check_order(r)
    if r > PRINTED_TABLE_ROWS:
        raise DomainError("printed tables stop at r = {}".format(PRINTED_TABLE_ROWS))
    kappa, N = NSigmaPoly.kappa(), NSigmaPoly.number()
    g = 1 + 2 * kappa * N
    rows = {
        1: {1: NSigmaPoly.one()},
        2: {1: g, 2: NSigmaPoly(-1)},
        3: {1: g ** 2, 2: -1 - 2 * kappa * N, 3: NSigmaPoly(1)},
        4: {
            1: g ** 3,
            2: -(1 - 2 * kappa + 4 * kappa * kappa) - 4 * kappa * (1 + kappa) * N - 4 * kappa * kappa * N * N,
            3: -4 * kappa,
            4: NSigmaPoly(-1),
        },
    }
    return StirlingTable(r, rows[r], "printed-table")


def printed_bell(r: int) -> NSigmaPoly:
    _check_order(r)
    if r > PRINTED_TABLE_ROWS:
        raise DomainError("printed tables stop at r = {}".format(PRINTED_TABLE_ROWS))
    kappa, N = NSigmaPoly.kappa(), NSigmaPoly.number()
    rows = {
        1: NSigmaPoly.one(),
        2: 2 * kappa * N,
        3: 1 + 2 * kappa * N + 4 * kappa * kappa * N * N,
        4: -(1 + 2 * kappa + 4 * kappa * kappa)
        + 2 * kappa * (1 - 2 * kappa) * N
        + 8 * kappa * kappa * N * N
        + 8 * kappa ** 3 * N ** 3,
    }
    return rows[r]


def printed_bosonized_structure() -> NSigmaPoly:
    """``F(N) = κ²N(N-1) + κ(κ-1)N - κ(κ-1)Π₁`` as printed."""
    kappa, N = NSigmaPoly.kappa(), NSigmaPoly.number()
    return kappa * kappa * N * (N - 1) + kappa * (kappa - 1) * N - kappa * (kappa - 1) * projector("odd")


@dataclass(frozen=True)
class DiscrepancyEntry:
    label: str
    printed: NSigmaPoly
    computed: NSigmaPoly
    recurrence: NSigmaPoly | None = None

    @property
    def agree(self) -> bool:
        return self.printed == self.computed

    @property
    def verdict(self) -> str:
        return "agree" if self.agree else "disagree"

    def to_json(self) -> dict[str, Any]:
        payload = {
            "label": self.label,
            "printed": str(self.printed),
            "computed": str(self.computed),
            "verdict": self.verdict,
        }
        if self.recurrence is not None:
            payload["printed_recurrence"] = str(self.recurrence)
            payload["printed_recurrence_verdict"] = "agree" if self.recurrence == self.printed else "disagree"
        return payload


@dataclass
class DiscrepancyReport:
    convention: str
    entries: list[DiscrepancyEntry] = field(default_factory=list)
    printed_table_checks: list[Report] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def entry(self, label: str) -> DiscrepancyEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def verdicts(self) -> dict[str, str]:
        return {e.label: e.verdict for e in self.entries}

    def to_json(self) -> dict[str, Any]:
        return {
            "convention": self.convention,
            "entries": [e.to_json() for e in self.entries],
            "printed_table_wick_checks": [r.to_json() for r in self.printed_table_checks],
            "notes": list(self.notes),
        }


def compare_with_printed(r_max: int = PRINTED_TABLE_ROWS) -> DiscrepancyReport:
    """Entry-by-entry verdicts between the printed tables and the computed ones."""
    if not 1 <= r_max <= PRINTED_TABLE_ROWS:
        raise DomainError("r_max must lie in [1, {}], got {}".format(PRINTED_TABLE_ROWS, r_max))
    report = DiscrepancyReport(MIDDLE_CONVENTION)
    for r in range(1, r_max + 1):
        printed = printed_stirling_table(r)
        computed = stirling(r)
        recurrence = stirling_printed_recurrence(r)
        for k in range(1, r + 1):
            report.entries.append(
                DiscrepancyEntry("S({},{})".format(r, k), printed.entry(k), computed.entry(k), recurrence.entry(k))
            )
        report.printed_table_checks.append(wick_verify(printed, max(r, 8)))
    for r in range(1, r_max + 1):
        report.entries.append(
            DiscrepancyEntry("B_{}".format(r), printed_bell(r), bell(r), stirling_printed_recurrence(r).bell())
        )
    report.entries.append(
        DiscrepancyEntry("bosonized F(N)", printed_bosonized_structure(), bosonize().F_of_N)
    )
    for r in range(1, KAPPA0_BELL_ORDERS + 1):
        report.entries.append(
            DiscrepancyEntry(
                "B_{}(κ=0)".format(r),
                NSigmaPoly(bell_pattern_kappa0(r)),
                NSigmaPoly(bell_limit_kappa0(r)),
                stirling_printed_recurrence(r).bell().specialize(Fraction(0)),
            )
        )

    report.notes.append("the last factor S(r,k,c) of the printed recurrence is read as S(r,k,N)")
    report.notes.append(
        "computed tables satisfy the diagonal identity; printed rows that disagree are reported, not corrected"
    )
    report.notes.append(
        "the ordinary-fermion Bell list (B_1 = I, B_2 = 0, then period three) is listed for r <= {}".format(KAPPA0_BELL_ORDERS)
    )
    report.notes.append(
        "bosonized F(N) is taken as the exact product F+(N)F+(N-1); the printed form flips the sign of the κ(κ-1) terms"
    )
    for e in report.entries:
        if not e.agree:
            logger.warning("printed %s = %s disagrees with computed %s", e.label, e.printed, e.computed)
    return report
