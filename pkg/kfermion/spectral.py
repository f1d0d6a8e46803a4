"""Calogero-Sutherland spectra on a half-line grid.

``H = -d²/dx² + V`` on ``(0, L)`` with Dirichlet walls, second-order central
differences on ``x_j = j h``, ``h = L/(M+1)``. Low eigenvalues come from
Sturm-count bisection on the symmetric tridiagonal matrix and are
Richardson-extrapolated over a ladder of three or more grids, with the
convergence order read off the ladder itself. The attractive ``1/x²`` term of
V1 converges at about half order, so a fixed second-order step is not enough.

Both potentials are radial oscillators ``κ²x²/4 + (a² - 1/4)/x² + c``, whose
spectrum is ``κ(2n + 1 ± a) + c``. The Dirichlet wall at 0 picks the ``+a``
(regular) branch.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Sequence

import numpy as np

from .exact import Scalar
from .exceptions import BisectionError, DomainError
from .fock import algebraic_spectrum
from .report import Report

logger = logging.getLogger(__name__)

Family = Literal["V0", "V1", "free"]
Branch = Literal["regular", "irregular"]

DEFAULT_GRIDS = (2000, 4000, 8000)
DEFAULT_LENGTH = 40.0
DEFAULT_LEVELS = 5
MAX_LEVELS = 8
MIN_POINTS = 100
RELATIVE_TOLERANCE = 5e-3
BISECTION_TOLERANCE = 1e-10
HARMONIC_GRIDS = (199, 399, 799)
HARMONIC_LENGTH = 20.0
MIN_ORDER = 0.25
MAX_ORDER = 4.0


@dataclass(frozen=True)
class PotentialSpec:
    family: Family
    kappa: float = 1.0

    def __post_init__(self) -> None:
        if self.family not in ("V0", "V1", "free"):
            raise DomainError("unknown potential family {!r}".format(self.family))
        if self.family != "free" and not self.kappa > 0:
            raise DomainError("κ must be positive, got {}".format(self.kappa))

    @property
    def inverse_square(self) -> float:
        k = self.kappa
        if self.family == "V0":
            return (1 - k * k) / (4 * k * k)
        if self.family == "V1":
            return -(1 - k) * (3 * k - 1) / (4 * k * k)
        return 0.0

    @property
    def offset(self) -> float:
        if self.family == "V0":
            return -(self.kappa - 0.5)
        if self.family == "V1":
            return 0.5
        return 0.0


def potential_value(potential: PotentialSpec, x: float | np.ndarray) -> float | np.ndarray:
    """``V0 = κ²x²/4 + (1-κ²)/(4κ²)x⁻² - (κ - 1/2)``, ``V1 = κ²x²/4 - (1-κ)(3κ-1)/(4κ²)x⁻² + 1/2``."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0):
        raise DomainError("potentials are defined for x > 0")
    if potential.family == "free":
        values = np.zeros_like(xs)
    else:
        values = potential.kappa ** 2 * xs ** 2 / 4 + potential.inverse_square / xs ** 2 + potential.offset
    return float(values) if np.ndim(x) == 0 else values


@dataclass(frozen=True)
class GridSpec:
    length: float
    points: int
    scheme: str = "central-2"
    boundary: str = "dirichlet"

    def __post_init__(self) -> None:
        if self.points < MIN_POINTS:
            raise DomainError("grid needs at least {} interior points, got {}".format(MIN_POINTS, self.points))
        if not self.length > 0:
            raise DomainError("domain length must be positive, got {}".format(self.length))

    @property
    def spacing(self) -> float:
        return self.length / (self.points + 1)

    def nodes(self) -> np.ndarray:
        return self.spacing * np.arange(1, self.points + 1)


@dataclass(frozen=True)
class Tridiagonal:
    diagonal: np.ndarray
    off_diagonal: np.ndarray

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)

    def gershgorin(self) -> tuple[float, float]:
        radius = np.zeros(self.size)
        radius[:-1] += np.abs(self.off_diagonal)
        radius[1:] += np.abs(self.off_diagonal)
        return float(np.min(self.diagonal - radius)), float(np.max(self.diagonal + radius))


def discretize(potential: PotentialSpec, grid: GridSpec) -> Tridiagonal:
    h = grid.spacing
    diagonal = 2 / h ** 2 + potential_value(potential, grid.nodes())
    off_diagonal = np.full(grid.points - 1, -1 / h ** 2)
    return Tridiagonal(diagonal, off_diagonal)


def sturm_count(T: Tridiagonal, shift: float) -> int:
    """Number of eigenvalues below ``shift``: negative pivots of ``LDLᵀ`` of ``T - shift``."""
    diagonal = T.diagonal.tolist()
    off_sq = (T.off_diagonal ** 2).tolist()
    pivmin = np.finfo(float).tiny * max(max(off_sq, default=0.0), 1.0)
    count = 0
    d = diagonal[0] - shift
    for i in range(len(diagonal)):
        if i:
            d = diagonal[i] - shift - off_sq[i - 1] / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0:
            count += 1
    return count


def eigenvalues_sturm(T: Tridiagonal, count: int, tol: float = BISECTION_TOLERANCE) -> np.ndarray:
    """The ``count`` smallest eigenvalues to absolute tolerance ``tol``.

    Every count evaluated while bisecting one level tightens the brackets of
    all the others.
    """
    if not 1 <= count <= T.size:
        raise DomainError("count must lie in [1, {}], got {}".format(T.size, count))
    lo, hi = T.gershgorin()
    margin = 2 * np.finfo(float).eps * max(abs(lo), abs(hi), 1.0)
    lo, hi = lo - margin, hi + margin
    if sturm_count(T, lo) != 0 or sturm_count(T, hi) != T.size:
        raise BisectionError("Gershgorin interval [{}, {}] does not bracket the spectrum".format(lo, hi))

    lower = [lo] * count
    upper = [hi] * count
    evaluations = 0
    for k in range(count):
        while upper[k] - lower[k] > tol:
            mid = 0.5 * (lower[k] + upper[k])
            if mid in (lower[k], upper[k]):
                break
            below = sturm_count(T, mid)
            evaluations += 1
            for j in range(count):
                if j < below:
                    upper[j] = min(upper[j], mid)
                else:
                    lower[j] = max(lower[j], mid)
    logger.debug("bisection used %d Sturm counts for %d levels of a size-%d matrix", evaluations, count, T.size)
    return 0.5 * (np.array(lower) + np.array(upper))


def observed_order(
    coarse: np.ndarray | float, medium: np.ndarray | float, fine: np.ndarray | float, ratio: float = 2.0
) -> np.ndarray:
    """Convergence order from three grids, ``(E_c - E_m)/(E_m - E_f) ≈ r^p``.

    Clamped to ``[MIN_ORDER, MAX_ORDER]``; levels whose differences vanish fall back to 2.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.log(np.abs((np.asarray(coarse) - medium) / (np.asarray(medium) - fine))) / np.log(ratio)
    return np.clip(np.where(np.isfinite(p), p, 2.0), MIN_ORDER, MAX_ORDER)


def richardson(
    coarse: np.ndarray | float, fine: np.ndarray | float, ratio: float = 2.0, order: np.ndarray | float = 2.0
) -> np.ndarray | float:
    """Extrapolation ``E_f + (E_f - E_c)/(r^p - 1)`` with ``r = h_c/h_f``; ``p`` may differ per level."""
    return fine + (fine - coarse) / (ratio ** order - 1)


def branch_targets(potential: PotentialSpec, levels: int, branch: Branch = "regular") -> list[float]:
    """Closed-form radial-oscillator levels ``κ(2n + 1 ± a) + c`` with ``a = √(g + 1/4)``."""
    if potential.family == "free":
        raise DomainError("the free family has no oscillator branches")
    a = math.sqrt(potential.inverse_square + 0.25)
    sign = 1 if branch == "regular" else -1
    return [potential.kappa * (2 * n + 1 + sign * a) + potential.offset for n in range(levels)]


def exact_branch_targets(family: Family, kappa0: Scalar, levels: int, branch: Branch = "regular") -> list[Fraction]:
    """:func:`branch_targets` in exact arithmetic; ``a`` is rational for rational κ."""
    kappa0 = Fraction(kappa0)
    if kappa0 <= 0:
        raise DomainError("κ must be positive, got {}".format(kappa0))
    if family == "V0":
        a, offset = 1 / (2 * kappa0), Fraction(1, 2) - kappa0
    elif family == "V1":
        a, offset = abs(2 * kappa0 - 1) / (2 * kappa0), Fraction(1, 2)
    else:
        raise DomainError("unknown potential family {!r}".format(family))
    sign = 1 if branch == "regular" else -1
    return [kappa0 * (2 * n + 1 + sign * a) + offset for n in range(levels)]


def analytic_branch_check(kappa0: Scalar, levels: int = DEFAULT_LEVELS) -> Report:
    """Both ``1/x²`` branches of V0 together give the ``f⁺f⁻`` spectrum: ``2κn + 1`` and ``2κn``."""
    kappa0 = Fraction(kappa0)
    regular = exact_branch_targets("V0", kappa0, levels, "regular")
    irregular = exact_branch_targets("V0", kappa0, levels, "irregular")
    algebraic = algebraic_spectrum("plus_minus", kappa0, 2 * levels)
    passed = sorted(regular + irregular) == sorted(algebraic)
    return Report(
        "branch_union[κ={}]".format(kappa0),
        passed,
        {"regular": regular, "irregular": irregular, "algebraic": algebraic},
        ["only the regular branch is selected by the Dirichlet wall and computed on the grid"],
    )


def _solve_grid(job: tuple[PotentialSpec, GridSpec, int, float]) -> np.ndarray:
    potential, grid, levels, tol = job
    return eigenvalues_sturm(discretize(potential, grid), levels, tol)


@dataclass
class ConvergenceReport:
    family: Family
    kappa: float
    length: float
    grids: list[int]
    spacings: list[float]
    values: list[np.ndarray]
    extrapolated: np.ndarray
    targets: list[float]
    relative_errors: np.ndarray
    observed_orders: np.ndarray
    tolerance: float = RELATIVE_TOLERANCE
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(np.all(self.relative_errors <= self.tolerance))

    def to_report(self) -> Report:
        return Report(
            "calogero[{} κ={}]".format(self.family, self.kappa),
            self.passed,
            {
                "family": self.family,
                "kappa": self.kappa,
                "length": self.length,
                "grids": self.grids,
                "spacings": self.spacings,
                "per_grid": self.values,
                "extrapolated": self.extrapolated,
                "targets": self.targets,
                "relative_errors": self.relative_errors,
                "observed_orders": self.observed_orders,
            },
            list(self.notes),
        )

    def to_json(self) -> dict[str, Any]:
        return self.to_report().to_json()


def cs_verify(
    family: Family,
    kappa: float,
    levels: int = DEFAULT_LEVELS,
    grids: Sequence[int] = DEFAULT_GRIDS,
    length: float = DEFAULT_LENGTH,
    tol: float = BISECTION_TOLERANCE,
    parallel: bool = False,
) -> ConvergenceReport:
    """Grid eigenvalues of V0 or V1 against the regular-branch levels, ``2κn + 1`` for κ < 1/2."""
    potential = PotentialSpec(family, float(kappa))
    if family == "free":
        raise DomainError("cs_verify needs V0 or V1")
    if not 1 <= levels <= MAX_LEVELS:
        raise DomainError("levels must lie in [1, {}], got {}".format(MAX_LEVELS, levels))
    grids = list(grids)
    if len(grids) < 3 or any(b <= a for a, b in zip(grids, grids[1:])):
        raise DomainError("refinement ladder needs at least 3 increasing grids, got {}".format(grids))
    notes = []
    if potential.kappa >= 0.5:
        logger.warning("κ = %s >= 1/2: the Dirichlet wall is not guaranteed to select the regular branch", potential.kappa)
        notes.append("κ >= 1/2: branch selection by the Dirichlet wall is not guaranteed")

    specs = [GridSpec(length, m) for m in grids]
    jobs = [(potential, g, levels, tol) for g in specs]
    logger.info("solving %s at κ=%s on grids %s", family, potential.kappa, grids)
    if parallel:
        with ProcessPoolExecutor() as pool:
            values = list(pool.map(_solve_grid, jobs))
    else:
        values = [_solve_grid(job) for job in jobs]

    spacings = [g.spacing for g in specs]
    ratio = spacings[-2] / spacings[-1]
    orders = observed_order(values[-3], values[-2], values[-1], ratio)
    extrapolated = richardson(values[-2], values[-1], ratio, orders)
    logger.debug("observed orders for %s: %s", family, orders)
    targets = branch_targets(potential, levels, "regular")
    relative = np.abs(extrapolated - np.array(targets)) / np.abs(np.array(targets))
    notes.append("Dirichlet branch computed numerically; the irregular branch is checked in closed form")
    return ConvergenceReport(
        family, potential.kappa, length, grids, spacings, values, extrapolated, targets, relative, orders, notes=notes
    )


def partner_isospectrality(v0: ConvergenceReport, v1: ConvergenceReport, tol: float = RELATIVE_TOLERANCE) -> Report:
    """Level-by-level V0/V1 agreement measured in units of the level spacing ``2κ``."""
    if v0.kappa != v1.kappa:
        raise DomainError("partner comparison needs equal κ, got {} and {}".format(v0.kappa, v1.kappa))
    spacing = 2 * v0.kappa
    levels = min(len(v0.extrapolated), len(v1.extrapolated))
    deviation = np.abs(v0.extrapolated[:levels] - v1.extrapolated[:levels]) / spacing
    return Report(
        "partners[κ={}]".format(v0.kappa),
        bool(np.all(deviation <= tol)),
        {"deviation_in_spacings": deviation},
    )


def harmonic_convergence_ratio(
    grids: Sequence[int] = HARMONIC_GRIDS, length: float = HARMONIC_LENGTH, levels: int = 3
) -> Report:
    """Error ratios per mesh halving on V0 at κ = 1 (pure oscillator, ``E = 2n + 1``); second order gives about 4."""
    potential = PotentialSpec("V0", 1.0)
    exact = np.array([2 * n + 1 for n in range(levels)], dtype=float)
    errors = [np.abs(_solve_grid((potential, GridSpec(length, m), levels, 1e-12)) - exact) for m in grids]
    ratios = [errors[i] / errors[i + 1] for i in range(len(errors) - 1)]
    passed = all(bool(np.all((r >= 3) & (r <= 5))) for r in ratios)
    return Report("harmonic_convergence", passed, {"grids": list(grids), "errors": errors, "ratios": ratios})
