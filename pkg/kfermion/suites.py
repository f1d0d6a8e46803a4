"""Verification suites behind ``verify --suite``.

Each suite returns one aggregated :class:`~kfermion.report.Report`; ``all`` nests
the others. Suites are plain module-level functions so they can be shipped to
worker processes.
"""
from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

from . import algebra, fock, ordering, spectral
from .analytic import bargmann, coherent, grassmann
from .exceptions import DomainError, GrassmannParityError
from .report import Report

logger = logging.getLogger(__name__)

REORDER_RANGE = range(1, 9)
WICK_ORDERS = range(1, 7)
WICK_N_MAX = 40
BELL_ORDERS = range(1, 13)
KAPPA0_LIMIT_ORDER = 12
SAMPLE_KAPPAS = (Fraction(1, 3), Fraction(2))
CALOGERO_KAPPAS = (1 / 3, 2 / 5)
COHERENT_SAMPLES = 20

# printed-table entries expected to agree / disagree with the computed tables
AUDIT_AGREE = ("S(1,1)", "S(2,1)", "S(2,2)", "S(3,1)")
AUDIT_DISAGREE = ("S(3,2)", "S(3,3)", "S(4,2)", "S(4,3)", "S(4,4)", "bosonized F(N)")
AUDIT_KAPPA0_AGREE = tuple("B_{}(κ=0)".format(r) for r in range(1, ordering.KAPPA0_BELL_ORDERS + 1))


def algebra_suite(parallel: bool = False) -> Report:
    children = [
        algebra.anticommutator_check(),
        algebra.graded_commutator_check(),
        algebra.projector_check(),
        algebra.structure_recursion_check(200),
        algebra.bosonization_check(),
        algebra.confluence_check(6),
    ]
    children.extend(algebra.reorder_identity_check(n) for n in REORDER_RANGE)
    return Report.aggregate("algebra", children)


def fock_suite(parallel: bool = False) -> Report:
    children: list[Report] = [fock.exact_matrix_agreement()]
    for kappa0 in SAMPLE_KAPPAS:
        children.append(fock.isospectral_check(kappa0, 24))
        children.append(fock.adjointness_check(kappa0, 12))
        children.append(fock.anticommutator_matrix_check(kappa0, 12))
        children.append(fock.bosonized_relations_check(kappa0, 12))
    children.append(fock.isospectral_check(0, 2))

    kappa0 = Fraction(4, 5)
    gaps = fock.gap_analysis(fock.algebraic_spectrum("plus_minus", kappa0, 10))
    expected = [Fraction(1) if i % 2 == 0 else 2 * kappa0 - 1 for i in range(9)]
    children.append(Report("gaps[κ=4/5]", gaps == expected, {"gaps": gaps}))
    return Report.aggregate("fock", children)


def _audit_reproduced() -> Report:
    audit = ordering.compare_with_printed()
    verdicts = audit.verdicts()
    passed = all(verdicts[label] == "agree" for label in AUDIT_AGREE + AUDIT_KAPPA0_AGREE) and all(
        verdicts[label] == "disagree" for label in AUDIT_DISAGREE
    )
    return Report("audit", passed, {"verdicts": verdicts}, list(audit.notes))


def ordering_suite(parallel: bool = False) -> Report:
    children = [ordering.wick_verify(ordering.stirling(r), WICK_N_MAX) for r in WICK_ORDERS]
    children.extend(ordering.stirling_expansion_check(r) for r in range(1, 5))
    children.append(ordering.kappa0_limit_check(KAPPA0_LIMIT_ORDER))
    bell_failures = [r for r in BELL_ORDERS if ordering.bell_limit_kappa0(r) != ordering.bell_pattern_kappa0(r)]
    children.append(Report("bell_kappa0_pattern", not bell_failures, {"failures": bell_failures}))
    children.append(_audit_reproduced())
    return Report.aggregate("ordering", children)


def analytic_suite(parallel: bool = False, seed: int = 0) -> Report:
    rng = random.Random(seed)
    children: list[Report] = []
    for _ in range(COHERENT_SAMPLES):
        kappa0 = Fraction(rng.randint(1, 30), 10)
        z = complex(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4))
        children.append(coherent.coherent_diagnostics(kappa0, z))
    for kappa0 in (Fraction(1, 3), Fraction(1, 2), Fraction(2)):
        children.append(bargmann.faithfulness_check(kappa0, 60))
        children.append(bargmann.anticommutator_identities_check(kappa0, 30))
        children.append(bargmann.intertwining_check(kappa0))

    theta = grassmann.GrassmannElement.generator()
    children.append(grassmann.grassmann_coherent(theta))
    children.append(grassmann.grassmann_coherent(grassmann.GrassmannElement()))
    try:
        grassmann.grassmann_coherent(grassmann.GrassmannElement(1, 1))
        rejected = False
    except GrassmannParityError:
        rejected = True
    children.append(Report("grassmann_even_label_rejected", rejected))
    return Report.aggregate("analytic", children)


def spectral_suite(parallel: bool = False) -> Report:
    children: list[Report] = [spectral.harmonic_convergence_ratio()]
    for kappa in CALOGERO_KAPPAS:
        v0 = spectral.cs_verify("V0", kappa, parallel=parallel)
        v1 = spectral.cs_verify("V1", kappa, parallel=parallel)
        children.extend([v0.to_report(), v1.to_report(), spectral.partner_isospectrality(v0, v1)])
        children.append(spectral.analytic_branch_check(Fraction(kappa).limit_denominator(1000)))
    return Report.aggregate("spectral", children)


SUITES: dict[str, Callable[..., Report]] = {
    "algebra": algebra_suite,
    "fock": fock_suite,
    "ordering": ordering_suite,
    "analytic": analytic_suite,
    "spectral": spectral_suite,
}


def run_suite(name: str, parallel: bool = False) -> Report:
    """Run one suite, or every suite for ``"all"``; ``parallel`` farms whole suites out to processes."""
    if name == "all":
        names = list(SUITES)
        if parallel:
            with ProcessPoolExecutor() as pool:
                children = list(pool.map(_run_named, names))
        else:
            children = [_run_named(n) for n in names]
        report = Report.aggregate("all", children)
    elif name in SUITES:
        report = SUITES[name](parallel=parallel)
    else:
        raise DomainError("unknown suite {!r}; choose from {}".format(name, ["all"] + sorted(SUITES)))
    logger.info("suite %s: %s", name, "pass" if report.ok() else "FAIL")
    return report


def _run_named(name: str) -> Report:
    return SUITES[name]()
