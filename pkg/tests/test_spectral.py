from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from kfermion.exceptions import DomainError
from kfermion.spectral import (
    ConvergenceReport,
    GridSpec,
    PotentialSpec,
    analytic_branch_check,
    branch_targets,
    cs_verify,
    discretize,
    eigenvalues_sturm,
    exact_branch_targets,
    harmonic_convergence_ratio,
    observed_order,
    partner_isospectrality,
    potential_value,
    richardson,
    sturm_count,
)


def _reference(T, count):
    return eigh_tridiagonal(T.diagonal, T.off_diagonal, eigvals_only=True, select="i", select_range=(0, count - 1))


@pytest.mark.parametrize("family, kappa", [("V0", 1 / 3), ("V1", 0.4), ("free", 1.0)])
def test_bisection_matches_reference(family, kappa):
    T = discretize(PotentialSpec(family, kappa), GridSpec(40.0, 300))
    np.testing.assert_allclose(eigenvalues_sturm(T, 5), _reference(T, 5), rtol=0, atol=1e-8)


def test_sturm_count_brackets():
    T = discretize(PotentialSpec("V0", 0.5), GridSpec(20.0, 150))
    lo, hi = T.gershgorin()
    assert sturm_count(T, lo - 1) == 0
    assert sturm_count(T, hi + 1) == T.size
    values = _reference(T, 3)
    assert sturm_count(T, 0.5 * (values[1] + values[2])) == 2


def test_free_grid_spectrum():
    grid = GridSpec(1.0, 120)
    T = discretize(PotentialSpec("free"), grid)
    j = np.arange(1, 5)
    expected = 2 / grid.spacing ** 2 * (1 - np.cos(j * np.pi / (grid.points + 1)))
    np.testing.assert_allclose(eigenvalues_sturm(T, 4), expected, rtol=1e-9)


def test_eigenvalue_count_domain():
    T = discretize(PotentialSpec("free"), GridSpec(1.0, 100))
    with pytest.raises(DomainError):
        eigenvalues_sturm(T, 0)
    with pytest.raises(DomainError):
        eigenvalues_sturm(T, 101)


def test_potential_domain():
    potential = PotentialSpec("V0", 0.5)
    assert potential_value(potential, 2.0) == pytest.approx(0.25 + 0.75 / 4)
    with pytest.raises(DomainError):
        potential_value(potential, 0.0)
    with pytest.raises(DomainError):
        PotentialSpec("V2", 0.5)
    with pytest.raises(DomainError):
        PotentialSpec("V1", 0.0)


def test_grid_domain():
    assert GridSpec(10.0, 199).spacing == pytest.approx(0.05)
    with pytest.raises(DomainError):
        GridSpec(10.0, 50)
    with pytest.raises(DomainError):
        GridSpec(-1.0, 200)


def test_richardson_removes_second_order_error():
    exact, c = 3.0, 0.7
    coarse, fine = exact + c * 0.1 ** 2, exact + c * 0.05 ** 2
    assert richardson(coarse, fine, 2.0) == pytest.approx(exact)
    assert richardson(exact + c * 0.3 ** 2, exact + c * 0.1 ** 2, 3.0) == pytest.approx(exact)


def test_observed_order_recovers_half_order_ladder():
    exact, c = 3.0, 0.7
    coarse, medium, fine = (exact + c * h ** 0.5 for h in (0.4, 0.2, 0.1))
    order = observed_order(coarse, medium, fine, 2.0)
    assert order == pytest.approx(0.5)
    assert richardson(medium, fine, 2.0, order) == pytest.approx(exact)
    # the second-order step leaves most of the error in place
    assert abs(richardson(medium, fine, 2.0) - exact) > 0.1


def test_observed_order_clamped():
    values = [np.array([1.0, 2.0]) + np.array([1e-2, 0.0]) * k for k in (1.0, 2 ** -10, 2 ** -20)]
    orders = observed_order(*values, ratio=2.0)
    assert orders[0] == pytest.approx(4.0)
    assert orders[1] == pytest.approx(2.0)



@pytest.mark.parametrize("kappa0", [Fraction(1, 3), Fraction(2, 5)])
def test_closed_form_branches(kappa0):
    levels = 5
    for family in ("V0", "V1"):
        assert exact_branch_targets(family, kappa0, levels) == [2 * kappa0 * n + 1 for n in range(levels)]
    assert exact_branch_targets("V0", kappa0, levels, "irregular") == [2 * kappa0 * n for n in range(levels)]
    assert analytic_branch_check(kappa0).passed
    floats = branch_targets(PotentialSpec("V0", float(kappa0)), levels)
    np.testing.assert_allclose(floats, [float(v) for v in exact_branch_targets("V0", kappa0, levels)])


def test_branch_domain():
    with pytest.raises(DomainError):
        exact_branch_targets("V0", 0, 3)
    with pytest.raises(DomainError):
        branch_targets(PotentialSpec("free"), 3)


def test_harmonic_convergence_is_second_order():
    report = harmonic_convergence_ratio()
    assert report.passed, report.details["ratios"]


def test_small_ladder_close_to_targets():
    report = cs_verify("V0", 1 / 3, levels=3, grids=(400, 800, 1600))
    assert np.all(report.relative_errors < 1e-2)
    assert report.to_report().details["family"] == "V0"


def test_cs_verify_domain():
    with pytest.raises(DomainError):
        cs_verify("V0", 1 / 3, levels=0)
    with pytest.raises(DomainError):
        cs_verify("V0", 1 / 3, grids=(800, 400, 1600))
    with pytest.raises(DomainError):
        cs_verify("free", 1.0)


def test_partners_need_equal_kappa():
    def run(family, kappa, values):
        values = np.array(values)
        return ConvergenceReport(family, kappa, 40.0, [], [], [], values, list(values), np.zeros(2), np.zeros(2))

    assert partner_isospectrality(run("V0", 0.4, [1.0, 1.8]), run("V1", 0.4, [1.0, 1.8])).passed
    assert not partner_isospectrality(run("V0", 0.4, [1.0, 1.8]), run("V1", 0.4, [1.0, 1.9])).passed
    with pytest.raises(DomainError):
        partner_isospectrality(run("V0", 0.4, [1.0, 1.8]), run("V1", 0.3, [1.0, 1.6]))


@pytest.mark.slow
@pytest.mark.parametrize("kappa", [1 / 3, 2 / 5])
def test_calogero_acceptance(kappa):
    v0 = cs_verify("V0", kappa)
    v1 = cs_verify("V1", kappa)
    assert v0.passed, v0.relative_errors
    assert v1.passed, v1.relative_errors
    assert partner_isospectrality(v0, v1).passed


@pytest.mark.slow
def test_attractive_partner_extrapolates_with_observed_order():
    report = cs_verify("V1", 2 / 5)
    assert np.all((report.observed_orders > 0.3) & (report.observed_orders < 0.8)), report.observed_orders
    assert np.all(report.relative_errors < 5e-4), report.relative_errors
