from unittest.mock import patch

import numpy as np
import pytest
from pydantic import ValidationError

from branchon.exceptions import DomainError, GridTooCoarse, NotConverged
from branchon.models.params import Branch
from branchon.models.spectral import GridSpec
from branchon.services.quantum.grid import build_radial_operator, potential
from branchon.services.quantum.spectrum import eigenvalues


def test_radial_operator_layout(problem_factory):
    problem = problem_factory(grid=GridSpec(n_points=200, r_max=10.0))
    operator = build_radial_operator(problem)
    assert len(operator) == 200
    assert operator.h == pytest.approx(10.0 / 201)
    np.testing.assert_allclose(operator.off_diagonal, -1.0 / operator.h**2)
    assert len(operator.diagonal) == len(operator.r) == 200
    np.testing.assert_allclose(operator.r, operator.h * np.arange(1, 201))


def test_potential_terms(problem_factory):
    # s = 6, λ = 1, ℓ = 1/2: 3/4 + r² - 24 r / 6^(3/2) при r = 1
    assert potential(problem_factory(), 1.0) == pytest.approx(1.75 - 24.0 / 6.0**1.5)
    assert potential(problem_factory(branch=Branch.MINUS), 1.0) == pytest.approx(1.75 + 24.0 / 6.0**1.5)
    assert problem_factory(linear_term=False).linear_coefficient == 0.0


def test_coarse_grid_is_rejected(problem_factory):
    with pytest.raises(GridTooCoarse):
        build_radial_operator(problem_factory(grid=GridSpec(n_points=50)))


@pytest.mark.parametrize("method", ["grid", "basis"])
def test_unperturbed_levels(method, problem_factory):
    spectrum = eigenvalues(problem_factory(method=method, linear_term=False), 5)
    np.testing.assert_allclose(spectrum.eta, [2.0, 4.0, 6.0, 8.0, 10.0], rtol=1e-6)
    assert spectrum.method == method
    assert np.all(spectrum.convergence_estimate <= 1e-4)


@pytest.mark.parametrize("branch", [Branch.PLUS, Branch.MINUS])
def test_eta_does_not_depend_on_s(branch, problem_factory):
    small = eigenvalues(problem_factory(s=1.0, branch=branch), 6).eta
    large = eigenvalues(problem_factory(s=100.0, branch=branch), 6).eta
    np.testing.assert_allclose(small, large, rtol=1e-6)


def test_grid_and_basis_agree(problem_factory):
    grid = eigenvalues(problem_factory(method="grid"), 6).eta
    basis = eigenvalues(problem_factory(method="basis"), 6).eta
    np.testing.assert_allclose(grid, basis, rtol=1e-5)


def test_branch_ordering(problem_factory):
    plus = eigenvalues(problem_factory(branch=Branch.PLUS), 4)
    minus = eigenvalues(problem_factory(branch=Branch.MINUS), 4)
    # Plus: притягивающий линейный член, уровни ниже невозмущённых; Minus - выше
    assert np.all(plus.eta < [2.0, 4.0, 6.0, 8.0])
    assert np.all(minus.eta > [2.0, 4.0, 6.0, 8.0])
    assert plus.branch is Branch.PLUS


def test_unsettled_refinement(problem_factory):
    with patch(
        "branchon.services.quantum.spectrum.basis_eigenvalues",
        side_effect=[np.array([4.0]), np.array([4.1])],
    ):
        with pytest.raises(NotConverged):
            eigenvalues(problem_factory(), 1)


@pytest.mark.parametrize("count", [0, 21])
def test_level_count_limits(count, problem_factory):
    with pytest.raises(DomainError):
        eigenvalues(problem_factory(), count)


def test_negative_s_is_not_quantizable(problem_factory):
    with pytest.raises(ValidationError):
        problem_factory(s=-1.0)
