import math

import numpy as np
import pytest

from branchon.exceptions import DomainError
from branchon.models.spectral import BasisSpec
from branchon.services.quantum.basis import (
    basis_hamiltonian,
    ho_basis_function,
    ho_basis_table,
    matrix_element_r,
    radial_moment_matrix,
    zero_order_diagonal,
)
from branchon.services.quantum.spectrum import basis_eigenvalues


@pytest.mark.parametrize("omega", [0.06, 1.0, 24.0])
def test_basis_is_orthonormal(omega):
    overlap = radial_moment_matrix(30, omega, 1.0, 0)
    np.testing.assert_allclose(overlap, np.eye(30), atol=1e-10)


def test_large_basis_is_orthonormal():
    # старшие функции живут при u = ωr² > 1500, где e^(-u/2) уже не представим
    overlap = radial_moment_matrix(400, 1.0, 1.0, 0)
    np.testing.assert_allclose(overlap, np.eye(400), atol=1e-9)


def test_ground_state_mean_radius(problem_factory):
    # ⟨χ_0|r|χ_0⟩ = (3√π/4) ω^(-1/2) при ℓ = 1/2
    assert matrix_element_r(0, 0, problem_factory(s=6.0)) == pytest.approx(3.0 * math.sqrt(math.pi) / 4.0, rel=1e-12)
    assert matrix_element_r(0, 0, problem_factory(s=3.0)) == pytest.approx(
        3.0 * math.sqrt(math.pi) / 4.0 / math.sqrt(2.0), rel=1e-12
    )
    with pytest.raises(DomainError):
        matrix_element_r(-1, 0, problem_factory())


def test_moment_matrix_shape():
    moments = radial_moment_matrix(40, 1.0, 1.0, 1)
    np.testing.assert_array_equal(moments, moments.T)
    assert np.all(np.diag(moments) > 0)
    with pytest.raises(ValueError):
        moments[0, 0] = 1.0


@pytest.mark.parametrize("n", [0, 2, 5])
def test_basis_functions_solve_radial_oscillator(n, problem_factory):
    # -χ'' + ℓ(ℓ+1)/r² χ + ω² r² χ = ω(4n+2ℓ+3) χ
    problem = problem_factory(s=6.0)
    h = 1e-3
    r = np.linspace(0.5, 3.0, 26)
    values = [ho_basis_function(n, problem, r + j * h) for j in (-2, -1, 0, 1, 2)]
    second = (-values[0] + 16.0 * values[1] - 30.0 * values[2] + 16.0 * values[3] - values[4]) / (12.0 * h * h)
    chi = values[2]
    residual = -second + (0.75 / r**2 + r**2) * chi - zero_order_diagonal(n + 1, 1.0, 0.5)[n] * chi
    assert np.max(np.abs(residual)) <= 1e-6


def test_basis_function_on_scalar_and_array(problem_factory):
    problem = problem_factory(s=6.0)
    value = ho_basis_function(1, problem, 1.2)
    assert isinstance(value, float)
    values = ho_basis_function(1, problem, np.array([0.4, 1.2]))
    assert values.shape == (2,)
    assert values[1] == value


def test_table_rejects_bad_omega():
    with pytest.raises(DomainError):
        ho_basis_table(3, 0.0, 1.0, np.array([1.0]))


def test_unperturbed_hamiltonian_is_diagonal(problem_factory):
    problem = problem_factory(s=6.0, linear_term=False)
    np.testing.assert_array_equal(basis_hamiltonian(problem, 20), np.diag(zero_order_diagonal(20, 1.0, 0.5)))


def test_rayleigh_ritz_is_monotone(problem_factory):
    problem = problem_factory(s=6.0)
    lowest = [basis_eigenvalues(problem, 1, size)[0] for size in (10, 20, 40, 80)]
    assert all(b <= a + 1e-10 for a, b in zip(lowest, lowest[1:], strict=False))


def test_mismatched_basis_frequency(problem_factory):
    problem = problem_factory(s=6.0, linear_term=False, basis=BasisSpec(size=60, omega=0.7))
    np.testing.assert_allclose(basis_eigenvalues(problem, 3), [4.0, 8.0, 12.0], rtol=1e-8)
