"""
Базис радиального осциллятора
χ_n(r) = N r^(ℓ+1) e^(-ω r²/2) L_n^(ℓ+1/2)(ω r²), N² = 2 ω^(α+1) n!/Γ(n+α+1),
его матричные элементы и матрица гамильтониана радиальной задачи в этом базисе.
"""

from functools import lru_cache
from typing import overload

import numpy as np
from scipy import special

from branchon.exceptions import DomainError, QuadratureNotConverged
from branchon.models.params import FloatArray
from branchon.models.spectral import RadialProblem
from branchon.services.quantum.laguerre import orthonormal_laguerre_table
from core.logger import logger

QUADRATURE_TOL = 1e-10


def ho_basis_table(n_max: int, omega: float, alpha: float, r: FloatArray) -> FloatArray:
    """χ_0..χ_{n_max} в точках r >= 0; форма (n_max+1, len(r))."""
    if not omega > 0.0:
        raise DomainError(f"basis omega must be positive, got {omega}.")
    r = np.asarray(r, dtype=np.float64)
    u = omega * r * r
    weight = np.sqrt(2.0) * omega**0.25 * u**0.25
    return weight * orthonormal_laguerre_table(n_max, alpha, u)


@overload
def ho_basis_function(n: int, problem: RadialProblem, r: float) -> float: ...
@overload
def ho_basis_function(n: int, problem: RadialProblem, r: FloatArray) -> FloatArray: ...
def ho_basis_function(n: int, problem: RadialProblem, r: float | FloatArray) -> float | FloatArray:
    """χ_n(r) для частоты базиса задачи (по умолчанию ω = 6√λ/s)."""
    points = np.atleast_1d(np.asarray(r, dtype=np.float64))
    values = ho_basis_table(n, problem.basis_omega, problem.transform.alpha, points)[n]
    return float(values[0]) if np.ndim(r) == 0 else values


def _cutoff_radius(size: int, omega: float, alpha: float) -> float:
    # За точкой поворота старшей функции (u_t) хвосты убывают как функция Эйри
    u_turn = 4.0 * (size - 1) + 2.0 * alpha + 2.0
    u_cut = u_turn + 30.0 * u_turn ** (1.0 / 3.0) + 30.0
    return float(np.sqrt(u_cut / omega))


def _gauss_moments(size: int, omega: float, alpha: float, power: int, nodes: int) -> FloatArray:
    r_cut = _cutoff_radius(size, omega, alpha)
    x, w = special.roots_legendre(nodes)
    r = 0.5 * r_cut * (x + 1.0)
    w = 0.5 * r_cut * w
    table = ho_basis_table(size - 1, omega, alpha, r)
    moments = (table * (w * r**power)) @ table.T
    return 0.5 * (moments + moments.T)


@lru_cache(maxsize=64)
def radial_moment_matrix(size: int, omega: float, alpha: float, power: int) -> FloatArray:
    """
    ⟨χ_m| r^power |χ_n⟩, m, n < size, квадратурой Гаусса–Лежандра по r на [0, r_cut].
    Число узлов 4·size + 200; результат сверяется с удвоенным числом узлов.

    Raises:
        QuadratureNotConverged: удвоение узлов сдвинуло элементы сильнее 1e-10.
    """
    nodes = 4 * size + 200
    coarse = _gauss_moments(size, omega, alpha, power, nodes)
    fine = _gauss_moments(size, omega, alpha, power, 2 * nodes)
    shift = float(np.max(np.abs(fine - coarse)))
    scale = max(1.0, float(np.max(np.abs(fine))))
    if shift > QUADRATURE_TOL * scale:
        raise QuadratureNotConverged(
            f"⟨χ|r^{power}|χ⟩ moved by {shift:.3e} when quadrature nodes doubled to {2 * nodes} (basis size {size})."
        )
    if shift > 0.1 * QUADRATURE_TOL * scale:
        logger.warning(f"Quadrature for r^{power} (size {size}) is close to its tolerance: shift {shift:.3e}")
    fine.flags.writeable = False
    return fine


def matrix_element_r(m: int, n: int, problem: RadialProblem) -> float:
    """⟨χ_m| r |χ_n⟩."""
    if m < 0 or n < 0:
        raise DomainError(f"basis indices must be >= 0, got ({m}, {n}).")
    size = max(m, n) + 1
    return float(radial_moment_matrix(size, problem.basis_omega, problem.transform.alpha, 1)[m, n])


def zero_order_diagonal(size: int, omega: float, ell: float) -> FloatArray:
    """ω(4n + 2ℓ + 3), n = 0..size-1."""
    return omega * (4.0 * np.arange(size) + 2.0 * ell + 3.0)


def basis_hamiltonian(problem: RadialProblem, size: int) -> FloatArray:
    """
    Матрица радиального гамильтониана в базисе частоты ω_b:
    diag(ω_b(4n+2ℓ+3)) + (ω² - ω_b²)⟨r²⟩ + c_lin⟨r⟩.
    """
    omega_b = problem.basis_omega
    alpha = problem.transform.alpha
    H = np.diag(zero_order_diagonal(size, omega_b, problem.transform.ell))
    stiffness = 0.0 if problem.basis.omega is None else problem.harmonic_coefficient - omega_b**2
    if stiffness != 0.0:
        H = H + stiffness * radial_moment_matrix(size, omega_b, alpha, 2)
    if problem.linear_coefficient != 0.0:
        H = H + problem.linear_coefficient * radial_moment_matrix(size, omega_b, alpha, 1)
    return H
