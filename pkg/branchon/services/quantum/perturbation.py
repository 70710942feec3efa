"""
Ряд Рэлея–Шрёдингера для радиальной задачи: H = H₀ + gV, g = s^(-3/2), V = -branch·24·r.
Невозмущённая задача - радиальный осциллятор с ω = 6√λ/s, поэтому H₀ диагонален в базисе χ_n.
"""

import dataclasses
import math
from typing import Literal

import numpy as np

from branchon.exceptions import BasisTooSmall, DomainError
from branchon.models.params import Branch, FloatArray
from branchon.models.perturbation import EtaDecomposition, EtaReport, PerturbationSeries
from branchon.models.spectral import RadialProblem
from branchon.services.quantum.basis import radial_moment_matrix, zero_order_diagonal
from branchon.services.quantum.spectrum import eigenvalues
from core.executor import run_jobs
from core.logger import logger

MAX_ORDER = 8
MIN_BASIS = 16
MAX_BASIS = 1024
BASIS_TOL = 1e-8


def _coefficients(n: int, order: int, problem: RadialProblem, size: int) -> FloatArray:
    omega = problem.omega
    ell = problem.transform.ell
    unperturbed = zero_order_diagonal(size, omega, ell)
    strength = -problem.branch.as_real() * 24.0 if problem.linear_term else 0.0
    V = strength * radial_moment_matrix(size, omega, problem.transform.alpha, 1)

    gaps = unperturbed[n] - unperturbed
    gaps[n] = 1.0
    resolvent = 1.0 / gaps
    resolvent[n] = 0.0

    energies = np.zeros(order + 1)
    energies[0] = unperturbed[n]
    states = [np.zeros(size)]
    states[0][n] = 1.0
    for k in range(1, order + 1):
        coupled = V @ states[k - 1]
        energies[k] = coupled[n]
        source = coupled - sum(energies[j] * states[k - j] for j in range(1, k + 1))
        states.append(resolvent * source)
    return energies


def rspt_coefficients(n: int, order: int, problem: RadialProblem) -> PerturbationSeries:
    """
    Коэффициенты E_0..E_M (промежуточная нормировка ⟨χ_n|ψ⟩ = 1) в усечённом базисе.
    Базис удваивается от max(4(n+M), 16), пока члены g^m E_m не перестанут меняться.

    Raises:
        DomainError: n < 0 или порядок вне [0, 8].
        BasisTooSmall: до размера 1024 члены ряда не стабилизировались.
    """
    if n < 0:
        raise DomainError(f"level index must be >= 0, got {n}.")
    if not 0 <= order <= MAX_ORDER:
        raise DomainError(f"order must lie in [0, {MAX_ORDER}], got {order}.")

    g = problem.s**-1.5
    powers = g ** np.arange(order + 1)
    size = max(4 * (n + order), MIN_BASIS)
    current = _coefficients(n, order, problem, size)
    while True:
        if 2 * size > MAX_BASIS:
            raise BasisTooSmall(
                f"Perturbation coefficients for n={n}, M={order} did not settle up to basis size {size}."
            )
        doubled = _coefficients(n, order, problem, 2 * size)
        terms, doubled_terms = current * powers, doubled * powers
        floor = 1e-12 * abs(doubled_terms[0])
        limit = BASIS_TOL * np.maximum(np.abs(doubled_terms), floor)
        size *= 2
        current = doubled
        if np.all(np.abs(doubled_terms - terms) <= limit):
            break
        logger.debug(f"RSPT n={n} M={order}: doubling basis to {2 * size}")

    series = PerturbationSeries.from_coefficients(n, problem.branch, g, current, s=problem.s, basis_size=size)
    return dataclasses.replace(series, radius_estimate=radius_estimate(series))


def eta_series(n: int, order: int, problem: RadialProblem) -> float:
    """η = (s/12)·Σ_{m<=M} g^m E_m; нулевой член берётся как (√λ/2)(4n+2ℓ+3)."""
    series = rspt_coefficients(n, order, problem)
    corrections = float(np.sum(series.terms[1:]))
    return problem.zero_order_eta(n) + problem.s / 12.0 * corrections


def radius_estimate(series: PerturbationSeries) -> float | None:
    """
    Оценка радиуса сходимости по g: 1/limsup|E_{m+1}/E_m| по верхней половине отношений.
    Если соседние коэффициенты часто нулевые, берутся отношения через шаг |E_{m+2}/E_m|^(1/2).
    None - если отношений меньше двух.
    """
    c = np.abs(np.asarray(series.coefficients, dtype=np.float64))
    if np.count_nonzero(c) < 2:
        return None

    ratios = [c[m + 1] / c[m] for m in range(len(c) - 1) if c[m] != 0.0 and c[m + 1] != 0.0]
    if len(ratios) < 2:
        ratios = [math.sqrt(c[m + 2] / c[m]) for m in range(len(c) - 2) if c[m] != 0.0 and c[m + 2] != 0.0]
    if len(ratios) < 2:
        return None

    limsup = max(ratios[len(ratios) // 2 :])
    if limsup == 0.0:
        return None
    return 1.0 / limsup


def compare_with_diagonalization(n: int, order: int, problem: RadialProblem) -> EtaReport:
    """Сравнение η из ряда порядка M с η прямой диагонализации того же уровня."""
    from_series = eta_series(n, order, problem)
    from_diag = float(eigenvalues(problem, n + 1).eta[n])
    report = EtaReport(
        n=n,
        branch=problem.branch,
        eta_series=from_series,
        eta_diag=from_diag,
        abs_diff=abs(from_series - from_diag),
        order_used=order,
    )
    logger.info(
        f"η n={n} {problem.branch.value}: series(M={order}) {from_series:.10g}, diag {from_diag:.10g}, "
        f"diff {report.abs_diff:.3e}"
    )
    return report


def eta_decomposition(
    n: int,
    order: int,
    problem: RadialProblem,
    source: Literal["series", "diagonalization"] = "series",
) -> EtaDecomposition:
    """
    η± для обеих ветвей и их разложение на нечётную часть (η₋ - η₊)/2
    и общий чётный сдвиг (η₊ + η₋)/2 - η⁰.
    """

    def level(branch: Branch) -> float:
        branched = problem.with_branch(branch)
        if source == "series":
            return eta_series(n, order, branched)
        return float(eigenvalues(branched, n + 1).eta[n])

    eta_plus, eta_minus = run_jobs(level, [Branch.PLUS, Branch.MINUS])
    return EtaDecomposition(
        n=n,
        order=order,
        source=source,
        eta_zero=problem.zero_order_eta(n),
        eta_plus=eta_plus,
        eta_minus=eta_minus,
    )
