import math

import numpy as np
from scipy.linalg import eigh_tridiagonal

from branchon.exceptions import DomainError, GridTooCoarse, NotConverged
from branchon.models.params import FloatArray
from branchon.models.spectral import RadialProblem, RadialStates, TridiagonalOperator
from core.logger import logger

MIN_GRID_POINTS = 100
R_MAX_CHECK_TOL = 1e-4


def potential(problem: RadialProblem, r: float | FloatArray) -> FloatArray:
    """ℓ(ℓ+1)/r² + (36λ/s²) r² + c_lin r."""
    r = np.asarray(r, dtype=np.float64)
    return problem.transform.centrifugal / (r * r) + problem.harmonic_coefficient * r * r + problem.linear_coefficient * r


def default_r_max(problem: RadialProblem, count: int) -> float:
    """1.5 точки поворота самого высокого запрошенного уровня плюс запас 5/√ω на хвост."""
    omega2 = problem.harmonic_coefficient
    c = problem.linear_coefficient
    e_top = problem.zero_order_energy(count - 1)
    e_max = e_top + abs(c) * math.sqrt(e_top / omega2)
    r_turn = (-c + math.sqrt(c * c + 4.0 * omega2 * e_max)) / (2.0 * omega2)
    return 1.5 * r_turn + 5.0 / math.sqrt(problem.omega)


def build_radial_operator(
    problem: RadialProblem,
    *,
    n_points: int | None = None,
    r_max: float | None = None,
    count: int = 1,
) -> TridiagonalOperator:
    """
    Центральные разности второго порядка для -d²/dr² + V(r) на (0, r_max),
    условия Дирихле на обоих концах: h = r_max/(N+1), r_i = i·h.

    Raises:
        GridTooCoarse: меньше 100 внутренних узлов.
    """
    n = problem.grid.n_points if n_points is None else n_points
    if n < MIN_GRID_POINTS:
        raise GridTooCoarse(f"Radial grid needs at least {MIN_GRID_POINTS} points, got {n}.")
    if r_max is None:
        r_max = problem.grid.r_max if problem.grid.r_max is not None else default_r_max(problem, count)
    if not r_max > 0.0:
        raise DomainError(f"r_max must be positive, got {r_max}.")

    h = r_max / (n + 1)
    r = h * np.arange(1, n + 1, dtype=np.float64)
    diagonal = 2.0 / (h * h) + potential(problem, r)
    off_diagonal = np.full(n - 1, -1.0 / (h * h))
    return TridiagonalOperator(diagonal=diagonal, off_diagonal=off_diagonal, r=r, h=h)


def _lowest(operator: TridiagonalOperator, count: int) -> FloatArray:
    # Бисекция (stebz) по индексам нижних уровней
    return eigh_tridiagonal(
        operator.diagonal,
        operator.off_diagonal,
        eigvals_only=True,
        select="i",
        select_range=(0, count - 1),
        lapack_driver="stebz",
    )


def grid_eigenvalues(problem: RadialProblem, count: int) -> tuple[FloatArray, FloatArray]:
    """
    Нижние `count` уровней сеточным методом с одной экстраполяцией Ричардсона (N → 2N+1, h → h/2).
    Возвращает (E, относительная оценка сходимости).
    """
    n = problem.grid.n_points
    auto_r_max = problem.grid.r_max is None
    r_max = default_r_max(problem, count) if auto_r_max else problem.grid.r_max
    assert r_max is not None

    coarse = _lowest(build_radial_operator(problem, n_points=n, r_max=r_max), count)
    fine = _lowest(build_radial_operator(problem, n_points=2 * n + 1, r_max=r_max), count)
    extrapolated = (4.0 * fine - coarse) / 3.0
    convergence = np.abs(extrapolated - fine) / np.abs(extrapolated)

    if auto_r_max:
        # Тот же шаг h, вдвое больший интервал
        wide = _lowest(build_radial_operator(problem, n_points=2 * n + 1, r_max=2.0 * r_max), count)
        shift = float(np.max(np.abs(wide - coarse) / np.abs(coarse)))
        if shift > R_MAX_CHECK_TOL:
            raise NotConverged(f"r_max doubling check: levels moved by {shift:.3e} relative (r_max = {r_max:.6g}).")
        logger.debug(f"r_max = {r_max:.6g}: doubling shifts levels by {shift:.3e}")

    logger.debug(f"Grid levels (N={n}, r_max={r_max:.6g}): max Richardson estimate {np.max(convergence):.3e}")
    return extrapolated, convergence


def radial_eigenstates(problem: RadialProblem, count: int) -> RadialStates:
    """
    Нижние `count` собственных пар сеточного оператора (бисекция + обратные итерации).
    χ нормированы как Σ h χ² = 1, знак выбран так, что первый лепесток у начала координат положителен.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}.")
    operator = build_radial_operator(problem, count=count)
    energies, vectors = eigh_tridiagonal(
        operator.diagonal,
        operator.off_diagonal,
        select="i",
        select_range=(0, count - 1),
        lapack_driver="stebz",
    )
    chi = vectors.T / math.sqrt(operator.h)
    for row in chi:
        magnitude = np.abs(row)
        first = int(np.argmax(magnitude > 1e-8 * magnitude.max()))
        if row[first] < 0.0:
            row *= -1.0
    return RadialStates(E=energies, r=operator.r, chi=chi)
