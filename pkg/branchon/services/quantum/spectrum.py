import numpy as np
from scipy import linalg

from branchon.exceptions import DomainError, NotConverged
from branchon.models.params import FloatArray
from branchon.models.spectral import RadialProblem, Spectrum
from branchon.services.quantum.basis import basis_hamiltonian
from branchon.services.quantum.grid import grid_eigenvalues
from core.logger import logger

MAX_LEVELS = 20
REFINEMENT_TOL = 1e-4


def basis_eigenvalues(problem: RadialProblem, count: int, size: int | None = None) -> FloatArray:
    """Нижние `count` собственных значений матрицы гамильтониана в базисе размера `size`."""
    size = problem.basis.size if size is None else size
    if count > size:
        raise DomainError(f"Cannot extract {count} levels from a basis of size {size}.")
    H = basis_hamiltonian(problem, size)
    return linalg.eigh(H, eigvals_only=True, subset_by_index=[0, count - 1])


def _basis_refined(problem: RadialProblem, count: int) -> tuple[FloatArray, FloatArray]:
    size = problem.basis.size
    larger = size + max(10, size // 4)
    base = basis_eigenvalues(problem, count, size)
    grown = basis_eigenvalues(problem, count, larger)
    logger.debug(f"Basis levels: size {size} -> {larger}")
    return grown, np.abs(grown - base) / np.abs(grown)


def eigenvalues(problem: RadialProblem, count: int) -> Spectrum:
    """
    Нижние `count` уровней радиальной задачи (η = sE/12).

    - grid: центральные разности + одна экстраполяция Ричардсона;
    - basis: диагонализация в базисе осциллятора + проверка увеличенным базисом.

    Raises:
        DomainError: count вне [1, 20].
        NotConverged: уточнение сдвинуло уровни сильнее 1e-4 относительно.
    """
    if not 1 <= count <= MAX_LEVELS:
        raise DomainError(f"count must lie in [1, {MAX_LEVELS}], got {count}.")

    if problem.method == "grid":
        E, convergence = grid_eigenvalues(problem, count)
    else:
        E, convergence = _basis_refined(problem, count)

    worst = float(np.max(convergence))
    if worst > REFINEMENT_TOL:
        raise NotConverged(
            f"{problem.method} refinement moved the levels by {worst:.3e} relative (limit {REFINEMENT_TOL:g})."
        )
    logger.info(
        f"Spectrum ({problem.method}, {problem.branch.value}, s={problem.s}, λ={problem.lam}): "
        f"{count} levels, worst refinement {worst:.2e}"
    )
    return Spectrum(E=E, convergence_estimate=convergence, s=problem.s, method=problem.method, branch=problem.branch)
