"""
Присоединённые полиномы Лагерра L_n^(α) и ортонормированные функции Лагерра
ψ_n(u) = √(n!/Γ(n+α+1)) L_n^(α)(u) u^(α/2) e^(-u/2).
"""

from typing import overload

import numpy as np
from scipy import special

from branchon.exceptions import DomainError
from branchon.models.params import FloatArray

# порог перенормировки масштабированной рекурсии
RESCALE = 1e150


def _check_indices(n: int, alpha: float) -> None:
    if n < 0:
        raise DomainError(f"Laguerre degree must be >= 0, got {n}.")
    if not alpha > -1.0:
        raise DomainError(f"Laguerre index must satisfy alpha > -1, got {alpha}.")


@overload
def laguerre(n: int, alpha: float, x: float) -> float: ...
@overload
def laguerre(n: int, alpha: float, x: FloatArray) -> FloatArray: ...
def laguerre(n: int, alpha: float, x: float | FloatArray) -> float | FloatArray:
    """
    L_n^(α)(x) по трёхчленной рекурсии
    (k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}.
    """
    _check_indices(n, alpha)
    previous = np.ones_like(x, dtype=np.float64)
    if n == 0:
        return previous if isinstance(x, np.ndarray) else float(previous)
    current = 1.0 + alpha - np.asarray(x, dtype=np.float64)
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 + alpha - x) * current - (k + alpha) * previous) / (k + 1)
    return current if isinstance(x, np.ndarray) else float(current)


def _restore(scaled: FloatArray, log_scale: FloatArray) -> FloatArray:
    with np.errstate(divide="ignore"):
        magnitude = np.exp(log_scale + np.log(np.abs(scaled)))
    return np.copysign(magnitude, scaled)


def orthonormal_laguerre_table(n_max: int, alpha: float, u: FloatArray) -> FloatArray:
    """
    Таблица ψ_0..ψ_{n_max} в точках u >= 0, форма (n_max+1, len(u)).

    Рекурсия идёт по ψ_k / ψ_0 с отдельным логарифмическим множителем на каждую точку:
    ψ_0 = exp(log_scale) обнуляется уже при u ≈ 1500, а старшие функции там ещё порядка единицы.
    """
    _check_indices(n_max, alpha)
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    table = np.empty((n_max + 1, u.size), dtype=np.float64)
    log_scale = special.xlogy(alpha / 2.0, u) - u / 2.0 - 0.5 * special.gammaln(alpha + 1.0)
    previous = np.zeros_like(u)
    current = np.ones_like(u)
    table[0] = np.exp(log_scale)
    for k in range(n_max):
        norm = np.sqrt((k + 1) * (k + alpha + 1))
        previous, current = current, ((2 * k + alpha + 1 - u) * current - np.sqrt(k * (k + alpha)) * previous) / norm
        large = np.abs(current) > RESCALE
        if np.any(large):
            factor = np.abs(current[large])
            current[large] /= factor
            previous[large] /= factor
            log_scale[large] += np.log(factor)
        table[k + 1] = _restore(current, log_scale)
    return table
