from typing import Literal

import numpy as np

from branchon.exceptions import PoleCrossing
from branchon.models.classical import HamiltonianSeries, Trajectory
from branchon.models.params import Branch, FloatArray, LienardParams, TypeIIModel, TypeIModel
from branchon.services.classical.branches import (
    curtright_momentum_values,
    curtright_w_values,
    specialized_hamiltonian_values,
    type_i_hamiltonian_values,
    type_i_momentum_values,
    type_ii_a_values,
    type_ii_hamiltonian_values,
    type_ii_momentum_values,
)
from core.config import POLE_EPSILON
from core.logger import logger

BranchPolicy = Branch | Literal["auto"]
SeriesModel = TypeIModel | TypeIIModel | LienardParams


def _check_pole(argument: FloatArray, times: FloatArray, eps: float, label: str) -> None:
    close = np.abs(argument) <= eps
    if np.any(close):
        first = int(np.argmax(close))
        raise PoleCrossing(
            f"{label} = {argument[first]:.3e} at t = {times[first]:.6g} is within {eps:g} of the pole; "
            "the branch is not defined there."
        )


def hamiltonian_series(
    traj: Trajectory,
    model: SeriesModel,
    branch_policy: BranchPolicy = "auto",
    eps: float = POLE_EPSILON,
) -> HamiltonianSeries:
    """
    Вычисляет (p, H) вдоль траектории.

    - `TypeIModel`: p - импульс Type I, auto-ветвь по знаку v + f(x).
    - `TypeIIModel`: p - импульс Type II, auto-ветвь Plus там, где v > s x²/3 + 3λ/s.
    - `LienardParams`: специализированное семейство; p - импульс исходного лагранжиана,
      auto-ветвь по знаку w = k v + k² x²/3 + 3λ (Plus при w > 0).

    Raises:
        PoleCrossing: отсчёт ближе `eps` к полюсу отображения импульса.
    """
    x, v, times = traj.x, traj.v, traj.times

    match model:
        case TypeIIModel():
            argument = type_ii_a_values(x, model) - v
            _check_pole(argument, times, eps, "s x²/3 + 3λ/s - v")
            auto_sign = -np.sign(argument)
            p = type_ii_momentum_values(x, v, model)
            name = "type-ii"
        case TypeIModel():
            argument = v + model.f(x)
            _check_pole(argument, times, eps, "v + f(x)")
            auto_sign = np.sign(argument)
            p = type_i_momentum_values(x, v, model)
            name = "type-i"
        case LienardParams():
            model.require_nonzero_k()
            argument = curtright_w_values(x, v, model)
            _check_pole(argument, times, eps, "k v + k² x²/3 + 3λ")
            auto_sign = np.sign(argument)
            p = curtright_momentum_values(x, v, model)
            name = "lienard"

    sign = auto_sign if branch_policy == "auto" else np.full_like(x, branch_policy.as_real())

    match model:
        case TypeIIModel():
            H = type_ii_hamiltonian_values(x, p, sign, model)
        case TypeIModel():
            H = type_i_hamiltonian_values(x, p, sign, model)
        case LienardParams():
            H = specialized_hamiltonian_values(x, p, sign, model)

    series = HamiltonianSeries(times=times, p=p, H=H, branch_used=sign.astype(np.int8), model_name=name)
    logger.debug(f"Hamiltonian series ({name}, policy={branch_policy}): relative drift {series.relative_drift:.3e}")
    return series
