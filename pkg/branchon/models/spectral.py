import math
from dataclasses import dataclass
from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from branchon.models.classical import frozen_array
from branchon.models.params import Branch, FloatArray, TypeIIModel

_FROZEN = ConfigDict(frozen=True, allow_inf_nan=False)

SpectralMethod = Literal["grid", "basis"]


class TransformSpec(BaseModel):
    """Замена переменных p = r^ρ, pψ(p) = r^ξ χ(r) и центробежный индекс ℓ."""

    model_config = _FROZEN

    rho: float = Field(2.0, gt=0)
    xi: float = 2.5
    ell: float = Field(0.5, gt=-0.5)

    @property
    def centrifugal(self) -> float:
        return self.ell * (self.ell + 1.0)

    @property
    def alpha(self) -> float:
        """Индекс полиномов Лагерра α = ℓ + 1/2."""
        return self.ell + 0.5


class GridSpec(BaseModel):
    model_config = _FROZEN

    r_max: float | None = Field(None, gt=0)
    n_points: int = Field(4000, ge=1)


class BasisSpec(BaseModel):
    model_config = _FROZEN

    size: int = Field(60, ge=10)
    omega: float | None = Field(None, gt=0)


class RadialProblem(BaseModel):
    """
    Радиальная задача на полуоси:
    -χ'' + ℓ(ℓ+1)/r² χ + (36λ/s²) r² χ - branch·(24/s^(3/2)) r χ = E χ.
    """

    model_config = _FROZEN

    model: TypeIIModel
    branch: Branch = Branch.PLUS
    method: SpectralMethod = "basis"
    grid: GridSpec = GridSpec()
    basis: BasisSpec = BasisSpec()
    transform: TransformSpec = TransformSpec()
    linear_term: bool = True

    @model_validator(mode="after")
    def _quantizable(self) -> Self:
        if self.model.s <= 0.0:
            raise ValueError(f"radial problem needs s > 0, got s = {self.model.s}")
        return self

    @property
    def s(self) -> float:
        return self.model.s

    @property
    def lam(self) -> float:
        return self.model.lam

    @property
    def omega(self) -> float:
        """Естественная частота ω = 6√λ/s; ω² - коэффициент при r²."""
        return 6.0 * math.sqrt(self.lam) / self.s

    @property
    def basis_omega(self) -> float:
        return self.basis.omega if self.basis.omega is not None else self.omega

    @property
    def harmonic_coefficient(self) -> float:
        return 36.0 * self.lam / self.s**2

    @property
    def linear_coefficient(self) -> float:
        if not self.linear_term:
            return 0.0
        return -self.branch.as_real() * 24.0 / self.s**1.5

    def zero_order_energy(self, n: int) -> float:
        return self.omega * (4 * n + 2.0 * self.transform.ell + 3.0)

    def zero_order_eta(self, n: int) -> float:
        """(s/12)·ω(4n+2ℓ+3) без промежуточного умножения на s: при λ = 1, ℓ = 1/2 ровно 2n + 2."""
        return math.sqrt(self.lam) / 2.0 * (4 * n + 2.0 * self.transform.ell + 3.0)

    def with_branch(self, branch: Branch) -> Self:
        return self.model_copy(update={"branch": branch})


@dataclass(frozen=True, slots=True)
class TridiagonalOperator:
    """Симметричная трёхдиагональная матрица на внутренних узлах r_i = i·h, i = 1..N."""

    diagonal: FloatArray
    off_diagonal: FloatArray
    r: FloatArray
    h: float

    def __post_init__(self) -> None:
        for name in ("diagonal", "off_diagonal", "r"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))
        if len(self.off_diagonal) != len(self.diagonal) - 1:
            raise ValueError("off_diagonal must be one shorter than diagonal")

    def __len__(self) -> int:
        return len(self.diagonal)


@dataclass(frozen=True, slots=True)
class Spectrum:
    """Нижние уровни радиальной задачи; η = sE/12."""

    E: FloatArray
    convergence_estimate: FloatArray
    s: float
    method: SpectralMethod
    branch: Branch

    def __post_init__(self) -> None:
        object.__setattr__(self, "E", frozen_array(self.E))
        object.__setattr__(self, "convergence_estimate", frozen_array(self.convergence_estimate))
        if len(self.E) != len(self.convergence_estimate):
            raise ValueError("E and convergence_estimate must have equal length")
        if len(self.E) > 1 and not np.all(np.diff(self.E) > 0):
            raise ValueError("eigenvalues must be strictly increasing")

    @property
    def eta(self) -> FloatArray:
        return self.s * self.E / 12.0

    def __len__(self) -> int:
        return len(self.E)


@dataclass(frozen=True, slots=True)
class SampledFunction:
    """Функция, заданная отсчётами на возрастающей сетке."""

    points: FloatArray
    values: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", frozen_array(self.points))
        object.__setattr__(self, "values", frozen_array(self.values))
        if self.points.shape != self.values.shape:
            raise ValueError("points and values must have the same shape")


@dataclass(frozen=True, slots=True)
class RadialStates:
    """Собственные векторы сеточной задачи, нормированные как Σ h χ² = 1."""

    E: FloatArray
    r: FloatArray
    chi: FloatArray  # (count, N)

    def __post_init__(self) -> None:
        for name in ("E", "r", "chi"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))

    def state(self, n: int) -> SampledFunction:
        return SampledFunction(points=self.r, values=self.chi[n])
