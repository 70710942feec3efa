import math
from enum import Enum
from typing import overload

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator

from branchon.exceptions import DegenerateParameter, DomainError

FloatArray = NDArray[np.float64]

_FROZEN = ConfigDict(frozen=True, allow_inf_nan=False, validate_by_name=True, validate_by_alias=True)


class Branch(Enum):
    """Метка ветви ± (знак перед корнем в обращении скорости)."""

    PLUS = "plus"
    MINUS = "minus"

    def as_real(self) -> float:
        return 1.0 if self is Branch.PLUS else -1.0

    @classmethod
    def from_sign(cls, value: float) -> "Branch":
        if value > 0:
            return cls.PLUS
        if value < 0:
            return cls.MINUS
        raise DomainError("Branch is undefined at zero sign argument.")


class LienardParams(BaseModel):
    """Константы кубического осциллятора: ẍ + k x ẋ + (k²/9) x³ + λ x = 0."""

    model_config = _FROZEN

    k: float
    lam: float = Field(alias="lambda", gt=0)

    @property
    def classical_omega(self) -> float:
        return math.sqrt(self.lam)

    @property
    def period(self) -> float:
        """Период гармонического предела k → 0."""
        return 2.0 * math.pi / self.classical_omega

    def require_nonzero_k(self) -> None:
        if self.k == 0.0:
            raise DegenerateParameter("k = 0 makes the specialized formulas singular; use a small k as a limit proxy.")


class QuadraticF(BaseModel):
    """Координатная функция f(x) = a·x² + b."""

    model_config = _FROZEN

    a: float = 0.0
    b: float = 0.0

    @overload
    def __call__(self, x: float) -> float: ...
    @overload
    def __call__(self, x: FloatArray) -> FloatArray: ...
    def __call__(self, x: float | FloatArray) -> float | FloatArray:
        return self.a * x * x + self.b

    def derivative(self, x: float | FloatArray) -> float | FloatArray:
        return 2.0 * self.a * x


class TypeIModel(BaseModel):
    """
    Семейство L = C (v + f(x))^((2m+1)/(2m-1)) - δ,
    C = ((1-2m)/(1+2m)) δ^(2/(1-2m)).
    """

    model_config = _FROZEN

    m: float = Field(0.0, ge=0.0, lt=0.5)
    delta: float = Field(gt=0)
    f: QuadraticF = QuadraticF()

    @property
    def C(self) -> float:
        return (1.0 - 2.0 * self.m) / (1.0 + 2.0 * self.m) * self.delta ** (2.0 / (1.0 - 2.0 * self.m))

    @classmethod
    def shifted_family(cls, params: LienardParams) -> Self:
        """m = 0 модель, которая после сдвига импульса даёт специализированный гамильтониан."""
        params.require_nonzero_k()
        d = 9.0 * params.lam**2 / (2.0 * params.k**2)
        return cls(m=0.0, delta=d, f=QuadraticF(a=params.lam / 2.0, b=d))

    @classmethod
    def lienard_equivalent(cls, params: LienardParams) -> Self:
        """
        m = 0 модель, уравнение Эйлера–Лагранжа которой совпадает с кубическим уравнением Льенара.
        Требует k > 0 (иначе δ² < 0).
        """
        if params.k <= 0.0:
            raise DegenerateParameter(f"Liénard-equivalent Type I model needs k > 0, got k = {params.k}.")
        delta = math.sqrt(27.0 * params.lam**3 / (2.0 * params.k**3))
        return cls(m=0.0, delta=delta, f=QuadraticF(a=params.k / 3.0, b=3.0 * params.lam / params.k))


class TypeIIModel(BaseModel):
    """Семейство L = (1/s) ((1/3) s x² + (3/s) λ - v)^(-1)."""

    model_config = _FROZEN

    s: float
    lam: float = Field(alias="lambda", gt=0)

    @field_validator("s")
    @classmethod
    def _s_nonzero(cls, value: float) -> float:
        if value == 0.0:
            raise ValueError("s must be nonzero")
        return value

    @classmethod
    def lienard_preset(cls, params: LienardParams) -> Self:
        """s = -k: уравнение Эйлера–Лагранжа совпадает с уравнением Льенара."""
        params.require_nonzero_k()
        return cls(s=-params.k, lam=params.lam)

    def require_quantizable(self) -> None:
        if self.s <= 0.0:
            raise DomainError(f"Quantum operations need s > 0, got s = {self.s}.")

    @property
    def basis_omega(self) -> float:
        """ω = 6√λ/s осциллятора нулевого приближения."""
        self.require_quantizable()
        return 6.0 * math.sqrt(self.lam) / self.s

    @property
    def coupling(self) -> float:
        """g = s^(-3/2)."""
        self.require_quantizable()
        return self.s ** (-1.5)


class PhasePoint(BaseModel):
    model_config = _FROZEN

    x: float
    p: float


class StatePoint(BaseModel):
    model_config = _FROZEN

    x: float
    v: float
