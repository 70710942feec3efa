from dataclasses import dataclass, field
from typing import Any

import numpy as np

from branchon.models.params import FloatArray


def frozen_array(values: Any, dtype: type = np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, slots=True)
class Trajectory:
    """Решение уравнения Льенара: отсчёты (t, x, v) и метаданные интегратора."""

    times: FloatArray
    x: FloatArray
    v: FloatArray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        times, x, v = frozen_array(self.times), frozen_array(self.x), frozen_array(self.v)
        if not (times.ndim == x.ndim == v.ndim == 1) or not (len(times) == len(x) == len(v)):
            raise ValueError("times, x and v must be 1-D sequences of equal length")
        if len(times) < 2:
            raise ValueError("a trajectory needs at least two samples")
        if not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise ValueError("trajectory states must be finite")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "v", v)

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True, slots=True)
class TransformSeries:
    """U(t) = x(t) exp((k/3) ∫₀ᵗ x dτ) вместе с бегущим интегралом."""

    times: FloatArray
    U: FloatArray
    running_integral: FloatArray
    quadrature_error: float = 0.0

    def __post_init__(self) -> None:
        for name in ("times", "U", "running_integral"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))
        if not (len(self.times) == len(self.U) == len(self.running_integral)):
            raise ValueError("times, U and running_integral must have equal length")


@dataclass(frozen=True, slots=True)
class HamiltonianSeries:
    """Значения (p, H) вдоль траектории и использованная ветвь (+1 / -1) в каждом отсчёте."""

    times: FloatArray
    p: FloatArray
    H: FloatArray
    branch_used: np.ndarray
    model_name: str = ""

    def __post_init__(self) -> None:
        for name in ("times", "p", "H"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))
        object.__setattr__(self, "branch_used", frozen_array(self.branch_used, dtype=np.int8))

    @property
    def drift(self) -> float:
        return float(np.max(np.abs(self.H - self.H[0])))

    @property
    def relative_drift(self) -> float:
        scale = abs(float(self.H[0]))
        return self.drift / scale if scale > 0.0 else self.drift
