from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict

from branchon.models.classical import frozen_array
from branchon.models.params import Branch, FloatArray


@dataclass(frozen=True, slots=True)
class PerturbationSeries:
    """
    Коэффициенты E_m ряда E(g) = Σ g^m E_m для уровня n и частичные суммы.
    `basis_size` - размер базиса, на котором коэффициенты сошлись.
    """

    n: int
    branch: Branch
    g: float
    s: float
    coefficients: FloatArray
    partial_sums: FloatArray
    radius_estimate: float | None = None
    basis_size: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", frozen_array(self.coefficients))
        object.__setattr__(self, "partial_sums", frozen_array(self.partial_sums))
        if len(self.coefficients) != len(self.partial_sums):
            raise ValueError("coefficients and partial_sums must have equal length")

    @classmethod
    def from_coefficients(
        cls,
        n: int,
        branch: Branch,
        g: float,
        coefficients: Sequence[float] | FloatArray,
        *,
        s: float = 1.0,
        radius_estimate: float | None = None,
        basis_size: int = 0,
    ) -> Self:
        coeffs = np.asarray(coefficients, dtype=np.float64)
        terms = coeffs * g ** np.arange(len(coeffs))
        return cls(
            n=n,
            branch=branch,
            g=g,
            s=s,
            coefficients=coeffs,
            partial_sums=np.cumsum(terms),
            radius_estimate=radius_estimate,
            basis_size=basis_size,
        )

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def terms(self) -> FloatArray:
        """g^m E_m."""
        return self.coefficients * self.g ** np.arange(len(self.coefficients))


class EtaReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    branch: Branch
    eta_series: float
    eta_diag: float
    abs_diff: float
    order_used: int

    @property
    def rel_diff(self) -> float:
        return self.abs_diff / abs(self.eta_diag) if self.eta_diag != 0.0 else self.abs_diff


class EtaDecomposition(BaseModel):
    """η± = η⁰ + even_shift ∓ odd_part."""

    model_config = ConfigDict(frozen=True)

    n: int
    order: int
    source: Literal["series", "diagonalization"]
    eta_zero: float
    eta_plus: float
    eta_minus: float

    @property
    def odd_part(self) -> float:
        return (self.eta_minus - self.eta_plus) / 2.0

    @property
    def even_shift(self) -> float:
        return (self.eta_plus + self.eta_minus) / 2.0 - self.eta_zero
