from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from branchon.models.params import Branch

Command = Literal["simulate", "transform-check", "hamiltonian", "branches", "spectrum", "perturb", "compare"]
COMMANDS: tuple[Command, ...] = (
    "simulate",
    "transform-check",
    "hamiltonian",
    "branches",
    "spectrum",
    "perturb",
    "compare",
)

DEFAULT_S = 6.0


class RunConfig(BaseModel):
    """
    Полностью разрешённая конфигурация одного запуска.
    Ключи с точкой (grid.n_points, basis.size) - алиасы полей; неизвестные ключи запрещены.
    """

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        allow_inf_nan=False,
        validate_by_name=True,
        validate_by_alias=True,
    )

    command: Command
    config: Path | None = None

    # Классическая часть
    k: float = 1.0
    lam: float = Field(1.0, alias="lambda", gt=0)
    m: float = Field(0.0, ge=0.0, lt=0.5)
    delta: float | None = Field(None, gt=0)
    f_a: float | None = Field(None, alias="f.a")
    f_b: float | None = Field(None, alias="f.b")
    model: Literal["lienard", "type-i", "type-ii"] = "lienard"
    x0: float = 0.1
    v0: float = 0.0
    t_end: float = Field(20.0, gt=0)
    tol: float = Field(1e-10, ge=1e-13, le=1e-3)
    integrator: Literal["RK45", "DOP853", "RK4"] = "RK45"
    samples_per_period: int = Field(256, ge=200)
    check_tol: float = Field(1e-6, gt=0)
    x: float = 0.0
    p_min: float | None = None
    p_max: float | None = None
    points: int = Field(101, ge=2)

    # Квантовая часть
    s: float | None = None
    branch: Literal["plus", "minus", "both", "auto"] | None = None
    n: int = Field(0, ge=0)
    order: int = Field(4, ge=0, le=8)
    count: int = Field(5, ge=1, le=20)
    method: Literal["grid", "basis"] = "basis"
    no_linear_term: bool = False
    grid_n_points: int = Field(4000, alias="grid.n_points", ge=1)
    grid_r_max: float | None = Field(None, alias="grid.r_max", gt=0)
    basis_size: int = Field(60, alias="basis.size", ge=10)

    # Вывод
    out: Path | None = None
    format: Literal["csv", "json"] = "csv"

    @field_validator("s")
    @classmethod
    def _s_nonzero(cls, value: float | None) -> float | None:
        if value == 0.0:
            raise ValueError("s must be nonzero")
        return value

    @property
    def quantum_s(self) -> float:
        return DEFAULT_S if self.s is None else self.s

    def branches(self) -> list[Branch]:
        """Ветви для квантовых команд: по умолчанию обе."""
        if self.branch in (None, "both", "auto"):
            return [Branch.PLUS, Branch.MINUS]
        return [Branch(self.branch)]

    def resolved(self) -> dict[str, Any]:
        """Конфигурация для заголовка вывода (ключи - как в файле конфигурации)."""
        return self.model_dump(mode="json", by_alias=True, exclude={"config"})
