"""
Алгебра ветвей: лагранжианы, канонические импульсы, обращение скорости и ветвящиеся гамильтонианы.

Функции `*_values` - векторные ядра без проверок области (ими пользуются ряды вдоль траекторий),
остальные работают с записями `StatePoint` / `PhasePoint` и проверяют область определения.
Дробные степени отрицательных оснований - по правилу нечётного корня: z^q := sign(z)·|z|^q.
"""

import math

import numpy as np

from branchon.exceptions import DomainError, SingularInput
from branchon.models.params import (
    Branch,
    FloatArray,
    LienardParams,
    PhasePoint,
    StatePoint,
    TypeIIModel,
    TypeIModel,
)

Real = float | FloatArray


def signed_power(z: Real, q: float) -> Real:
    """sign(z)·|z|^q."""
    return np.sign(z) * np.abs(z) ** q


# --- Type I: L = C (v + f)^((2m+1)/(2m-1)) - δ ---


def type_i_momentum_values(x: Real, v: Real, model: TypeIModel) -> Real:
    z = v + model.f(x)
    return -(model.delta ** (2.0 / (1.0 - 2.0 * model.m))) * np.abs(z) ** (2.0 / (2.0 * model.m - 1.0))


def type_i_hamiltonian_values(x: Real, p: Real, sign: Real, model: TypeIModel) -> Real:
    m = model.m
    root = (-p) ** ((2.0 * m + 1.0) / 2.0)
    return (-p) * model.f(x) - sign * (2.0 * model.delta / (2.0 * m + 1.0)) * root + model.delta


def _pole_argument_i(state: StatePoint, model: TypeIModel) -> float:
    z = state.v + model.f(state.x)
    if z == 0.0:
        raise SingularInput(f"v + f(x) = 0 at x={state.x}, v={state.v}: Type I Lagrangian has a pole here.")
    return z


def _require_negative_momentum(p: float) -> None:
    if not p < 0.0:
        raise DomainError(f"Type I branches need p < 0, got p = {p}.")


def type_i_lagrangian(state: StatePoint, model: TypeIModel) -> float:
    z = _pole_argument_i(state, model)
    exponent = (2.0 * model.m + 1.0) / (2.0 * model.m - 1.0)
    return float(model.C * signed_power(z, exponent) - model.delta)


def type_i_momentum(state: StatePoint, model: TypeIModel) -> float:
    """p = -δ^(2/(1-2m)) (v + f)^(2/(2m-1)); всегда строго отрицателен."""
    _pole_argument_i(state, model)
    return float(type_i_momentum_values(state.x, state.v, model))


def type_i_velocity_branches(x: float, p: float, model: TypeIModel) -> tuple[float, float]:
    """v± = -f(x) ± δ (-p)^((2m-1)/2)."""
    _require_negative_momentum(p)
    spread = model.delta * (-p) ** ((2.0 * model.m - 1.0) / 2.0)
    base = -model.f(x)
    return base + spread, base - spread


def type_i_hamiltonian(point: PhasePoint, branch: Branch, model: TypeIModel) -> float:
    _require_negative_momentum(point.p)
    return float(type_i_hamiltonian_values(point.x, point.p, branch.as_real(), model))


# --- Специализированное семейство (k, λ) ---


def _specialized_q(p: Real, params: LienardParams) -> Real:
    return 1.0 - 2.0 * params.k * p / (3.0 * params.lam)


def specialized_hamiltonian_values(x: Real, p: Real, sign: Real, params: LienardParams) -> Real:
    """
    D [(1 ∓ √q)² + k² x² q / (9λ)], q = 1 - 2kp/(3λ), D = 9λ²/(2k²).
    Совпадает с развёрнутой записью 2 ∓ 2√q + ...; 1 - √q считается как (1 - q)/(1 + √q).
    """
    k, lam = params.k, params.lam
    q = _specialized_q(p, params)
    root = np.sqrt(q)
    near = (2.0 * k * p / (3.0 * lam)) / (1.0 + root)  # 1 - √q
    bracket = np.where(np.asarray(sign) > 0, near, 1.0 + root) ** 2
    d = 9.0 * lam**2 / (2.0 * k**2)
    return d * (bracket + k**2 * x * x * q / (9.0 * lam))


def _checked_q(p: float, params: LienardParams) -> float:
    params.require_nonzero_k()
    q = float(_specialized_q(p, params))
    if q < 0.0:
        raise DomainError(
            f"p = {p} is past the branch point p* = {type_i_branch_point(params)}: 1 - 2kp/(3λ) = {q} < 0."
        )
    return q


def type_i_specialized_hamiltonian(point: PhasePoint, branch: Branch, params: LienardParams) -> float:
    _checked_q(point.p, params)
    return float(specialized_hamiltonian_values(point.x, point.p, branch.as_real(), params))


def curtright_hamiltonian(point: PhasePoint, params: LienardParams) -> float:
    """Компактный гамильтониан; тождественно равен ветви Plus специализированного семейства."""
    _checked_q(point.p, params)
    return float(specialized_hamiltonian_values(point.x, point.p, 1.0, params))


def split_curtright(p: float, params: LienardParams) -> tuple[float, float]:
    """H = f(p) x²/2 + U(p): возвращает (f(p), U(p))."""
    q = _checked_q(p, params)
    omega2 = params.lam
    near = (2.0 * params.k * p / (3.0 * omega2)) / (1.0 + math.sqrt(q))
    f_of_p = omega2 * q
    U_of_p = 9.0 * omega2**2 / (2.0 * params.k**2) * near**2
    return f_of_p, U_of_p


def type_i_branch_point(params: LienardParams) -> float:
    """p* = 3λ/(2k): здесь ветви H± совпадают."""
    params.require_nonzero_k()
    return 3.0 * params.lam / (2.0 * params.k)


# --- Исходный лагранжиан компактного гамильтониана ---


def curtright_w_values(x: Real, v: Real, params: LienardParams) -> Real:
    k = params.k
    return k * v + k**2 * x * x / 3.0 + 3.0 * params.lam


def curtright_momentum_values(x: Real, v: Real, params: LienardParams) -> Real:
    k, lam = params.k, params.lam
    w = curtright_w_values(x, v, params)
    return 3.0 * lam / (2.0 * k) - 27.0 * lam**3 / (2.0 * k) / (w * w)


def _checked_w(state: StatePoint, params: LienardParams) -> float:
    params.require_nonzero_k()
    w = float(curtright_w_values(state.x, state.v, params))
    if w == 0.0:
        raise SingularInput(f"k v + k² x²/3 + 3λ = 0 at x={state.x}, v={state.v}.")
    return w


def curtright_lagrangian(state: StatePoint, params: LienardParams) -> float:
    w = _checked_w(state, params)
    k, lam = params.k, params.lam
    return 27.0 * lam**3 / (2.0 * k**2) / w + 3.0 * lam * state.v / (2.0 * k) - 9.0 * lam**2 / (2.0 * k**2)


def curtright_momentum(state: StatePoint, params: LienardParams) -> float:
    """p = 3λ/(2k) - (27λ³/2k) w^(-2); отсюда 1 - 2kp/(3λ) = 9λ²/w²."""
    _checked_w(state, params)
    return float(curtright_momentum_values(state.x, state.v, params))


def curtright_velocity_branches(x: float, p: float, params: LienardParams) -> tuple[float, float]:
    """Ветвь Plus соответствует w > 0."""
    q = _checked_q(p, params)
    if q == 0.0:
        raise DomainError("At the branch point the velocity is unbounded (w → ±∞).")
    k, lam = params.k, params.lam
    w = 3.0 * lam / math.sqrt(q)
    shift = k**2 * x * x / 3.0 + 3.0 * lam
    return (w - shift) / k, (-w - shift) / k


# --- Type II: L = (1/s) (a(x) - v)^(-1), a(x) = s x²/3 + 3λ/s ---


def type_ii_a_values(x: Real, model: TypeIIModel) -> Real:
    return model.s * x * x / 3.0 + 3.0 * model.lam / model.s


def type_ii_momentum_values(x: Real, v: Real, model: TypeIIModel) -> Real:
    z = type_ii_a_values(x, model) - v
    return 1.0 / (model.s * z * z)


def type_ii_hamiltonian_values(x: Real, p: Real, sign: Real, model: TypeIIModel) -> Real:
    """p a(x) ± 2p/√(sp); при s > 0 последний член равен ±2√(p/s)."""
    return p * type_ii_a_values(x, model) + sign * 2.0 * p / np.sqrt(model.s * p)


def _pole_argument_ii(state: StatePoint, model: TypeIIModel) -> float:
    z = float(type_ii_a_values(state.x, model)) - state.v
    if z == 0.0:
        raise SingularInput(f"s x²/3 + 3λ/s - v = 0 at x={state.x}, v={state.v}: Type II Lagrangian has a pole here.")
    return z


def _require_same_sign(p: float, model: TypeIIModel) -> None:
    if not model.s * p > 0.0:
        raise DomainError(f"Type II branches need s·p > 0, got s = {model.s}, p = {p}.")


def type_ii_lagrangian(state: StatePoint, model: TypeIIModel) -> float:
    z = _pole_argument_ii(state, model)
    return 1.0 / (model.s * z)


def type_ii_momentum(state: StatePoint, model: TypeIIModel) -> float:
    """p = (1/s) (a - v)^(-2); знак p совпадает со знаком s."""
    _pole_argument_ii(state, model)
    return float(type_ii_momentum_values(state.x, state.v, model))


def type_ii_velocity_branches(x: float, p: float, model: TypeIIModel) -> tuple[float, float]:
    """v± = a(x) ± 1/√(sp)."""
    _require_same_sign(p, model)
    a = float(type_ii_a_values(x, model))
    spread = 1.0 / math.sqrt(model.s * p)
    return a + spread, a - spread


def type_ii_hamiltonian(point: PhasePoint, branch: Branch, model: TypeIIModel) -> float:
    _require_same_sign(point.p, model)
    return float(type_ii_hamiltonian_values(point.x, point.p, branch.as_real(), model))
