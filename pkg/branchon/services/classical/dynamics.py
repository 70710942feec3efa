import math
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

from branchon.exceptions import BlowUp, DomainError, NotConverged
from branchon.models.classical import TransformSeries, Trajectory
from branchon.models.params import FloatArray, LienardParams, StatePoint
from core.config import BLOWUP_BOUND
from core.logger import logger

IntegratorMethod = Literal["RK45", "DOP853", "RK4"]

MIN_TOL = 1e-13
MAX_TOL = 1e-3
MIN_SAMPLES_PER_PERIOD = 200


def lienard_rhs(state: StatePoint, params: LienardParams) -> tuple[float, float]:
    """(ẋ, v̇) для ẍ + k x ẋ + (k²/9) x³ + λ x = 0."""
    return _rhs(0.0, (state.x, state.v), params.k, params.lam)


def _rhs(_t: float, y: tuple[float, float] | FloatArray, k: float, lam: float) -> tuple[float, float]:
    x, v = float(y[0]), float(y[1])
    return v, -k * x * v - (k * k / 9.0) * x * x * x - lam * x


def _output_grid(params: LienardParams, t_end: float, samples_per_period: int) -> FloatArray:
    n_intervals = max(1, math.ceil(samples_per_period * t_end / params.period))
    return np.linspace(0.0, t_end, n_intervals + 1)


def integrate(
    params: LienardParams,
    initial: StatePoint,
    t_end: float,
    tol: float = 1e-10,
    *,
    method: IntegratorMethod = "RK45",
    samples_per_period: int = 256,
    bound: float = BLOWUP_BOUND,
    step: float | None = None,
) -> Trajectory:
    """
    Интегрирует уравнение Льенара на [0, t_end] и возвращает траекторию на равномерной сетке
    (не меньше 200 отсчётов на период 2π/√λ).

    Адаптивные схемы (RK45 - Дорман–Принс 5(4), DOP853) идут через scipy с локальными допусками
    rtol = tol/10, atol = tol/100. RK4 - классическая схема с фиксированным шагом, перекрёстная проверка;
    шаг по умолчанию ~ 0.2·tol^(1/4)/√λ, либо `step`, подогнанный под сетку вывода.

    Raises:
        DomainError: t_end <= 0, tol вне [1e-13, 1e-3] или слишком редкая сетка.
        BlowUp: |x| или |v| превысили `bound`.
        NotConverged: адаптивный интегратор не смог продолжить.
    """
    if not t_end > 0.0:
        raise DomainError(f"t_end must be positive, got {t_end}.")
    if not MIN_TOL <= tol <= MAX_TOL:
        raise DomainError(f"tol must lie in [{MIN_TOL}, {MAX_TOL}], got {tol}.")
    if samples_per_period < MIN_SAMPLES_PER_PERIOD:
        raise DomainError(f"samples_per_period must be >= {MIN_SAMPLES_PER_PERIOD}, got {samples_per_period}.")

    times = _output_grid(params, t_end, samples_per_period)
    y0 = np.array([initial.x, initial.v], dtype=np.float64)
    meta: dict[str, object] = {
        "method": method,
        "tol": tol,
        "k": params.k,
        "lambda": params.lam,
        "x0": initial.x,
        "v0": initial.v,
    }

    if method == "RK4":
        states, substeps = _integrate_rk4(params, y0, times, tol, bound, step)
        meta["substeps"] = substeps
    else:
        states, nfev = _integrate_adaptive(params, y0, times, tol, bound, method)
        meta["nfev"] = nfev

    logger.debug(f"Integrated {len(times)} samples with {method} (tol={tol}, k={params.k}, λ={params.lam})")
    return Trajectory(times=times, x=states[:, 0], v=states[:, 1], meta=meta)


def _integrate_adaptive(
    params: LienardParams,
    y0: FloatArray,
    times: FloatArray,
    tol: float,
    bound: float,
    method: str,
) -> tuple[FloatArray, int]:
    # solve_ivp передаёт args и в функции событий
    def escape(_t: float, y: FloatArray, *_args: float) -> float:
        return bound - max(abs(y[0]), abs(y[1]))

    escape.terminal = True  # type: ignore[attr-defined]

    sol = solve_ivp(
        _rhs,
        (float(times[0]), float(times[-1])),
        y0,
        method=method,
        t_eval=times,
        rtol=tol / 10.0,
        atol=tol / 100.0,
        args=(params.k, params.lam),
        events=escape,
    )
    if sol.status == 1:
        t_escape = float(sol.t_events[0][0])
        raise BlowUp(f"Trajectory left |x|,|v| <= {bound} at t = {t_escape:.6g}.")
    if not sol.success:
        raise NotConverged(f"Adaptive integrator {method} failed: {sol.message}")
    return sol.y.T.copy(), int(sol.nfev)


def _rk4_step(x: float, v: float, h: float, k: float, lam: float) -> tuple[float, float]:
    k1x, k1v = _rhs(0.0, (x, v), k, lam)
    k2x, k2v = _rhs(0.0, (x + 0.5 * h * k1x, v + 0.5 * h * k1v), k, lam)
    k3x, k3v = _rhs(0.0, (x + 0.5 * h * k2x, v + 0.5 * h * k2v), k, lam)
    k4x, k4v = _rhs(0.0, (x + h * k3x, v + h * k3v), k, lam)
    return (
        x + h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0,
        v + h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0,
    )


def _integrate_rk4(
    params: LienardParams,
    y0: FloatArray,
    times: FloatArray,
    tol: float,
    bound: float,
    step: float | None,
) -> tuple[FloatArray, int]:
    spacing = float(times[1] - times[0])
    target = step if step is not None else 0.2 * tol**0.25 / params.classical_omega
    if not target > 0.0:
        raise DomainError(f"RK4 step must be positive, got {target}.")
    substeps = max(1, math.ceil(spacing / target))

    states = np.empty((len(times), 2), dtype=np.float64)
    states[0] = y0
    x, v = float(y0[0]), float(y0[1])
    for i in range(len(times) - 1):
        h = (times[i + 1] - times[i]) / substeps
        for _ in range(substeps):
            x, v = _rk4_step(x, v, h, params.k, params.lam)
        if not (math.isfinite(x) and math.isfinite(v)) or max(abs(x), abs(v)) > bound:
            raise BlowUp(f"Trajectory left |x|,|v| <= {bound} before t = {times[i + 1]:.6g}.")
        states[i + 1] = (x, v)
    return states, substeps


def _running_integral(times: FloatArray, x: FloatArray, v: FloatArray) -> FloatArray:
    # Трапеции с концевой поправкой: на каждом отрезке вычитаем h²/12·(x'(b) - x'(a)), x' = v
    h = np.diff(times)
    pieces = 0.5 * h * (x[:-1] + x[1:]) - h * h / 12.0 * (v[1:] - v[:-1])
    return np.concatenate(([0.0], np.cumsum(pieces)))


def nonlocal_transform(traj: Trajectory, params: LienardParams) -> TransformSeries:
    """
    U(t) = x(t) exp((k/3) ∫₀ᵗ x dτ). Для решений уравнения Льенара Ü = -λU.

    Бегущий интеграл - трапеции с концевой поправкой (порядок h⁴); оценка Ричардсона сравнивает
    сетку h с прореженной сеткой 2h и пишется в `quadrature_error`.
    """
    integral = _running_integral(traj.times, traj.x, traj.v)

    quadrature_error = 0.0
    if len(traj) >= 5:
        coarse = _running_integral(traj.times[::2], traj.x[::2], traj.v[::2])
        quadrature_error = float(np.max(np.abs(integral[::2] - coarse))) / 15.0

    U = traj.x * np.exp(params.k / 3.0 * integral)
    return TransformSeries(times=traj.times, U=U, running_integral=integral, quadrature_error=quadrature_error)


def harmonic_residual(series: TransformSeries, params: LienardParams) -> float:
    """
    max|Ü + λU| / max|U| по внутренним отсчётам; Ü - центральная 5-точечная разность.
    """
    times, U = series.times, series.U
    if len(times) < 5:
        raise DomainError("Need at least five samples for the 5-point second derivative.")
    steps = np.diff(times)
    h = float(steps[0])
    if not np.allclose(steps, h, rtol=1e-9, atol=0.0):
        raise DomainError("Harmonic residual needs a uniform time grid.")

    scale = float(np.max(np.abs(U)))
    if scale == 0.0:
        return 0.0
    U_dd = (-U[:-4] + 16.0 * U[1:-3] - 30.0 * U[2:-2] + 16.0 * U[3:-1] - U[4:]) / (12.0 * h * h)
    return float(np.max(np.abs(U_dd + params.lam * U[2:-2]))) / scale
