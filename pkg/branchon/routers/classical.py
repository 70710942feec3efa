import math

import numpy as np

from branchon.cli import CommandResult, CommandRouter
from branchon.exceptions import ConfigError
from branchon.models.classical import Trajectory
from branchon.models.config import RunConfig
from branchon.models.params import Branch, LienardParams, PhasePoint, QuadraticF, StatePoint, TypeIIModel, TypeIModel
from branchon.services.classical.branches import (
    curtright_velocity_branches,
    type_i_branch_point,
    type_i_hamiltonian,
    type_i_specialized_hamiltonian,
    type_i_velocity_branches,
    type_ii_hamiltonian,
    type_ii_velocity_branches,
)
from branchon.services.classical.dynamics import harmonic_residual, integrate, nonlocal_transform
from branchon.services.classical.hamiltonian_series import BranchPolicy, hamiltonian_series

router = CommandRouter(tags=["classical"])


def _params(config: RunConfig) -> LienardParams:
    return LienardParams(k=config.k, lam=config.lam)


def _trajectory(config: RunConfig) -> Trajectory:
    return integrate(
        _params(config),
        StatePoint(x=config.x0, v=config.v0),
        config.t_end,
        config.tol,
        method=config.integrator,
        samples_per_period=config.samples_per_period,
    )


def _type_i_model(config: RunConfig) -> TypeIModel:
    generic = (config.m, config.delta, config.f_a, config.f_b) != (0.0, None, None, None)
    if not generic:
        if config.k <= 0.0:
            raise ConfigError(f"--model type-i without delta, f.a, f.b needs k > 0, got {config.k}.")
        return TypeIModel.lienard_equivalent(_params(config))
    if config.delta is None or config.f_a is None or config.f_b is None:
        raise ConfigError("--model type-i with m or delta set needs all of --delta, --f-a and --f-b.")
    return TypeIModel(m=config.m, delta=config.delta, f=QuadraticF(a=config.f_a, b=config.f_b))


def _type_ii_model(config: RunConfig) -> TypeIIModel:
    if config.s is None:
        return TypeIIModel.lienard_preset(_params(config))
    return TypeIIModel(s=config.s, lam=config.lam)


@router.command("simulate", "Integrate the cubic Liénard equation")
def simulate(config: RunConfig) -> CommandResult:
    traj = _trajectory(config)
    rows = [(float(t), float(x), float(v)) for t, x, v in zip(traj.times, traj.x, traj.v, strict=True)]
    summary = (
        f"simulate: {len(traj)} samples on [0, {config.t_end:g}] with {config.integrator}, "
        f"x(t_end) = {traj.x[-1]:.12g}, v(t_end) = {traj.v[-1]:.12g}"
    )
    return CommandResult(columns=("t", "x", "v"), rows=rows, summary=summary)


@router.command("transform-check", "Check that the nonlocal transform is harmonic")
def transform_check(config: RunConfig) -> CommandResult:
    params = _params(config)
    traj = _trajectory(config)
    series = nonlocal_transform(traj, params)
    residual = harmonic_residual(series, params)
    rows = [
        (float(t), float(x), float(u), float(i))
        for t, x, u, i in zip(series.times, traj.x, series.U, series.running_integral, strict=True)
    ]
    summary = (
        f"transform-check: max|Ü + λU|/max|U| = {residual:.3e} (limit {config.check_tol:g}), "
        f"quadrature estimate {series.quadrature_error:.3e}"
    )
    failure = None
    if residual > config.check_tol:
        failure = f"harmonic residual {residual:.3e} exceeds check_tol {config.check_tol:g}"
    return CommandResult(columns=("t", "x", "U", "integral"), rows=rows, summary=summary, failure=failure)


@router.command("hamiltonian", "Evaluate a branched Hamiltonian along a trajectory")
def hamiltonian(config: RunConfig) -> CommandResult:
    traj = _trajectory(config)
    model: LienardParams | TypeIModel | TypeIIModel
    match config.model:
        case "type-i":
            model = _type_i_model(config)
        case "type-ii":
            model = _type_ii_model(config)
        case _:
            model = _params(config)
    policy: BranchPolicy = "auto" if config.branch in (None, "auto", "both") else Branch(config.branch)
    series = hamiltonian_series(traj, model, policy)
    rows = [
        (float(t), float(x), float(v), float(p), float(h), int(b))
        for t, x, v, p, h, b in zip(traj.times, traj.x, traj.v, series.p, series.H, series.branch_used, strict=True)
    ]
    summary = (
        f"hamiltonian ({series.model_name}, branch {policy if isinstance(policy, str) else policy.value}): "
        f"H0 = {series.H[0]:.12g}, drift {series.drift:.3e}, relative drift {series.relative_drift:.3e}"
    )
    return CommandResult(columns=("t", "x", "v", "p", "H", "branch"), rows=rows, summary=summary)


def _momentum_range(config: RunConfig, lower: float, upper: float) -> np.ndarray:
    p_min = lower if config.p_min is None else config.p_min
    p_max = upper if config.p_max is None else config.p_max
    return np.linspace(min(p_min, p_max), max(p_min, p_max), config.points)


@router.command("branches", "Tabulate velocity and Hamiltonian branches over momentum")
def branches(config: RunConfig) -> CommandResult:
    x = config.x
    rows: list[tuple[float, float, float, float, float]] = []
    match config.model:
        case "type-i":
            type_i = _type_i_model(config)
            for p in _momentum_range(config, -4.0, -0.25):
                point = PhasePoint(x=x, p=float(p))
                v_plus, v_minus = type_i_velocity_branches(x, point.p, type_i)
                h_plus = type_i_hamiltonian(point, Branch.PLUS, type_i)
                h_minus = type_i_hamiltonian(point, Branch.MINUS, type_i)
                rows.append((point.p, v_plus, v_minus, h_plus, h_minus))
            label = "type-i"
        case "type-ii":
            type_ii = _type_ii_model(config)
            side = math.copysign(1.0, type_ii.s)
            for p in _momentum_range(config, 0.05 * side, 4.0 * side):
                point = PhasePoint(x=x, p=float(p))
                v_plus, v_minus = type_ii_velocity_branches(x, point.p, type_ii)
                h_plus = type_ii_hamiltonian(point, Branch.PLUS, type_ii)
                h_minus = type_ii_hamiltonian(point, Branch.MINUS, type_ii)
                rows.append((point.p, v_plus, v_minus, h_plus, h_minus))
            label = "type-ii"
        case _:
            params = _params(config)
            p_star = type_i_branch_point(params)
            side = math.copysign(1.0, params.k)
            for p in _momentum_range(config, p_star - 3.0 * side * abs(p_star), p_star - 0.01 * side * abs(p_star)):
                point = PhasePoint(x=x, p=float(p))
                v_plus, v_minus = curtright_velocity_branches(x, point.p, params)
                h_plus = type_i_specialized_hamiltonian(point, Branch.PLUS, params)
                h_minus = type_i_specialized_hamiltonian(point, Branch.MINUS, params)
                rows.append((point.p, v_plus, v_minus, h_plus, h_minus))
            label = f"lienard, branch point p* = {p_star:.12g}"

    summary = f"branches ({label}): {len(rows)} momenta at x = {x:g}"
    return CommandResult(columns=("p", "v_plus", "v_minus", "H_plus", "H_minus"), rows=rows, summary=summary)
