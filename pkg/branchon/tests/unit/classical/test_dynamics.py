import math

import numpy as np
import pytest

from branchon.exceptions import BlowUp, DomainError
from branchon.models.classical import Trajectory, TransformSeries
from branchon.models.params import LienardParams, StatePoint
from branchon.services.classical.dynamics import harmonic_residual, integrate, lienard_rhs, nonlocal_transform


def test_lienard_rhs():
    assert lienard_rhs(StatePoint(x=1.0, v=0.0), LienardParams(k=0.0, lam=1.0)) == (0.0, -1.0)
    ax = lienard_rhs(StatePoint(x=3.0, v=2.0), LienardParams(k=1.0, lam=2.0))
    assert ax == pytest.approx((2.0, -6.0 - 3.0 - 6.0))


def test_harmonic_limit_tracks_cosine():
    traj = integrate(LienardParams(k=0.0, lam=1.0), StatePoint(x=1.0, v=0.0), 2.0 * math.pi, 1e-10)
    assert np.max(np.abs(traj.x - np.cos(traj.times))) <= 1e-8
    assert traj.x[-1] == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(np.diff(traj.times), traj.times[1], rtol=1e-9)
    # не меньше 200 отсчётов на период
    assert len(traj) >= 201


def test_output_grid_density():
    traj = integrate(LienardParams(k=0.5, lam=4.0), StatePoint(x=0.2, v=0.0), 10.0, 1e-8, samples_per_period=200)
    period = 2.0 * math.pi / 2.0
    assert (traj.times[1] - traj.times[0]) <= period / 200 * (1.0 + 1e-12)
    assert traj.meta["method"] == "RK45"
    assert traj.meta["tol"] == 1e-8


def test_adaptive_backends_agree(reference_trajectory):
    params = LienardParams(k=1.0, lam=1.0)
    dop = integrate(params, StatePoint(x=0.1, v=0.0), 20.0, 1e-10, method="DOP853")
    np.testing.assert_array_equal(dop.times, reference_trajectory.times)
    assert np.max(np.abs(dop.x - reference_trajectory.x)) <= 1e-8


def test_rk4_matches_adaptive(reference_trajectory):
    rk4 = integrate(LienardParams(k=1.0, lam=1.0), StatePoint(x=0.1, v=0.0), 20.0, 1e-10, method="RK4")
    assert rk4.meta["substeps"] >= 1
    assert np.max(np.abs(rk4.x - reference_trajectory.x)) <= 1e-8


def test_rk4_is_fourth_order():
    params = LienardParams(k=0.0, lam=1.0)
    t_end = 2.0 * math.pi
    spacing = t_end / 200

    errors = []
    for divisor in (2.0, 4.0):
        traj = integrate(params, StatePoint(x=1.0, v=0.0), t_end, 1e-10, method="RK4", samples_per_period=200, step=spacing / divisor)
        errors.append(abs(traj.x[-1] - math.cos(t_end)) + abs(traj.v[-1] + math.sin(t_end)))
    assert errors[0] / errors[1] >= 10.0


@pytest.mark.parametrize("method", ["RK45", "DOP853"])
def test_adaptive_run_with_escape_event(method):
    # событие ухода вызывается solve_ivp с теми же args (k, λ), что и правая часть
    traj = integrate(LienardParams(k=2.0, lam=3.0), StatePoint(x=0.4, v=0.1), 5.0, 1e-8, method=method)
    assert traj.meta["nfev"] > 0
    assert np.max(np.abs(traj.x)) < 1.0


def test_adaptive_tolerance_halving_rerun_agrees(reference_trajectory):
    params = LienardParams(k=1.0, lam=1.0)
    coarse = integrate(params, StatePoint(x=0.1, v=0.0), 20.0, 1e-8)
    fine = integrate(params, StatePoint(x=0.1, v=0.0), 20.0, 5e-9)
    np.testing.assert_array_equal(coarse.times, fine.times)
    assert np.max(np.abs(coarse.x - fine.x)) <= 100 * 1e-8
    assert np.max(np.abs(fine.x - reference_trajectory.x)) <= 100 * 5e-9


def test_adaptive_error_follows_tolerance():
    params = LienardParams(k=0.0, lam=1.0)
    errors = []
    for tol in (1e-6, 1e-6 / 16):
        traj = integrate(params, StatePoint(x=1.0, v=0.0), 20.0, tol)
        errors.append(float(np.max(np.abs(traj.x - np.cos(traj.times)))))
    # четыре деления допуска пополам дают хотя бы 4x
    assert errors[0] / errors[1] >= 4.0
    assert errors[0] <= 1e-5


@pytest.mark.parametrize(
    ("t_end", "tol", "samples"),
    [(0.0, 1e-10, 256), (-1.0, 1e-10, 256), (1.0, 1e-2, 256), (1.0, 1e-14, 256), (1.0, 1e-10, 100)],
)
def test_integrate_rejects_bad_arguments(t_end, tol, samples):
    with pytest.raises(DomainError):
        integrate(LienardParams(k=1.0, lam=1.0), StatePoint(x=0.1, v=0.0), t_end, tol, samples_per_period=samples)


@pytest.mark.parametrize("method", ["RK45", "RK4"])
def test_blow_up_is_reported(method):
    # J = 1 + (k/3)∫U обращается в ноль около t ≈ 0.8: x = U/J уходит в бесконечность
    with pytest.raises(BlowUp):
        integrate(LienardParams(k=1.0, lam=1.0), StatePoint(x=0.0, v=-10.0), 5.0, 1e-8, method=method)


def test_trajectory_validation():
    with pytest.raises(ValueError):
        Trajectory(times=[0.0], x=[0.0], v=[0.0])
    with pytest.raises(ValueError):
        Trajectory(times=[0.0, 0.0], x=[0.0, 1.0], v=[0.0, 1.0])
    traj = Trajectory(times=[0.0, 1.0], x=[0.0, 1.0], v=[1.0, 1.0])
    with pytest.raises(ValueError):
        traj.x[0] = 5.0


def test_nonlocal_transform_is_harmonic(reference_trajectory, lienard):
    series = nonlocal_transform(reference_trajectory, lienard)
    assert harmonic_residual(series, lienard) <= 1e-6
    assert series.quadrature_error <= 1e-9

    # U(0) = x0, U'(0) = v0 + (k/3) x0²
    t = series.times
    expected = 0.1 * np.cos(t) + (0.0 + 0.01 / 3.0) * np.sin(t)
    assert np.max(np.abs(series.U - expected)) <= 1e-7


def test_running_integral_of_harmonic_motion():
    traj = integrate(LienardParams(k=0.0, lam=1.0), StatePoint(x=1.0, v=0.0), 2.0 * math.pi, 1e-10)
    series = nonlocal_transform(traj, LienardParams(k=0.0, lam=1.0))
    assert np.max(np.abs(series.running_integral - np.sin(traj.times))) <= 1e-8
    np.testing.assert_allclose(series.U, traj.x)


def test_harmonic_residual_edge_cases(lienard):
    resting = integrate(lienard, StatePoint(x=0.0, v=0.0), 5.0, 1e-10)
    assert harmonic_residual(nonlocal_transform(resting, lienard), lienard) == 0.0

    times = np.array([0.0, 0.1, 0.3, 0.4, 0.5, 0.6])
    uneven = TransformSeries(times=times, U=np.cos(times), running_integral=np.sin(times))
    with pytest.raises(DomainError):
        harmonic_residual(uneven, lienard)
