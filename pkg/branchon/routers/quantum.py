from typing import Literal

import numpy as np

from branchon.cli import CommandResult, CommandRouter
from branchon.models.config import RunConfig
from branchon.models.params import Branch, TypeIIModel
from branchon.models.perturbation import EtaDecomposition, EtaReport
from branchon.models.spectral import BasisSpec, GridSpec, RadialProblem
from branchon.services.quantum.perturbation import compare_with_diagonalization, rspt_coefficients
from branchon.services.quantum.spectrum import eigenvalues
from core.executor import run_jobs

router = CommandRouter(tags=["quantum"])


def _problem(config: RunConfig, branch: Branch) -> RadialProblem:
    return RadialProblem(
        model=TypeIIModel(s=config.quantum_s, lam=config.lam),
        branch=branch,
        method=config.method,
        grid=GridSpec(r_max=config.grid_r_max, n_points=config.grid_n_points),
        basis=BasisSpec(size=config.basis_size),
        linear_term=not config.no_linear_term,
    )


@router.command("spectrum", "Lowest levels of the radial problem and their η")
def spectrum(config: RunConfig) -> CommandResult:
    problems = [_problem(config, branch) for branch in config.branches()]
    spectra = run_jobs(lambda problem: eigenvalues(problem, config.count), problems)

    rows = []
    lines = [f"spectrum ({config.method}, s = {config.quantum_s:g}, λ = {config.lam:g}):"]
    for result in spectra:
        for n, (energy, eta, conv) in enumerate(zip(result.E, result.eta, result.convergence_estimate, strict=True)):
            rows.append((n, float(energy), float(eta), result.branch.value, result.method, float(conv)))
        etas = ", ".join(f"{eta:.10g}" for eta in result.eta)
        lines.append(f"  {result.branch.value}: η = {etas}")
    return CommandResult(
        columns=("n", "E", "eta", "branch", "method", "conv_est"),
        rows=rows,
        summary="\n".join(lines),
    )


@router.command("perturb", "Perturbation coefficients of one level")
def perturb(config: RunConfig) -> CommandResult:
    problems = [_problem(config, branch) for branch in config.branches()]
    all_series = run_jobs(lambda problem: rspt_coefficients(config.n, config.order, problem), problems)

    rows = []
    lines = [f"perturb (n = {config.n}, M = {config.order}, s = {config.quantum_s:g}, λ = {config.lam:g}):"]
    for problem, series in zip(problems, all_series, strict=True):
        eta_partial = problem.zero_order_eta(config.n) + problem.s / 12.0 * np.concatenate(
            ([0.0], np.cumsum(series.terms[1:]))
        )
        for m, (coefficient, term, partial, eta) in enumerate(
            zip(series.coefficients, series.terms, series.partial_sums, eta_partial, strict=True)
        ):
            rows.append((m, float(coefficient), float(term), float(partial), float(eta), series.branch.value))
        radius = "n/a" if series.radius_estimate is None else f"{series.radius_estimate:.6g}"
        lines.append(
            f"  {series.branch.value}: η(M) = {eta_partial[-1]:.10g}, g = {series.g:.6g}, "
            f"radius estimate {radius}, basis {series.basis_size}"
        )
    return CommandResult(
        columns=("m", "E_m", "term", "partial_sum", "eta_partial", "branch"),
        rows=rows,
        summary="\n".join(lines),
    )


def _decomposition(config: RunConfig, reports: list[EtaReport], problem: RadialProblem) -> list[str]:
    by_branch = {report.branch: report for report in reports}
    if set(by_branch) != {Branch.PLUS, Branch.MINUS}:
        return []
    sources: tuple[tuple[Literal["series", "diagonalization"], str], ...] = (
        ("series", "eta_series"),
        ("diagonalization", "eta_diag"),
    )
    lines = []
    for source, field in sources:
        decomposition = EtaDecomposition(
            n=config.n,
            order=config.order,
            source=source,
            eta_zero=problem.zero_order_eta(config.n),
            eta_plus=getattr(by_branch[Branch.PLUS], field),
            eta_minus=getattr(by_branch[Branch.MINUS], field),
        )
        lines.append(
            f"  {source}: odd part {decomposition.odd_part:.10g}, even shift {decomposition.even_shift:.10g}"
        )
    return lines


@router.command("compare", "Perturbation series against direct diagonalization")
def compare(config: RunConfig) -> CommandResult:
    problems = [_problem(config, branch) for branch in config.branches()]
    reports = run_jobs(lambda problem: compare_with_diagonalization(config.n, config.order, problem), problems)

    rows = []
    lines = [f"compare (n = {config.n}, M = {config.order}, s = {config.quantum_s:g}, λ = {config.lam:g}):"]
    for report in reports:
        rows.append(
            (
                report.n,
                report.branch.value,
                report.order_used,
                report.eta_series,
                report.eta_diag,
                report.abs_diff,
            )
        )
        lines.append(
            f"  {report.branch.value}: series {report.eta_series:.10g}, diag {report.eta_diag:.10g}, "
            f"|diff| {report.abs_diff:.3e} ({report.rel_diff:.2e} relative)"
        )
    lines.extend(_decomposition(config, reports, problems[0]))
    return CommandResult(
        columns=("n", "branch", "order", "eta_series", "eta_diag", "abs_diff"),
        rows=rows,
        summary="\n".join(lines),
    )
