import numpy as np
import pytest

from branchon.models.params import Branch, LienardParams, StatePoint, TypeIIModel
from branchon.models.spectral import BasisSpec, GridSpec, RadialProblem
from branchon.services.classical.dynamics import integrate


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def lienard() -> LienardParams:
    return LienardParams(k=1.0, lam=1.0)


@pytest.fixture(scope="session")
def reference_trajectory():
    """k = 1, λ = 1, x0 = 0.1, v0 = 0 на [0, 20] с tol = 1e-10."""
    return integrate(LienardParams(k=1.0, lam=1.0), StatePoint(x=0.1, v=0.0), 20.0, 1e-10)


def make_problem(
    s: float = 6.0,
    lam: float = 1.0,
    branch: Branch = Branch.PLUS,
    method: str = "basis",
    linear_term: bool = True,
    **specs,
) -> RadialProblem:
    return RadialProblem(
        model=TypeIIModel(s=s, lam=lam),
        branch=branch,
        method=method,
        linear_term=linear_term,
        grid=specs.get("grid", GridSpec()),
        basis=specs.get("basis", BasisSpec()),
    )


@pytest.fixture
def problem_factory():
    return make_problem
