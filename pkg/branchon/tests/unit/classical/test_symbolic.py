"""
Символьные проверки уравнений Эйлера–Лагранжа (sympy): все три лагранжиана дают уравнение Льенара,
а нелокальное преобразование переводит его в гармоническое.
"""

import pytest
import sympy as sp
from sympy.calculus.euler import euler_equations

from branchon.models.params import LienardParams, StatePoint, TypeIIModel, TypeIModel
from branchon.services.classical.branches import (
    curtright_lagrangian,
    type_i_lagrangian,
    type_ii_lagrangian,
)

t = sp.Symbol("t")
k, lam, s = sp.symbols("k lambda s", positive=True)
x = sp.Function("x")(t)
xd, xdd = x.diff(t), x.diff(t, 2)


def _acceleration(lagrangian):
    (equation,) = euler_equations(lagrangian, x, t)
    solutions = sp.solve(equation.lhs, xdd)
    assert len(solutions) == 1
    return solutions[0]


def _lienard_acceleration(kk):
    return -kk * x * xd - kk**2 * x**3 / 9 - lam * x


def _curtright(v):
    w = k * v + k**2 * x**2 / 3 + 3 * lam
    return 27 * lam**3 / (2 * k**2 * w) + 3 * lam * v / (2 * k) - 9 * lam**2 / (2 * k**2)


def _lienard_equivalent(v):
    delta2 = 27 * lam**3 / (2 * k**3)
    return delta2 / (v + k * x**2 / 3 + 3 * lam / k) - sp.sqrt(delta2)


def _type_ii(v, ss):
    return 1 / (ss * (ss * x**2 / 3 + 3 * lam / ss - v))


def test_curtright_lagrangian_gives_lienard_equation():
    assert sp.simplify(_acceleration(_curtright(xd)) - _lienard_acceleration(k)) == 0


def test_type_i_equivalent_gives_lienard_equation():
    assert sp.simplify(_acceleration(_lienard_equivalent(xd)) - _lienard_acceleration(k)) == 0


def test_type_ii_gives_signed_lienard_equation():
    # ẍ - s x ẋ + s² x³/9 + λ x = 0; пресет s = -k возвращает уравнение Льенара
    assert sp.simplify(_acceleration(_type_ii(xd, s)) - _lienard_acceleration(-s)) == 0


def test_nonlocal_transform_is_harmonic():
    integral = sp.Function("I")(t)
    position = integral.diff(t)
    U = position * sp.exp(k * integral / 3)

    third = -k * position * position.diff(t) - k**2 * position**3 / 9 - lam * position
    residual = (U.diff(t, 2) + lam * U).subs(integral.diff(t, 3), third)
    assert sp.simplify(residual) == 0


@pytest.mark.parametrize(("x0", "v0"), [(0.3, -0.2), (-1.1, 0.7)])
def test_library_lagrangians_match_symbolic(x0, v0):
    params = LienardParams(k=1.5, lam=2.0)
    state = StatePoint(x=x0, v=v0)
    values = {k: 1.5, lam: 2.0}
    v = sp.Symbol("v")

    def evaluate(expr):
        return float(expr.subs(x, x0).subs(v, v0).subs(values))

    assert curtright_lagrangian(state, params) == pytest.approx(evaluate(_curtright(v)), rel=1e-12)
    assert type_i_lagrangian(state, TypeIModel.lienard_equivalent(params)) == pytest.approx(
        evaluate(_lienard_equivalent(v)), rel=1e-12
    )
    model = TypeIIModel(s=-1.5, lam=2.0)
    assert type_ii_lagrangian(state, model) == pytest.approx(
        float(_type_ii(v, -1.5).subs(x, x0).subs(v, v0).subs(lam, 2.0)), rel=1e-12
    )
