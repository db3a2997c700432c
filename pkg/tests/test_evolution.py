import pytest

from cliflat.evolution import (
    TimePoly,
    cauchy_verify,
    intertwine_verify,
    lowering,
    semigroup_apply,
    semigroup_property_verify,
    semigroup_trajectory,
)
from cliflat.poly import CliffordPoly, LatticeParams, SchemaError, monomial_basis
from cliflat.rational import Q


def test_identity_at_zero():
    P = LatticeParams(2, Q(1, 3))
    for p in monomial_basis(P, 3):
        assert semigroup_apply(0, p) == p


def test_joint_eigenfunction_is_stationary():
    P = LatticeParams(2)
    f = CliffordPoly.var(P, 1) - CliffordPoly.var(P, 2)
    assert lowering(f).is_zero()
    assert semigroup_apply(Q(1, 2), f) == f
    rep = cauchy_verify(semigroup_trajectory(f), f)
    assert rep.solves_pde and rep.satisfies_constraint


def test_trajectory_of_x1():
    P = LatticeParams(1)
    x = CliffordPoly.var(P, 1)
    g = semigroup_trajectory(x)
    # (E- - E+) x = (x - 1/2) - (x + 1/2) = -1
    assert g[0] == x and g[1] == CliffordPoly.constant(P, -1) and g.t_degree == 1
    assert g.at(Q(3)) == x - CliffordPoly.constant(P, 3)
    rep = cauchy_verify(g, x)
    assert rep.solves_pde and not rep.satisfies_constraint


def test_timepoly_json():
    P = LatticeParams(2, Q(1, 2))
    g = semigroup_trajectory(monomial_basis(P, 3)[-1])
    assert TimePoly.from_json(g.to_json()) == g
    with pytest.raises(SchemaError):
        TimePoly.from_json({"t_coeffs": [{"power": -1, "poly": CliffordPoly.zero(P).to_json()}]})
    with pytest.raises(SchemaError):
        TimePoly.from_json({"t_coeffs": []})
    assert TimePoly.from_json({"t_coeffs": []}, params=P).is_zero()


def test_timepoly_dt():
    P = LatticeParams(1)
    one = CliffordPoly.constant(P, 1)
    g = TimePoly(P, {0: one, 3: one.scale(2)})
    assert g.dt() == TimePoly(P, {2: one.scale(6)})


@pytest.mark.parametrize("t", [Q(0), Q(1, 2), Q(1), Q(-3, 2)])
def test_intertwining_forms(t):
    P = LatticeParams(2, Q(1, 2), Q(3), Q(1, 7))
    res = intertwine_verify(P, t, 3)
    assert res["euler"].holds
    assert res["weight-conjugated"].holds
    # the printed weight form is only exact where t^2 = t
    assert res["weight"].holds == (t * t == t)


def test_semigroup_properties():
    P = LatticeParams(3, Q(2, 3))
    res = semigroup_property_verify(P, Q(-1, 3), Q(5, 2), 3)
    assert res["semigroup-law"].holds and res["semigroup-inverse"].holds
