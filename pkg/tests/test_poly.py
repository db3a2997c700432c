import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliflat.clifford import CliffordDomainError, Multivector, blade
from cliflat.poly import (
    CliffordPoly,
    LatticeParams,
    SchemaError,
    monomial_basis,
    multi_indices,
    poly_eval,
    shift,
)
from cliflat.rational import Q


def x(params, j):
    return CliffordPoly.var(params, j)


def test_lattice_params_validation():
    with pytest.raises(CliffordDomainError):
        LatticeParams(0)
    with pytest.raises(CliffordDomainError):
        LatticeParams(2, h=Q(0))
    with pytest.raises(CliffordDomainError):
        LatticeParams(2, mu=Q(0))
    with pytest.raises(TypeError):
        LatticeParams(2, h=0.5)
    p = LatticeParams(1, Q(1, 2), Q(2), Q(1))
    assert p.offset == Q(1, 2)
    assert p.w(3) == 7


def test_poly_eval_examples():
    p1 = LatticeParams(1, h=Q(1, 2))
    assert poly_eval(x(p1, 1), (3,)) == Multivector.scalar(1, Q(3, 2))
    assert poly_eval(CliffordPoly.constant(p1, 1), (-7,)) == Multivector.scalar(1, 1)
    p2 = LatticeParams(2)
    p = CliffordPoly.monomial(p2, (2, 0), blade(1)) + CliffordPoly.monomial(p2, (0, 1), blade(2))
    assert poly_eval(p, (1, 2)) == Multivector(2, {blade(1): 1, blade(2): 2})
    with pytest.raises(CliffordDomainError):
        poly_eval(p, (1,))


def test_shift_examples():
    h = Q(1, 3)
    P = LatticeParams(2, h=h)
    x1, x2 = x(P, 1), x(P, 2)
    assert shift(x1, 1, "+") == x1 + CliffordPoly.constant(P, h)
    assert shift(x1 * x1, 1, "+") == x1 * x1 + x1.scale(2 * h) + CliffordPoly.constant(P, h * h)
    assert shift(x2, 1, "-") == x2
    with pytest.raises(CliffordDomainError):
        shift(x1, 3, "+")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_shift_inverse_on_basis(n):
    P = LatticeParams(n, h=Q(2, 5))
    for p in monomial_basis(P, 6 if n < 3 else 4, [0]):
        for j in range(1, n + 1):
            assert shift(shift(p, j, "+"), j, "-") == p


@given(
    st.lists(st.integers(0, 3), min_size=2, max_size=2),
    st.integers(-4, 4),
    st.integers(-4, 4),
    st.sampled_from([1, 2]),
)
def test_shift_is_evaluation_at_neighbour(alpha, k1, k2, j):
    P = LatticeParams(2, h=Q(3, 2))
    p = CliffordPoly.monomial(P, alpha, blade(1), Q(-2, 7)) + CliffordPoly.constant(P, 5)
    k = [k1, k2]
    kj = list(k)
    kj[j - 1] += 1
    assert poly_eval(shift(p, j, "+"), k) == poly_eval(p, kj)


def test_degree_and_zero():
    P = LatticeParams(2)
    assert CliffordPoly.zero(P).degree == -1
    assert (x(P, 1) * x(P, 2)).degree == 2
    assert not (x(P, 1) - x(P, 1))


def test_clifford_product_of_polys():
    P = LatticeParams(2)
    e1 = CliffordPoly.monomial(P, (0, 0), blade(1))
    e2 = CliffordPoly.monomial(P, (0, 0), blade(2))
    assert (e1 + e2) * (e1 - e2) == CliffordPoly.monomial(P, (0, 0), blade(1, 2), -2)


def test_multi_indices_graded():
    assert multi_indices(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(monomial_basis(LatticeParams(3), 4)) == 35 * 8


def test_json_zero_and_roundtrip():
    P = LatticeParams(2, Q(1, 2), Q(3), Q(-1, 4))
    zero = CliffordPoly.zero(P)
    assert zero.to_json() == {"n": 2, "params": {"b": "-1/4", "h": "1/2", "mu": "3"}, "terms": []}
    p = CliffordPoly.monomial(P, (1, 0), blade(1))
    assert CliffordPoly.loads(p.dumps()) == p


def test_serialization_canonical():
    P = LatticeParams(2)
    a = CliffordPoly.monomial(P, (0, 2), blade(1, 2), 3) + CliffordPoly.monomial(P, (1, 0), 0, Q(1, 2))
    b = CliffordPoly.monomial(P, (1, 0), 0, Q(1, 2)) + CliffordPoly.monomial(P, (0, 2), blade(1, 2), 3)
    assert a.dumps() == b.dumps()


def _doc(terms, n=2):
    return {"n": n, "params": {"b": "0", "h": "1", "mu": "1"}, "terms": terms}


@pytest.mark.parametrize(
    "terms, path",
    [
        ([{"alpha": [1, 0], "coeff": [{"blade": [1], "coeff": "2/4"}]}], "$.terms[0].coeff[0].coeff"),
        ([{"alpha": [-1, 0], "coeff": [{"blade": [], "coeff": "1"}]}], "$.terms[0].alpha"),
        ([{"alpha": [1], "coeff": [{"blade": [], "coeff": "1"}]}], "$.terms[0].alpha"),
        ([{"alpha": [0, 0], "coeff": [{"blade": [3], "coeff": "1"}]}], "$.terms[0].coeff[0].blade"),
        (
            [
                {"alpha": [0, 0], "coeff": [{"blade": [], "coeff": "1"}]},
                {"alpha": [0, 0], "coeff": [{"blade": [1], "coeff": "1"}]},
            ],
            "$.terms[1].alpha",
        ),
    ],
)
def test_json_rejections_name_the_path(terms, path):
    with pytest.raises(SchemaError) as info:
        CliffordPoly.from_json(_doc(terms))
    assert info.value.path == path


def test_json_rejects_bad_params_and_text():
    bad = _doc([])
    bad["params"]["h"] = "0.5"
    with pytest.raises(SchemaError):
        CliffordPoly.from_json(bad)
    with pytest.raises(SchemaError):
        CliffordPoly.loads("{not json")
    with pytest.raises(SchemaError):
        CliffordPoly.from_json(json.loads('{"n": 2, "terms": []}'))
