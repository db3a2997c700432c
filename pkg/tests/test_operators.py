import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliflat.clifford import CliffordDomainError, blade
from cliflat.operators import (
    ZERO,
    I,
    OperatorParseError,
    Power,
    Prim,
    angular,
    apply,
    comm,
    dirac,
    euler,
    euler_composed,
    fdiff,
    fdiff_op,
    parse,
    raise_,
    sheffer_map,
    to_text,
    weight,
    weight_op,
)
from cliflat.poly import CliffordPoly, LatticeParams, monomial_basis
from cliflat.rational import Q


def const(P, c):
    return CliffordPoly.constant(P, c)


@pytest.fixture(params=[Q(1), Q(1, 3)])
def h(request):
    return request.param


def test_fdiff_examples(h):
    P = LatticeParams(1, h=h)
    x = CliffordPoly.var(P, 1)
    assert fdiff(x, 1, "+") == const(P, 1)
    assert fdiff(x * x, 1, "+") == x.scale(2) + const(P, h)
    assert fdiff(x * x, 1, "-") == x.scale(2) - const(P, h)
    with pytest.raises(CliffordDomainError):
        fdiff(x, 2, "+")


def test_weight_examples(h):
    P = LatticeParams(1, h=h)
    one, x = const(P, 1), CliffordPoly.var(P, 1)
    assert weight(one, 1, "+") == x + const(P, h / 2)
    assert weight(one, 1) == x
    assert weight(one, 1, "-") == x - const(P, h / 2)


def test_weight_uses_mu_and_b():
    P = LatticeParams(1, h=Q(1), mu=Q(2), b=Q(3))
    one, x = const(P, 1), CliffordPoly.var(P, 1)
    # mu^-1 w(x + h/2) = x + 1/2 + 3/2
    assert weight(one, 1, "+") == x + const(P, 2)


def test_dirac_examples():
    P1, P2 = LatticeParams(1), LatticeParams(2)
    assert dirac(const(P2, 1), "+").is_zero()
    x1e1 = CliffordPoly.monomial(P1, (1,), blade(1))
    assert dirac(x1e1, "-") == const(P1, -1)
    assert dirac(CliffordPoly.var(P2, 1), "+") == CliffordPoly.monomial(P2, (0, 0), blade(1))


def test_euler_examples(h):
    P = LatticeParams(1, h=h)
    x = CliffordPoly.var(P, 1)
    assert euler(const(P, 1), "+").is_zero()
    w1 = (x + const(P, h / 2)).scale(1 / h)
    assert euler(w1, "+") == w1
    assert euler(x, "-") == x - const(P, h / 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_euler_forms_agree(n):
    P = LatticeParams(n, Q(2, 3), Q(-3), Q(1, 2))
    for p in monomial_basis(P, 3, [0]):
        for s in "+-":
            assert euler(p, s) == euler_composed(p, s)


def test_raise_examples():
    P1, P2 = LatticeParams(1), LatticeParams(2)
    assert raise_(const(P1, 1), "+") == CliffordPoly.monomial(P1, (1,), blade(1)) + CliffordPoly.monomial(
        P1, (0,), blade(1), Q(1, 2)
    )
    assert raise_(CliffordPoly.zero(P1), "-").is_zero()
    x1 = CliffordPoly.var(P2, 1)
    assert raise_(x1 * x1, "+").degree == 3


def test_angular_examples():
    P = LatticeParams(2)
    x1, x2 = CliffordPoly.var(P, 1), CliffordPoly.var(P, 2)
    assert angular(x2, 1, 2, "+") == x1 + const(P, Q(1, 2))
    assert angular(const(P, 1), 1, 2, "+").is_zero()
    assert angular(x1 * x2, 1, 2, "+") == -angular(x1 * x2, 2, 1, "+")
    with pytest.raises(CliffordDomainError):
        angular(x1, 1, 1, "+")


def test_sheffer_examples(h):
    P = LatticeParams(1, h=h)
    x = CliffordPoly.var(P, 1)
    assert sheffer_map(const(P, 1), "+") == const(P, 1)
    assert sheffer_map(x, "+") == x + const(P, h / 2)
    # W+ (W+ 1) = (x + h/2) * ((x + h) + h/2)
    assert sheffer_map(x * x, "+") == (x + const(P, h / 2)) * (x + const(P, 3 * h / 2))
    with pytest.raises(CliffordDomainError):
        sheffer_map(CliffordPoly.monomial(P, (1,), blade(1)), "+")


def test_apply_structure():
    P = LatticeParams(2)
    p = CliffordPoly.monomial(P, (2, 1), blade(1, 2), Q(3, 4))
    assert apply(I, p) == p
    assert apply(Power(fdiff_op("+", 1), 0), p) == p
    A = fdiff_op("+", 1)
    assert apply(A + (-A), p).is_zero()
    assert apply(ZERO, p).is_zero()
    for j in (1, 2):
        for k in (1, 2):
            got = apply(comm(fdiff_op("+", j), weight_op(k, "-")), p)
            assert got == (p if j == k else CliffordPoly.zero(P))


TEXTS = [
    "I",
    "(fdiff + 1)",
    "(weight 2)",
    "(weight - 2)",
    "(angular + 1 2)",
    "(hpow -1)",
    "(commutator (fdiff + 1) (weight - 2))",
    "(compose (euler +) (scale -1/2 (sum (dirac -) I)))",
    "(power (raise +) 3)",
]


@pytest.mark.parametrize("text", TEXTS)
def test_text_roundtrip(text):
    assert to_text(parse(text)) == text


@pytest.mark.parametrize(
    "text",
    ["", "(", "(fdiff 1)", "(euler + 1)", "(scale 2/4 I)", "(nope)", "(power I -1)", "I I", "(weight * 1)"],
)
def test_parse_rejects(text):
    with pytest.raises(OperatorParseError):
        parse(text)


_prims = st.sampled_from(
    [fdiff_op("+", 1), fdiff_op("-", 2), weight_op(1), weight_op(2, "+"), Prim("euler", "-"), Prim("dirac", "+"), I]
)
_ops = st.recursive(
    _prims,
    lambda kids: st.one_of(
        st.tuples(kids, kids).map(lambda t: t[0] @ t[1]),
        st.tuples(kids, kids).map(lambda t: t[0] + t[1]),
        st.tuples(st.fractions(max_denominator=5).filter(bool), kids).map(lambda t: Q(t[0]) * t[1]),
        st.tuples(kids, kids).map(lambda t: comm(t[0], t[1])),
        st.tuples(kids, st.integers(0, 2)).map(lambda t: t[0] ** t[1]),
    ),
    max_leaves=5,
)


@given(_ops)
def test_random_expression_roundtrip(op):
    assert parse(to_text(op)) == op


@given(_ops, st.integers(0, 5), st.integers(0, 5), st.fractions(max_denominator=4))
def test_apply_is_linear(op, i, j, c):
    P = LatticeParams(2, Q(1, 2))
    basis = monomial_basis(P, 2)
    p, q = basis[i], basis[j + 6]
    c = Q(c)
    assert apply(op, p.scale(c) + q) == apply(op, p).scale(c) + apply(op, q)
