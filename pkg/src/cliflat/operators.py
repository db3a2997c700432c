"""Finite-difference operators on Clifford polynomials, as functions and as data.

The functions (:func:`fdiff`, :func:`weight`, :func:`dirac`, ...) act directly
on :class:`~cliflat.poly.CliffordPoly`. The :class:`Op` tree wraps them so
that identities can be built, printed, parsed and evaluated generically::

    >>> A = comm(fdiff_op("+", 1), weight_op(1, "-"))
    >>> to_text(A)
    '(commutator (fdiff + 1) (weight - 1))'

Every weight below is ``mu^-1 w(x_j + c) = x_j + c + b/mu``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .clifford import CliffordDomainError
from .poly import CliffordPoly, Key, _add_into, _check_axis, _sign, shift
from .rational import Q, as_q, format_q, parse_q

__all__ = [
    "Commutator",
    "Compose",
    "I",
    "Identity",
    "Op",
    "OperatorParseError",
    "Power",
    "Prim",
    "Scale",
    "Sum",
    "ZERO",
    "angular",
    "apply",
    "cderiv",
    "comm",
    "dirac",
    "euler",
    "euler_composed",
    "fdiff",
    "parse",
    "raise_",
    "sheffer_map",
    "to_text",
    "weight",
]


# ---------------------------------------------------------------------------
# primitive actions


def fdiff(p: CliffordPoly, j: int, sign) -> CliffordPoly:
    """Forward (``+``) or backward (``-``) difference along axis ``j``."""
    s = _sign(sign)
    inv_h = 1 / p.params.h
    if s > 0:
        return (shift(p, j, "+") - p).scale(inv_h)
    return (p - shift(p, j, "-")).scale(inv_h)


def weight(p: CliffordPoly, j: int, kind: str | None = None) -> CliffordPoly:
    """``W_j`` (kind ``None``), ``W_h^{+j}`` (``"+"``) or ``W_h^{-j}`` (``"-"``)."""
    _check_axis(p.params, j)
    beta = p.params.offset
    if kind is None:
        return p.times_linear(j, beta)
    s = _sign(kind)
    half = p.params.h / 2
    return shift(p, j, s).times_linear(j, beta + s * half)


def _weighted_diff(p: CliffordPoly, weight_axis: int, diff_axis: int, s: int) -> CliffordPoly:
    # mu^-1 w(x_weight +- h/2) * fdiff_{+-}(p, diff_axis)
    beta = p.params.offset
    return fdiff(p, diff_axis, s).times_linear(weight_axis, beta + s * p.params.h / 2)


def euler(p: CliffordPoly, sign) -> CliffordPoly:
    """``E_h^{+-} = sum_j mu^-1 w(x_j +- h/2) d_h^{+-j}``."""
    s = _sign(sign)
    out = CliffordPoly.zero(p.params)
    for j in range(1, p.n + 1):
        out = out + _weighted_diff(p, j, j, s)
    return out


def euler_composed(p: CliffordPoly, sign) -> CliffordPoly:
    """The same operator written as ``sum_j W_h^{+-j} d_h^{-+j}``."""
    s = _sign(sign)
    out = CliffordPoly.zero(p.params)
    for j in range(1, p.n + 1):
        out = out + weight(fdiff(p, j, -s), j, "+" if s > 0 else "-")
    return out


def dirac(p: CliffordPoly, sign) -> CliffordPoly:
    """``D_h^{+-} = sum_j e_j d_h^{+-j}`` (left Clifford multiplication)."""
    out = CliffordPoly.zero(p.params)
    for j in range(1, p.n + 1):
        out = out + fdiff(p, j, sign).left_blade(1 << (j - 1))
    return out


def raise_(p: CliffordPoly, sign) -> CliffordPoly:
    """``M_h^{+-} = sum_j e_j W_h^{+-j}``."""
    out = CliffordPoly.zero(p.params)
    kind = "+" if _sign(sign) > 0 else "-"
    for j in range(1, p.n + 1):
        out = out + weight(p, j, kind).left_blade(1 << (j - 1))
    return out


def angular(p: CliffordPoly, j: int, k: int, sign) -> CliffordPoly:
    """``S_jk^{+-h} = w(x_j +- h/2) d^{+-k} - w(x_k +- h/2) d^{+-j}`` (over mu)."""
    _check_axis(p.params, j)
    _check_axis(p.params, k)
    if j == k:
        raise CliffordDomainError(f"angular momentum needs distinct axes, got j = k = {j}")
    s = _sign(sign)
    return _weighted_diff(p, j, k, s) - _weighted_diff(p, k, j, s)


def cderiv(p: CliffordPoly, j: int) -> CliffordPoly:
    """Formal partial derivative in x_j (continuum calculus, tests only)."""
    _check_axis(p.params, j)
    i = j - 1
    out: dict[Key, Q] = {}
    for (a, m), v in p._c.items():
        if a[i]:
            _add_into(out, (a[:i] + (a[i] - 1,) + a[i + 1 :], m), v * a[i])
    return CliffordPoly._raw(p.params, out)


def sheffer_map(p: CliffordPoly, sign) -> CliffordPoly:
    """Linear map ``prod_j x_j^a_j -> prod_j (W_h^{+-j})^a_j 1`` on scalar polynomials."""
    if not p.is_scalar():
        raise CliffordDomainError("Sheffer map is defined on scalar-valued polynomials only")
    kind = "+" if _sign(sign) > 0 else "-"
    out = CliffordPoly.zero(p.params)
    for alpha, _, c in p.items():
        img = CliffordPoly.constant(p.params, 1)
        for j, a in enumerate(alpha, start=1):
            for _ in range(a):
                img = weight(img, j, kind)
        out = out + img.scale(c)
    return out


def _hpow(p: CliffordPoly, k: int) -> CliffordPoly:
    return p.scale(p.params.h**k)


# ---------------------------------------------------------------------------
# operator expressions


class Op:
    """Base of the operator expression tree. Instances are immutable."""

    def __call__(self, p: CliffordPoly) -> CliffordPoly:
        return apply(self, p)

    def __matmul__(self, other: "Op") -> "Op":
        left = self.ops if isinstance(self, Compose) else (self,)
        right = other.ops if isinstance(other, Compose) else (other,)
        return Compose(left + right)

    def __add__(self, other: "Op") -> "Op":
        left = self.ops if isinstance(self, Sum) else (self,)
        right = other.ops if isinstance(other, Sum) else (other,)
        return Sum(left + right)

    def __neg__(self) -> "Op":
        return Scale(Q(-1), self)

    def __sub__(self, other: "Op") -> "Op":
        return self + (-other)

    def __rmul__(self, c) -> "Op":
        return Scale(as_q(c), self)

    def __pow__(self, k: int) -> "Op":
        return Power(self, k)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Identity(Op):
    def __repr__(self):
        return "I"


@dataclass(frozen=True, repr=False)
class Prim(Op):
    kind: str
    sign: str | None = None
    args: tuple[int, ...] = ()

    def __post_init__(self):
        spec = _PRIMS.get(self.kind)
        if spec is None:
            raise OperatorParseError(f"unknown primitive {self.kind!r}")
        signed, nargs = spec
        if self.kind == "weight":
            pass  # W_j is unsigned, W_h^{+-j} signed
        elif signed != (self.sign is not None):
            raise OperatorParseError(f"primitive {self.kind!r} {'needs' if signed else 'takes no'} sign")
        if self.sign not in (None, "+", "-"):
            raise OperatorParseError(f"bad sign {self.sign!r}")
        if len(self.args) != nargs:
            raise OperatorParseError(f"primitive {self.kind!r} takes {nargs} integer argument(s)")

    def __repr__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Compose(Op):
    """``Compose((A, B, C))`` applies ``C`` first."""

    ops: tuple[Op, ...]

    def __repr__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Sum(Op):
    ops: tuple[Op, ...]

    def __repr__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Scale(Op):
    c: Q
    op: Op

    def __repr__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Power(Op):
    op: Op
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise OperatorParseError("negative operator power")

    def __repr__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Commutator(Op):
    a: Op
    b: Op

    def __repr__(self):
        return to_text(self)


I = Identity()
ZERO = Sum(())

# kind -> (signed, number of integer arguments)
_PRIMS = {
    "shift": (True, 1),
    "fdiff": (True, 1),
    "weight": (None, 1),
    "dirac": (True, 0),
    "euler": (True, 0),
    "raise": (True, 0),
    "angular": (True, 2),
    "sheffer": (True, 0),
    "hpow": (False, 1),
    "cderiv": (False, 1),
    "xmul": (False, 1),
    "emul": (False, 1),
}


def comm(a: Op, b: Op) -> Commutator:
    return Commutator(a, b)


def _prim_apply(op: Prim, p: CliffordPoly) -> CliffordPoly:
    k, s, args = op.kind, op.sign, op.args
    if k == "shift":
        return shift(p, args[0], s)
    if k == "fdiff":
        return fdiff(p, args[0], s)
    if k == "weight":
        return weight(p, args[0], s)
    if k == "dirac":
        return dirac(p, s)
    if k == "euler":
        return euler(p, s)
    if k == "raise":
        return raise_(p, s)
    if k == "angular":
        return angular(p, args[0], args[1], s)
    if k == "sheffer":
        return sheffer_map(p, s)
    if k == "hpow":
        return _hpow(p, args[0])
    if k == "cderiv":
        return cderiv(p, args[0])
    if k == "xmul":
        _check_axis(p.params, args[0])
        return p.times_linear(args[0], 0)
    if k == "emul":
        _check_axis(p.params, args[0])
        return p.left_blade(1 << (args[0] - 1))
    raise AssertionError(k)


def apply(op: Op, p: CliffordPoly) -> CliffordPoly:
    """Evaluate an operator expression on a polynomial, exactly.

    Commutators are always evaluated as ``A(B p) - B(A p)``.
    """
    if isinstance(op, Prim):
        return _prim_apply(op, p)
    if isinstance(op, Identity):
        return p
    if isinstance(op, Compose):
        for sub in reversed(op.ops):
            p = apply(sub, p)
        return p
    if isinstance(op, Sum):
        out = CliffordPoly.zero(p.params)
        for sub in op.ops:
            out = out + apply(sub, p)
        return out
    if isinstance(op, Scale):
        return apply(op.op, p).scale(op.c)
    if isinstance(op, Power):
        for _ in range(op.k):
            p = apply(op.op, p)
        return p
    if isinstance(op, Commutator):
        return apply(op.a, apply(op.b, p)) - apply(op.b, apply(op.a, p))
    raise TypeError(f"not an operator expression: {op!r}")


# ---------------------------------------------------------------------------
# convenience constructors


def shift_op(sign: str, j: int) -> Prim:
    return Prim("shift", sign, (j,))


def fdiff_op(sign: str, j: int) -> Prim:
    return Prim("fdiff", sign, (j,))


def weight_op(j: int, sign: str | None = None) -> Prim:
    return Prim("weight", sign, (j,))


def hpow(k: int) -> Prim:
    return Prim("hpow", None, (k,))


def dirac_op(sign: str) -> Prim:
    return Prim("dirac", sign)


def euler_op(sign: str) -> Prim:
    return Prim("euler", sign)


def raise_op(sign: str) -> Prim:
    return Prim("raise", sign)


def angular_op(sign: str, j: int, k: int) -> Prim:
    return Prim("angular", sign, (j, k))


def total_weight(n: int, sign: str | None = None) -> Op:
    """``W_h^{+-} = sum_j W_h^{+-j}`` or ``W = sum_j W_j``."""
    return Sum(tuple(weight_op(j, sign) for j in range(1, n + 1)))


def scaled_weight(n: int, sign: str | None = None) -> Op:
    """``(1/h) W_h^{+-}`` or ``(1/h) W``: the su(1,1) generators."""
    return hpow(-1) @ total_weight(n, sign)


def euler_composed_op(n: int, sign: str) -> Op:
    other = "-" if sign == "+" else "+"
    return Sum(tuple(weight_op(j, sign) @ fdiff_op(other, j) for j in range(1, n + 1)))


# ---------------------------------------------------------------------------
# text form


class OperatorParseError(ValueError):
    pass


def to_text(op: Op) -> str:
    if isinstance(op, Identity):
        return "I"
    if isinstance(op, Prim):
        parts = [op.kind]
        if op.sign is not None:
            parts.append(op.sign)
        parts.extend(str(a) for a in op.args)
        return "(" + " ".join(parts) + ")"
    if isinstance(op, Compose):
        return "(compose" + "".join(" " + to_text(o) for o in op.ops) + ")"
    if isinstance(op, Sum):
        return "(sum" + "".join(" " + to_text(o) for o in op.ops) + ")"
    if isinstance(op, Scale):
        return f"(scale {format_q(op.c)} {to_text(op.op)})"
    if isinstance(op, Power):
        return f"(power {to_text(op.op)} {op.k})"
    if isinstance(op, Commutator):
        return f"(commutator {to_text(op.a)} {to_text(op.b)})"
    raise TypeError(f"not an operator expression: {op!r}")


_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _tokens(text: str) -> Iterator[str]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise OperatorParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        yield m.group(1)
        pos = m.end()


def parse(text: str) -> Op:
    """Parse the s-expression form produced by :func:`to_text`."""
    toks = list(_tokens(text))
    if not toks:
        raise OperatorParseError("empty operator expression")
    op, pos = _parse_at(toks, 0)
    if pos != len(toks):
        raise OperatorParseError(f"trailing tokens: {' '.join(toks[pos:])}")
    return op


def _int(tok: str) -> int:
    if not re.fullmatch(r"-?[0-9]+", tok):
        raise OperatorParseError(f"expected integer, got {tok!r}")
    return int(tok)


def _parse_at(toks: list[str], pos: int) -> tuple[Op, int]:
    tok = toks[pos]
    if tok == "I":
        return I, pos + 1
    if tok != "(":
        raise OperatorParseError(f"expected '(' or 'I', got {tok!r}")
    if pos + 1 >= len(toks):
        raise OperatorParseError("unterminated expression")
    head = toks[pos + 1]
    pos += 2
    if head in ("compose", "sum"):
        ops = []
        while pos < len(toks) and toks[pos] != ")":
            sub, pos = _parse_at(toks, pos)
            ops.append(sub)
        if pos >= len(toks):
            raise OperatorParseError("unterminated expression")
        return (Compose if head == "compose" else Sum)(tuple(ops)), pos + 1
    if head == "scale":
        try:
            c = parse_q(toks[pos], strict=True)
        except (ValueError, IndexError) as exc:
            raise OperatorParseError(f"bad scale factor: {exc}") from None
        sub, pos = _parse_at(toks, pos + 1)
        return Scale(c, sub), _close(toks, pos)
    if head == "power":
        sub, pos = _parse_at(toks, pos)
        k = _int(toks[pos])
        return Power(sub, k), _close(toks, pos + 1)
    if head == "commutator":
        a, pos = _parse_at(toks, pos)
        b, pos = _parse_at(toks, pos)
        return Commutator(a, b), _close(toks, pos)
    if head in _PRIMS:
        args = []
        sign = None
        while pos < len(toks) and toks[pos] != ")":
            t = toks[pos]
            if t in ("+", "-") and sign is None and not args:
                sign = t
            else:
                args.append(_int(t))
            pos += 1
        if pos >= len(toks):
            raise OperatorParseError("unterminated expression")
        return Prim(head, sign, tuple(args)), pos + 1
    raise OperatorParseError(f"unknown operator head {head!r}")


def _close(toks: list[str], pos: int) -> int:
    if pos >= len(toks) or toks[pos] != ")":
        raise OperatorParseError("expected ')'")
    return pos + 1
