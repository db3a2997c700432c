"""The semigroup exp(t E_h^- - t E_h^+) on polynomials and the lattice
Cauchy problem it solves.

The generator strictly lowers degree, so the exponential series terminates
after ``deg(p) + 1`` terms; this is re-checked on every call.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial
from typing import Callable, Mapping

from .operators import euler
from .poly import CliffordPoly, LatticeParams, SchemaError, monomial_basis
from .rational import Q, as_q
from .su11 import ladder_step

__all__ = [
    "CauchyReport",
    "IdentityCheck",
    "NilpotencyError",
    "TimePoly",
    "cauchy_verify",
    "intertwine_verify",
    "lowering",
    "semigroup_apply",
    "semigroup_property_verify",
    "semigroup_trajectory",
]


class NilpotencyError(ArithmeticError):
    pass


def lowering(p: CliffordPoly) -> CliffordPoly:
    """Generator ``(E_h^- - E_h^+) p`` of the semigroup."""
    return euler(p, "-") - euler(p, "+")


class TimePoly:
    """Polynomial in a formal time ``t`` with CliffordPoly coefficients."""

    __slots__ = ("params", "_coeffs")

    def __init__(self, params: LatticeParams, coeffs: Mapping[int, CliffordPoly] | None = None):
        self.params = params
        clean = {}
        for k, p in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative power of t")
            if p.params != params:
                raise ValueError("coefficient parameters differ from the TimePoly's")
            if p:
                clean[k] = p
        self._coeffs = dict(sorted(clean.items()))

    @property
    def coeffs(self) -> dict[int, CliffordPoly]:
        return dict(self._coeffs)

    def __getitem__(self, k: int) -> CliffordPoly:
        return self._coeffs.get(k, CliffordPoly.zero(self.params))

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def t_degree(self) -> int:
        return max(self._coeffs, default=-1)

    def at(self, t) -> CliffordPoly:
        t = as_q(t)
        out = CliffordPoly.zero(self.params)
        for k, p in self._coeffs.items():
            out = out + p.scale(t**k)
        return out

    def dt(self) -> "TimePoly":
        return TimePoly(self.params, {k - 1: p.scale(k) for k, p in self._coeffs.items() if k})

    def map(self, f: Callable[[CliffordPoly], CliffordPoly]) -> "TimePoly":
        """Apply a spatial operator to every coefficient."""
        return TimePoly(self.params, {k: f(p) for k, p in self._coeffs.items()})

    def __add__(self, other: "TimePoly") -> "TimePoly":
        out = dict(self._coeffs)
        for k, p in other._coeffs.items():
            out[k] = out[k] + p if k in out else p
        return TimePoly(self.params, out)

    def __neg__(self) -> "TimePoly":
        return TimePoly(self.params, {k: -p for k, p in self._coeffs.items()})

    def __sub__(self, other: "TimePoly") -> "TimePoly":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, TimePoly):
            return NotImplemented
        return self.params == other.params and self._coeffs == other._coeffs

    def __repr__(self):
        body = ", ".join(f"t^{k}: {p.pretty()}" for k, p in self._coeffs.items()) or "0"
        return f"TimePoly({body})"

    def to_json(self) -> dict:
        return {"t_coeffs": [{"power": k, "poly": p.to_json()} for k, p in self._coeffs.items()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data, params: LatticeParams | None = None, path: str = "$") -> "TimePoly":
        if not isinstance(data, dict) or set(data) != {"t_coeffs"} or not isinstance(data["t_coeffs"], list):
            raise SchemaError(path, "expected object with a 't_coeffs' list")
        coeffs = {}
        for i, item in enumerate(data["t_coeffs"]):
            here = f"{path}.t_coeffs[{i}]"
            if not isinstance(item, dict) or set(item) != {"power", "poly"}:
                raise SchemaError(here, "expected object with keys 'power' and 'poly'")
            k = item["power"]
            if not isinstance(k, int) or isinstance(k, bool) or k < 0:
                raise SchemaError(f"{here}.power", "power must be a non-negative integer")
            if k in coeffs:
                raise SchemaError(f"{here}.power", "duplicate power")
            poly = CliffordPoly.from_json(item["poly"], f"{here}.poly")
            if params is None:
                params = poly.params
            elif poly.params != params:
                raise SchemaError(f"{here}.poly.params", "inconsistent lattice parameters")
            coeffs[k] = poly
        if params is None:
            raise SchemaError(path, "cannot infer lattice parameters from an empty TimePoly")
        return cls(params, coeffs)


def semigroup_trajectory(p: CliffordPoly) -> TimePoly:
    """``exp(t (E_h^- - E_h^+)) p`` as a polynomial in ``t``."""
    coeffs = {}
    cur = p
    for r in range(p.degree + 2):
        if r == p.degree + 1:
            if cur:
                raise NilpotencyError(f"lowering^{r} of a degree-{p.degree} polynomial is nonzero")
            break
        coeffs[r] = cur.scale(Q(1, factorial(r)))
        cur = lowering(cur)
    return TimePoly(p.params, coeffs)


def semigroup_apply(t, p: CliffordPoly) -> CliffordPoly:
    return semigroup_trajectory(p).at(t)


@dataclass(frozen=True)
class CauchyReport:
    pde_residual: TimePoly
    initial_slice: CliffordPoly
    initial_residual: CliffordPoly | None
    constraint_residual: TimePoly

    @property
    def solves_pde(self) -> bool:
        return self.pde_residual.is_zero() and (self.initial_residual is None or self.initial_residual.is_zero())

    @property
    def satisfies_constraint(self) -> bool:
        return self.constraint_residual.is_zero()


def cauchy_verify(g: TimePoly, f: CliffordPoly | None = None) -> CauchyReport:
    """Residuals of ``d_t g + E_h^+ g - E_h^- g = 0``, ``g(0) = f`` and ``E_h^+ g = E_h^- g``."""
    diff = g.map(lambda p: euler(p, "+") - euler(p, "-"))
    slice0 = g[0]
    return CauchyReport(
        pde_residual=g.dt() + diff,
        initial_slice=slice0,
        initial_residual=None if f is None else slice0 - f,
        constraint_residual=diff,
    )


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of checking ``lhs(p) == rhs(p)`` on a basis."""

    name: str
    checked: int
    failures: int
    counterexample: tuple[CliffordPoly, CliffordPoly] | None  # (basis element, residual)

    @property
    def holds(self) -> bool:
        return self.failures == 0


def check_on_basis(name: str, basis, lhs, rhs) -> IdentityCheck:
    failures = 0
    first = None
    for p in basis:
        res = lhs(p) - rhs(p)
        if res:
            failures += 1
            if first is None:
                first = (p, res)
    return IdentityCheck(name, len(basis), failures, first)


def intertwine_forms(t, n: int) -> dict[str, tuple[Callable, Callable]]:
    """The two printed intertwining identities plus the conjugation formula
    obtained from the brackets directly."""
    t = as_q(t)
    E = lambda p: semigroup_apply(t, p)  # noqa: E731

    def euler_side(p):
        q = E(p)
        return euler(q, "-").scale(t) + euler(q, "+").scale(1 - t)

    def w_printed(p):
        q = E(p)
        return ladder_step(q, "+") - (euler(q, "+") + euler(q, "-") + q.scale(n)).scale(t)

    def w_conjugated(p):
        q = E(p)
        lower = euler(q, "+") - euler(q, "-")
        return ladder_step(q, "+") - (euler(q, "+").scale(2) + q.scale(n)).scale(t) + lower.scale(t * t)

    return {
        "euler": (euler_side, lambda p: E(euler(p, "+"))),
        "weight": (w_printed, lambda p: E(ladder_step(p, "+"))),
        "weight-conjugated": (w_conjugated, lambda p: E(ladder_step(p, "+"))),
    }


def intertwine_verify(params: LatticeParams, t, d: int) -> dict[str, IdentityCheck]:
    """Check both intertwining identities (and the conjugation formula) on the
    monomial-blade basis of degree <= d."""
    basis = monomial_basis(params, d)
    return {
        name: check_on_basis(name, basis, lhs, rhs) for name, (lhs, rhs) in intertwine_forms(t, params.n).items()
    }


def semigroup_property_verify(params: LatticeParams, t, tau, d: int) -> dict[str, IdentityCheck]:
    """``E(t + tau) = E(t) E(tau)`` and ``E(-t) E(t) = I`` on the degree <= d basis."""
    t, tau = as_q(t), as_q(tau)
    basis = monomial_basis(params, d)
    return {
        "semigroup-law": check_on_basis(
            "semigroup-law", basis, lambda p: semigroup_apply(t + tau, p), lambda p: semigroup_apply(t, semigroup_apply(tau, p))
        ),
        "semigroup-inverse": check_on_basis(
            "semigroup-inverse", basis, lambda p: semigroup_apply(-t, semigroup_apply(t, p)), lambda p: p
        ),
    }
