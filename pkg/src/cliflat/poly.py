"""Clifford-vector-valued polynomials on the lattice hZ^n.

A :class:`CliffordPoly` is a finite sum of terms ``c * x^alpha * e_J`` with
exact rational ``c``. Terms are stored flat, keyed by ``(alpha, J)``, which
keeps the hot paths (shifts, weights) free of per-term Multivector objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .clifford import (
    CliffordDomainError,
    Multivector,
    _blade_product,
    _check_blade,
    blade_indices,
    terms_from_json,
)
from .rational import Q, RationalParseError, as_q, format_q, parse_q

__all__ = [
    "CliffordPoly",
    "LatticeParams",
    "SchemaError",
    "monomial_basis",
    "poly_eval",
    "shift",
]

Alpha = tuple[int, ...]
Key = tuple[Alpha, int]


class SchemaError(ValueError):
    """Malformed serialized input; ``path`` names the offending location."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass(frozen=True)
class LatticeParams:
    """Dimension ``n``, mesh width ``h`` and the weight ``w(t) = mu*t + b``."""

    n: int
    h: Q = Q(1)
    mu: Q = Q(1)
    b: Q = Q(0)

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise CliffordDomainError(f"n must be a positive integer, got {self.n!r}")
        for name in ("h", "mu", "b"):
            object.__setattr__(self, name, as_q(getattr(self, name)))
        if self.h <= 0:
            raise CliffordDomainError("mesh width h must be positive")
        if self.mu == 0:
            raise CliffordDomainError("mu must be nonzero")

    @property
    def offset(self) -> Q:
        """``b/mu``: the constant in ``w(t)/mu = t + b/mu``."""
        return self.b / self.mu

    def w(self, t) -> Q:
        return self.mu * as_q(t) + self.b

    def to_json(self) -> dict:
        return {"b": format_q(self.b), "h": format_q(self.h), "mu": format_q(self.mu)}

    def __str__(self):
        return f"n={self.n} h={format_q(self.h)} mu={format_q(self.mu)} b={format_q(self.b)}"


def _add_into(out: dict, key, value) -> None:
    v = out.get(key)
    v = value if v is None else v + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class CliffordPoly:
    """Immutable polynomial in x_1..x_n with Cl(0, n) coefficients."""

    __slots__ = ("params", "_c", "_hash")

    def __init__(self, params: LatticeParams, terms: Mapping[Alpha, Multivector] | None = None):
        self.params = params
        out: dict[Key, Q] = {}
        for alpha, mv in (terms or {}).items():
            alpha = tuple(alpha)
            self._check_alpha(alpha)
            if not isinstance(mv, Multivector):
                mv = Multivector.scalar(params.n, mv)
            if mv.n != params.n:
                raise CliffordDomainError(f"coefficient dimension {mv.n} != n={params.n}")
            for mask, c in mv._terms.items():
                _add_into(out, (alpha, mask), c)
        self._c = out
        self._hash = None

    def _check_alpha(self, alpha: Alpha) -> None:
        if len(alpha) != self.params.n or any(a < 0 for a in alpha):
            raise CliffordDomainError(f"bad multi-index {alpha} for n={self.params.n}")

    @classmethod
    def _raw(cls, params: LatticeParams, c: dict[Key, Q]) -> "CliffordPoly":
        obj = cls.__new__(cls)
        obj.params = params
        obj._c = c
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, params: LatticeParams) -> "CliffordPoly":
        return cls._raw(params, {})

    @classmethod
    def constant(cls, params: LatticeParams, value=1) -> "CliffordPoly":
        if isinstance(value, Multivector):
            return cls(params, {(0,) * params.n: value})
        c = as_q(value)
        return cls._raw(params, {((0,) * params.n, 0): c} if c else {})

    @classmethod
    def monomial(cls, params: LatticeParams, alpha: Sequence[int], blade: int = 0, coeff=1) -> "CliffordPoly":
        alpha = tuple(alpha)
        p = cls._raw(params, {})
        p._check_alpha(alpha)
        _check_blade(blade, params.n)
        c = as_q(coeff)
        if c:
            p._c[(alpha, blade)] = c
        return p

    @classmethod
    def var(cls, params: LatticeParams, j: int) -> "CliffordPoly":
        _check_axis(params, j)
        alpha = [0] * params.n
        alpha[j - 1] = 1
        return cls.monomial(params, alpha)

    # -- structure ------------------------------------------------------

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def terms(self) -> dict[Alpha, Multivector]:
        """The multi-index -> Multivector view."""
        grouped: dict[Alpha, dict[int, Q]] = {}
        for (alpha, mask), c in self._c.items():
            grouped.setdefault(alpha, {})[mask] = c
        return {a: Multivector._raw(self.n, t) for a, t in sorted(grouped.items())}

    def items(self) -> Iterator[tuple[Alpha, int, Q]]:
        for (alpha, mask), c in sorted(self._c.items()):
            yield alpha, mask, c

    def coeff(self, alpha: Sequence[int], blade: int = 0) -> Q:
        return self._c.get((tuple(alpha), blade), Q(0))

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(a) for a, _ in self._c), default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def blades(self) -> set[int]:
        return {m for _, m in self._c}

    def is_scalar(self) -> bool:
        return self.blades() <= {0}

    def blade_part(self, mask: int) -> "CliffordPoly":
        """Scalar polynomial carrying the coefficient of blade ``mask``."""
        return CliffordPoly._raw(self.params, {(a, 0): c for (a, m), c in self._c.items() if m == mask})

    def with_blade(self, mask: int) -> "CliffordPoly":
        """Scalar polynomial times the basis blade ``mask``."""
        _check_blade(mask, self.n)
        return CliffordPoly._raw(self.params, {(a, mask): c for (a, m), c in self._c.items() if m == 0})

    def with_params(self, params: LatticeParams) -> "CliffordPoly":
        if params.n != self.n:
            raise CliffordDomainError("cannot change dimension")
        return CliffordPoly._raw(params, dict(self._c))

    # -- arithmetic -----------------------------------------------------

    def _compatible(self, other: "CliffordPoly") -> None:
        if self.params != other.params:
            raise CliffordDomainError(f"parameter mismatch: ({self.params}) vs ({other.params})")

    def __add__(self, other):
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        self._compatible(other)
        out = dict(self._c)
        for k, v in other._c.items():
            _add_into(out, k, v)
        return CliffordPoly._raw(self.params, out)

    def __neg__(self):
        return CliffordPoly._raw(self.params, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        self._compatible(other)
        out = dict(self._c)
        for k, v in other._c.items():
            _add_into(out, k, -v)
        return CliffordPoly._raw(self.params, out)

    def scale(self, c) -> "CliffordPoly":
        c = as_q(c)
        if not c:
            return CliffordPoly.zero(self.params)
        return CliffordPoly._raw(self.params, {k: v * c for k, v in self._c.items()})

    def __mul__(self, other):
        """Polynomial product with the geometric product on coefficients.

        A plain rational on either side scales.
        """
        if isinstance(other, CliffordPoly):
            self._compatible(other)
            out: dict[Key, Q] = {}
            for (a1, m1), c1 in self._c.items():
                for (a2, m2), c2 in other._c.items():
                    sign, m = _blade_product(m1, m2)
                    alpha = tuple(x + y for x, y in zip(a1, a2))
                    _add_into(out, (alpha, m), c1 * c2 if sign > 0 else -(c1 * c2))
            return CliffordPoly._raw(self.params, out)
        if isinstance(other, Multivector):
            return self * CliffordPoly.constant(self.params, other)
        if isinstance(other, float):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return CliffordPoly.constant(self.params, other) * self
        if isinstance(other, float):
            return NotImplemented
        return self.scale(other)

    def left_blade(self, mask: int, coeff=1) -> "CliffordPoly":
        """``coeff * e_mask * p`` (left Clifford multiplication)."""
        _check_blade(mask, self.n)
        c = as_q(coeff)
        out: dict[Key, Q] = {}
        for (a, m), v in self._c.items():
            sign, m2 = _blade_product(mask, m)
            _add_into(out, (a, m2), v * c if sign > 0 else -(v * c))
        return CliffordPoly._raw(self.params, out)

    def times_linear(self, j: int, const) -> "CliffordPoly":
        """``(x_j + const) * p``."""
        const = as_q(const)
        i = j - 1
        out: dict[Key, Q] = {}
        for (a, m), v in self._c.items():
            up = a[:i] + (a[i] + 1,) + a[i + 1 :]
            _add_into(out, (up, m), v)
            if const:
                _add_into(out, (a, m), v * const)
        return CliffordPoly._raw(self.params, out)

    # -- equality -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CliffordPoly):
            return self.params == other.params and self._c == other._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"CliffordPoly({self.params}; {self.pretty()})"

    def pretty(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for alpha, mask, c in sorted(self.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]), t[1])):
            mono = "*".join(f"x{j + 1}" + (f"^{a}" if a > 1 else "") for j, a in enumerate(alpha) if a)
            bl = "e" + "".join(map(str, blade_indices(mask))) if mask else ""
            body = "*".join(s for s in (mono, bl) if s)
            if not body:
                parts.append(format_q(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_q(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        """Canonical JSON object (multi-indices and blades sorted)."""
        terms = []
        for alpha, mv in self.terms.items():
            terms.append({"alpha": list(alpha), "coeff": mv.to_json()["terms"]})
        return {"n": self.n, "params": self.params.to_json(), "terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data, path: str = "$") -> "CliffordPoly":
        if not isinstance(data, dict):
            raise SchemaError(path, "expected a JSON object")
        extra = set(data) - {"n", "params", "terms"}
        if extra:
            raise SchemaError(path, f"unexpected keys {sorted(extra)}")
        for key in ("n", "params", "terms"):
            if key not in data:
                raise SchemaError(path, f"missing key {key!r}")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError(f"{path}.n", "dimension must be a positive integer")
        params = _params_from_json(n, data["params"], f"{path}.params")
        items = data["terms"]
        if not isinstance(items, list):
            raise SchemaError(f"{path}.terms", "expected a list")
        out: dict[Key, Q] = {}
        seen = set()
        for i, item in enumerate(items):
            here = f"{path}.terms[{i}]"
            if not isinstance(item, dict) or set(item) != {"alpha", "coeff"}:
                raise SchemaError(here, "expected object with keys 'alpha' and 'coeff'")
            alpha = item["alpha"]
            if not isinstance(alpha, list) or any(not isinstance(a, int) or isinstance(a, bool) for a in alpha):
                raise SchemaError(f"{here}.alpha", "expected a list of integers")
            if len(alpha) != n:
                raise SchemaError(f"{here}.alpha", f"length {len(alpha)} != n={n}")
            if any(a < 0 for a in alpha):
                raise SchemaError(f"{here}.alpha", "negative exponent")
            alpha = tuple(alpha)
            if alpha in seen:
                raise SchemaError(f"{here}.alpha", "duplicate multi-index")
            seen.add(alpha)
            coeff = terms_from_json(item["coeff"], n, f"{here}.coeff")
            if not coeff:
                raise SchemaError(f"{here}.coeff", "zero coefficients are not stored")
            for mask, c in coeff.items():
                out[(alpha, mask)] = c
        return cls._raw(params, out)

    @classmethod
    def loads(cls, text: str) -> "CliffordPoly":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"malformed JSON: {exc}") from None
        return cls.from_json(data)


def _params_from_json(n: int, data, path: str) -> LatticeParams:
    if not isinstance(data, dict) or set(data) != {"h", "mu", "b"}:
        raise SchemaError(path, "expected object with keys 'h', 'mu', 'b'")
    vals = {}
    for key in ("h", "mu", "b"):
        try:
            vals[key] = parse_q(data[key], strict=True)
        except RationalParseError as exc:
            raise SchemaError(f"{path}.{key}", str(exc)) from None
    try:
        return LatticeParams(n, **vals)
    except CliffordDomainError as exc:
        raise SchemaError(path, str(exc)) from None


def _check_axis(params: LatticeParams, j: int) -> None:
    if not isinstance(j, int) or not 1 <= j <= params.n:
        raise CliffordDomainError(f"axis {j} out of range 1..{params.n}")


@lru_cache(maxsize=4096)
def _binomial_row(a: int, c: Q) -> tuple[tuple[int, Q], ...]:
    # (x + c)^a = sum_k C(a, k) c^(a-k) x^k
    return tuple((k, comb(a, k) * c ** (a - k)) for k in range(a + 1) if c or k == a)


def shift_by(p: CliffordPoly, j: int, c) -> CliffordPoly:
    """Substitute ``x_j -> x_j + c``."""
    _check_axis(p.params, j)
    c = as_q(c)
    if not c:
        return p
    i = j - 1
    out: dict[Key, Q] = {}
    for (a, m), v in p._c.items():
        head, tail = a[:i], a[i + 1 :]
        for k, b in _binomial_row(a[i], c):
            _add_into(out, (head + (k,) + tail, m), v * b)
    return CliffordPoly._raw(p.params, out)


def shift(p: CliffordPoly, j: int, sign: str | int) -> CliffordPoly:
    """Translation ``(T_h^{+-j} p)(x) = p(x +- h e_j)``."""
    return shift_by(p, j, p.params.h * _sign(sign))


def _sign(sign: str | int) -> int:
    if sign in ("+", 1, "plus"):
        return 1
    if sign in ("-", -1, "minus"):
        return -1
    raise CliffordDomainError(f"sign must be '+' or '-', got {sign!r}")


def poly_eval(p: CliffordPoly, point: Sequence[int]) -> Multivector:
    """Value at the lattice point ``x = h*k``."""
    if len(point) != p.n:
        raise CliffordDomainError(f"point has {len(point)} coordinates, n={p.n}")
    if any(not isinstance(k, int) or isinstance(k, bool) for k in point):
        raise CliffordDomainError("lattice coordinates must be integers")
    x = [p.params.h * k for k in point]
    out: dict[int, Q] = {}
    for (a, m), v in p._c.items():
        term = v
        for xi, ai in zip(x, a):
            if ai:
                term *= xi**ai
        _add_into(out, m, term)
    return Multivector._raw(p.n, out)


def monomial_basis(params: LatticeParams, degree: int, blades: Iterable[int] | None = None) -> list[CliffordPoly]:
    """All ``x^alpha e_J`` with ``|alpha| <= degree``, graded then lexicographic."""
    n = params.n
    masks = list(range(1 << n)) if blades is None else list(blades)
    return [CliffordPoly.monomial(params, a, m) for a in multi_indices(n, degree) for m in masks]


def multi_indices(n: int, degree: int) -> list[Alpha]:
    out: list[Alpha] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, slots - 1)

    for d in range(degree + 1):
        rec([], d, n)
    return out
