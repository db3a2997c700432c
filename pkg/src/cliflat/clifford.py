"""Clifford algebra Cl(0, n): blades as bitsets, exact multivectors.

A blade e_{j1} e_{j2} ... e_{jr} with j1 < j2 < ... < jr is stored as the
integer whose bit ``j - 1`` is set for every index ``j`` in the product.
The scalar blade is ``0``. Generators square to ``-1``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .rational import Q, as_q, format_q, parse_q

__all__ = [
    "CliffordDomainError",
    "Multivector",
    "bilinear_form",
    "blade",
    "blade_indices",
    "blade_product",
    "grade",
    "mv_mul",
]


class CliffordDomainError(ValueError):
    pass


def blade(*indices: int) -> int:
    """Bitmask for the product of the listed generators (1-based).

    Indices must be distinct; use :func:`blade_product` to multiply words
    with repetitions.
    """
    mask = 0
    for j in indices:
        if j < 1:
            raise CliffordDomainError(f"generator index {j} out of range")
        bit = 1 << (j - 1)
        if mask & bit:
            raise CliffordDomainError(f"repeated generator e{j} in blade")
        mask |= bit
    return mask


def blade_indices(mask: int) -> tuple[int, ...]:
    """Sorted 1-based generator indices of a blade bitmask."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def grade(mask: int) -> int:
    return bin(mask).count("1")


def _reorder_parity(a: int, b: int) -> int:
    # number of pairs (i in a, j in b) with i > j: transpositions needed to sort a*b
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return swaps


def _check_blade(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise CliffordDomainError(f"blade {blade_indices(mask)} not within e1..e{n}")


def blade_product(a: int, b: int, n: int) -> tuple[int, int]:
    """Product of two basis blades: returns ``(sign, blade)``.

    >>> blade_product(blade(2), blade(1), 2)
    (-1, 3)
    """
    _check_blade(a, n)
    _check_blade(b, n)
    return _blade_product(a, b)


def _blade_product(a: int, b: int) -> tuple[int, int]:
    # each shared generator contributes e_j e_j = -1
    parity = _reorder_parity(a, b) + bin(a & b).count("1")
    return (-1 if parity & 1 else 1), a ^ b


class Multivector:
    """Immutable element of Cl(0, n) with exact rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        if n < 0:
            raise CliffordDomainError("dimension must be non-negative")
        self.n = n
        clean: dict[int, Q] = {}
        for mask, c in (terms or {}).items():
            _check_blade(mask, n)
            c = as_q(c)
            if c:
                clean[mask] = clean.get(mask, Q(0)) + c
                if not clean[mask]:
                    del clean[mask]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[int, Q]) -> "Multivector":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def scalar(cls, n: int, value=1) -> "Multivector":
        return cls(n, {0: value})

    @classmethod
    def basis(cls, n: int, *indices: int, coeff=1) -> "Multivector":
        mask = blade(*indices)
        return cls(n, {mask: coeff})

    @classmethod
    def vector(cls, coords: Iterable) -> "Multivector":
        """Grade-1 element sum_j x_j e_j."""
        coords = list(coords)
        return cls(len(coords), {1 << j: c for j, c in enumerate(coords)})

    @property
    def terms(self) -> dict[int, Q]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Q]]:
        return iter(sorted(self._terms.items()))

    def __getitem__(self, mask: int) -> Q:
        return self._terms.get(mask, Q(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def grades(self) -> set[int]:
        return {grade(m) for m in self._terms}

    def _same_dim(self, other: "Multivector") -> None:
        if self.n != other.n:
            raise CliffordDomainError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._same_dim(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Multivector._raw(self.n, out)

    def __neg__(self):
        return Multivector._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        if isinstance(other, float):
            return NotImplemented
        c = as_q(other)
        if not c:
            return Multivector._raw(self.n, {})
        return Multivector._raw(self.n, {m: v * c for m, v in self._terms.items()})

    def __rmul__(self, other):
        if isinstance(other, float):
            return NotImplemented
        return self * other

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.n == other.n and self._terms == other._terms
        if not self._terms.keys() - {0}:
            try:
                return self[0] == as_q(other)
            except (TypeError, ValueError):
                return NotImplemented
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"Multivector({self.n}, 0)"
        parts = []
        for m, c in self.items():
            name = "e" + "".join(map(str, blade_indices(m))) if m else ""
            parts.append(f"{format_q(c)}{'*' + name if name else ''}")
        return f"Multivector({self.n}, {' + '.join(parts)})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"blade": list(blade_indices(m)), "coeff": format_q(c)} for m, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict, path: str = "$") -> "Multivector":
        from .poly import SchemaError  # shared error type for all file formats

        if not isinstance(data, dict) or "n" not in data or "terms" not in data:
            raise SchemaError(path, "expected object with keys 'n' and 'terms'")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError(f"{path}.n", "dimension must be a positive integer")
        return cls._raw(n, terms_from_json(data["terms"], n, f"{path}.terms"))


def terms_from_json(items, n: int, path: str) -> dict[int, Q]:
    from .poly import SchemaError
    from .rational import RationalParseError

    if not isinstance(items, list):
        raise SchemaError(path, "expected a list of blade terms")
    out: dict[int, Q] = {}
    for i, item in enumerate(items):
        here = f"{path}[{i}]"
        if not isinstance(item, dict) or set(item) != {"blade", "coeff"}:
            raise SchemaError(here, "expected object with keys 'blade' and 'coeff'")
        idx = item["blade"]
        if not isinstance(idx, list) or any(not isinstance(j, int) or isinstance(j, bool) for j in idx):
            raise SchemaError(f"{here}.blade", "blade must be a list of integers")
        if idx != sorted(set(idx)):
            raise SchemaError(f"{here}.blade", "blade indices must be strictly increasing")
        if any(j < 1 or j > n for j in idx):
            raise SchemaError(f"{here}.blade", f"blade index out of range 1..{n}")
        try:
            c = parse_q(item["coeff"], strict=True)
        except RationalParseError as exc:
            raise SchemaError(f"{here}.coeff", str(exc)) from None
        if not c:
            raise SchemaError(f"{here}.coeff", "zero coefficients are not stored")
        mask = blade(*idx)
        if mask in out:
            raise SchemaError(f"{here}.blade", "duplicate blade")
        out[mask] = c
    return out


def mv_mul(a: Multivector, b: Multivector) -> Multivector:
    """Geometric product, the bilinear extension of :func:`blade_product`."""
    a._same_dim(b)
    out: dict[int, Q] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            sign, m = _blade_product(ma, mb)
            v = out.get(m, 0) + (ca * cb if sign > 0 else -(ca * cb))
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Multivector._raw(a.n, out)


def bilinear_form(x: Multivector, y: Multivector) -> Q:
    """-(xy + yx)/2 for grade-1 arguments; equals the Euclidean dot product."""
    for name, v in (("x", x), ("y", y)):
        if v and v.grades() != {1}:
            raise CliffordDomainError(f"{name} must be a pure vector (grade 1), has grades {sorted(v.grades())}")
    s = (x * y + y * x) * Q(-1, 2)
    if s.grades() - {0}:
        raise CliffordDomainError("symmetrized product is not scalar")  # unreachable for vectors
    return s[0]
