"""Ladder bases, Appell sequences, Casimir, gamma coefficients and the
joint-eigenspace (Fourier) decomposition.

The operators E_h^{+-}, W and W_h^{+-} are Clifford-scalar, so eigenspace
work is done on scalar polynomials and tensored with the blades afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from .linalg import nullspace, rref, solve
from .operators import dirac, euler, raise_, weight
from .poly import CliffordPoly, LatticeParams, _sign, multi_indices
from .rational import Q

__all__ = [
    "AlmansiRecord",
    "AppellSequence",
    "DecompositionError",
    "EigenBasis",
    "FourierComponent",
    "GammaPaths",
    "LadderBasis",
    "PreconditionError",
    "SingularParameterError",
    "almansi_reconstruct",
    "appell_binomial_residual",
    "build_appell",
    "build_ladder",
    "casimir_apply",
    "casimir_constants",
    "eigenspace",
    "fourier_decompose",
    "gamma_paths",
    "gamma_s",
    "ladder_step",
    "lowering_constants",
    "pochhammer",
    "ratio",
]


class SingularParameterError(ArithmeticError):
    """A Pochhammer factor in a denominator vanished."""

    def __init__(self, s: int, n: int, factor: int, where: str = "gamma"):
        super().__init__(f"{where}: singular at s={s}, n={n} (denominator factor index {factor} is zero)")
        self.s, self.n, self.factor, self.where = s, n, factor, where


class PreconditionError(ValueError):
    def __init__(self, message: str, residual: CliffordPoly | None = None):
        super().__init__(message)
        self.residual = residual


class DecompositionError(ArithmeticError):
    def __init__(self, message: str, residual: CliffordPoly):
        super().__init__(message)
        self.residual = residual


def ratio(p: CliffordPoly, q: CliffordPoly) -> Q | None:
    """``c`` with ``p == c*q`` exactly, or ``None``. Undefined (None) for q = 0."""
    if q.is_zero():
        return None
    (key, qv) = next(iter(sorted(q._c.items())))
    c = p._c.get(key, Q(0)) / qv
    return c if p == q.scale(c) else None


# ---------------------------------------------------------------------------
# hypergeometric coefficients


def pochhammer(a, r: int) -> Q:
    """Rising factorial ``a (a+1) ... (a+r-1)``; ``(a)_0 = 1``."""
    if r < 0:
        raise ValueError("Pochhammer index must be non-negative")
    a = Q(a)
    out = Q(1)
    for i in range(r):
        out *= a + i
    return out


def _denominator_check(c: int, s: int, n: int, where: str) -> None:
    # (c)_r for r <= s vanishes iff c + i = 0 for some i < s
    for i in range(s):
        if c + i == 0:
            raise SingularParameterError(s, n, i, where)


def gamma_direct(s: int, n: int) -> Q:
    c = -2 * s - n + 2
    _denominator_check(c, s, n, "direct")
    return sum(
        (Q((-1) ** r) * pochhammer(-s - n - 1, r) / pochhammer(c, r) * comb(s, r) for r in range(s + 1)),
        Q(0),
    )


def gamma_2f1(s: int, n: int) -> Q:
    """Terminating 2F1(a, b; c; 1) with a = -s-n-1, b = -s, c = -2s-n+2."""
    a, b, c = -s - n - 1, -s, -2 * s - n + 2
    _denominator_check(c, s, n, "2F1")
    total = Q(0)
    term = Q(1)
    for r in range(s + 1):
        total += term
        if r < s:  # ratio of consecutive terms at z = 1; b = -s terminates the series
            term = term * (a + r) * (b + r) / ((c + r) * (r + 1))
    return total


def gamma_0f1(s: int, n: int) -> Q:
    """``[0F1(c; d/dt) t^s]_{t=1}`` computed by differentiating t^s."""
    c = -2 * s - n + 2
    _denominator_check(c, s, n, "0F1")
    poly = [Q(0)] * s + [Q(1)]  # coefficients of t^0..t^s
    total = Q(0)
    r = 0
    while any(poly):
        total += sum(poly, Q(0)) / (pochhammer(c, r) * factorial(r))
        poly = [poly[i] * i for i in range(1, len(poly))]
        r += 1
    return total


@dataclass(frozen=True)
class GammaPaths:
    s: int
    n: int
    direct: Q | None
    hyp2f1: Q | None
    hyp0f1: Q | None
    singular: SingularParameterError | None = None

    @property
    def status(self) -> str:
        if self.singular is not None:
            return "singular"
        return "ok" if self.direct == self.hyp2f1 == self.hyp0f1 else "mismatch"


def gamma_paths(s: int, n: int) -> GammaPaths:
    """Evaluate the coefficient by all three routes."""
    if s < 0 or n < 0:
        raise ValueError("s and n must be non-negative")
    try:
        return GammaPaths(s, n, gamma_direct(s, n), gamma_2f1(s, n), gamma_0f1(s, n))
    except SingularParameterError as exc:
        return GammaPaths(s, n, None, None, None, exc)


def gamma_s(s: int, n: int) -> Q:
    """The coefficient by direct summation; raises on singular (s, n)."""
    if s < 0 or n < 0:
        raise ValueError("s and n must be non-negative")
    return gamma_direct(s, n)


# ---------------------------------------------------------------------------
# ladders


def ladder_step(p: CliffordPoly, sign) -> CliffordPoly:
    """``(1/h) W_h^{+-} p``."""
    kind = "+" if _sign(sign) > 0 else "-"
    out = CliffordPoly.zero(p.params)
    for j in range(1, p.n + 1):
        out = out + weight(p, j, kind)
    return out.scale(1 / p.params.h)


def euler_difference(p: CliffordPoly) -> CliffordPoly:
    """``(E_h^+ - E_h^-) p``."""
    return euler(p, "+") - euler(p, "-")


def _joint_kernel_residual(m0: CliffordPoly) -> CliffordPoly | None:
    for s in ("+", "-"):
        r = euler(m0, s)
        if r:
            return r
    return None


@dataclass(frozen=True)
class LadderBasis:
    sign: str
    seed: CliffordPoly
    polys: tuple[CliffordPoly, ...]

    def __getitem__(self, s: int) -> CliffordPoly:
        return self.polys[s]

    def __len__(self):
        return len(self.polys)


def build_ladder(sign, m0: CliffordPoly, s_max: int) -> LadderBasis:
    """``w_s = ((1/h) W_h^{+-})^s m0`` for s = 0..s_max, eigenvalues checked."""
    sign = "+" if _sign(sign) > 0 else "-"
    res = _joint_kernel_residual(m0)
    if res is not None:
        raise PreconditionError("seed is not in the joint kernel of E_h^+ and E_h^-", res)
    polys = [m0]
    for _ in range(s_max):
        polys.append(ladder_step(polys[-1], sign))
    for s, w in enumerate(polys):
        if euler(w, sign) != w.scale(s):
            raise ArithmeticError(f"E_h^{sign} w_{s} != {s} w_{s}")
    return LadderBasis(sign, m0, tuple(polys))


def lowering_constants(ladder: LadderBasis) -> dict[int, Q | None]:
    """``c`` with ``(E_h^+ - E_h^-) w_s = c w_{s-1}`` (None if not proportional)."""
    out = {}
    for s in range(1, len(ladder)):
        out[s] = ratio(euler_difference(ladder[s]), ladder[s - 1])
    return out


# ---------------------------------------------------------------------------
# Appell sequences


@dataclass(frozen=True)
class AppellSequence:
    sign: str
    lambdas: tuple[Q, ...]
    polys: tuple[CliffordPoly, ...]
    constants: tuple[Q, ...]  # constants[s-1] = c_s with D u_s = c_s u_{s-1}

    def __getitem__(self, s: int) -> CliffordPoly:
        return self.polys[s]

    def __len__(self):
        return len(self.polys)

    @property
    def lowering_sign(self) -> str:
        return "-" if self.sign == "+" else "+"


def build_appell(params: LatticeParams, sign, s_max: int) -> AppellSequence:
    """Normalize ``u_s = (M_h^{+-})^s 1`` so that ``D_h^{-+} m_s = s m_{s-1}``."""
    sign = "+" if _sign(sign) > 0 else "-"
    down = "-" if sign == "+" else "+"
    u = [CliffordPoly.constant(params, 1)]
    consts: list[Q] = []
    lambdas = [Q(1)]
    for s in range(1, s_max + 1):
        u.append(raise_(u[-1], sign))
        c = ratio(dirac(u[s], down), u[s - 1])
        if c is None:
            raise ArithmeticError(f"D_h^{down} u_{s} is not a multiple of u_{s - 1}")
        if c == 0:
            raise ArithmeticError(f"normalization impossible: c_{s} = 0")
        consts.append(c)
        lambdas.append(lambdas[-1] * s / c)
    polys = tuple(ui.scale(lam) for ui, lam in zip(u, lambdas))
    return AppellSequence(sign, tuple(lambdas), polys, tuple(consts))


def appell_binomial_residual(seq: AppellSequence, s: int, t) -> CliffordPoly:
    """``exp(t D) m_s - sum_r C(s, r) t^r m_{s-r}`` with D the lowering Dirac operator."""
    t = Q(t)
    lhs = CliffordPoly.zero(seq[0].params)
    cur = seq[s]
    r = 0
    while cur:
        lhs = lhs + cur.scale(t**r / factorial(r))
        cur = dirac(cur, seq.lowering_sign)
        r += 1
    rhs = CliffordPoly.zero(seq[0].params)
    for r in range(s + 1):
        rhs = rhs + seq[s - r].scale(comb(s, r) * t**r)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Casimir


def casimir_apply(p: CliffordPoly, series) -> CliffordPoly:
    """Series realization ``(E + n/2)(E + n/2 - 1) - (W_h/h)(E_h^+ - E_h^-)``.

    ``E`` and ``W_h`` carry the sign of the series.
    """
    sign = "+" if _sign(series) > 0 else "-"
    half_n = Q(p.n, 2)
    inner = euler(p, sign) + p.scale(half_n - 1)
    first = euler(inner, sign) + inner.scale(half_n)
    return first - ladder_step(euler_difference(p), sign)


def casimir_constants(ladder: LadderBasis) -> dict[int, Q | None]:
    """Eigenvalue of the series Casimir on each ``w_s`` (None if not an eigenvector)."""
    return {s: ratio(casimir_apply(w, ladder.sign), w) for s, w in enumerate(ladder.polys)}


# ---------------------------------------------------------------------------
# joint eigenspaces and the Fourier decomposition


@dataclass(frozen=True)
class EigenBasis:
    params: LatticeParams
    degree: int
    eigenvalue: int
    basis: tuple[CliffordPoly, ...]  # scalar polynomials

    def clifford_basis(self) -> list[CliffordPoly]:
        """The scalar basis tensored with every blade."""
        return [b.with_blade(m) for b in self.basis for m in range(1 << self.params.n)]

    def __len__(self):
        return len(self.basis)


def _descending_monomials(n: int, d: int) -> list[tuple[int, ...]]:
    return sorted(multi_indices(n, d), key=lambda a: (sum(a), a), reverse=True)


def _coords(p: CliffordPoly, index: dict) -> list[Q]:
    v = [Q(0)] * len(index)
    for (a, m), c in p._c.items():
        v[index[a]] = c
    return v


@lru_cache(maxsize=256)
def eigenspace(params: LatticeParams, d: int, s: int) -> EigenBasis:
    """Basis of ``{p scalar : E_h^+ p = E_h^- p = s p, deg p <= d}``.

    Returned in reduced echelon form with monomials ordered by descending
    degree, so the basis is canonical.
    """
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    monos = _descending_monomials(params.n, d)
    index = {a: i for i, a in enumerate(monos)}
    cols = []
    for a in monos:
        m = CliffordPoly.monomial(params, a)
        cols.append(_coords(euler(m, "+") - m.scale(s), index) + _coords(euler(m, "-") - m.scale(s), index))
    rows = [list(r) for r in zip(*cols)]
    null = nullspace(rows, len(monos))
    basis: list[CliffordPoly] = []
    if null:
        red, _ = rref(null, len(monos))
        for vec in red:
            basis.append(CliffordPoly._raw(params, {(monos[i], 0): c for i, c in enumerate(vec) if c}))
    return EigenBasis(params, d, s, tuple(basis))


@dataclass(frozen=True)
class FourierComponent:
    s: int
    r: int
    seed: CliffordPoly  # in the joint eigenspace for eigenvalue s - r
    component: CliffordPoly  # ((1/h) W_h^{+-})^r seed


def fourier_decompose(p: CliffordPoly, sign, bound: int | None = None) -> list[FourierComponent]:
    """Write ``p = sum_{s,r} ((1/h) W_h^{+-})^r q_{s,r}`` with ``q_{s,r}`` joint
    eigenfunctions of eigenvalue ``s - r``.

    Components are returned for each nonzero ``(s, r)``, ordered by ``(s, r)``.
    """
    sign = "+" if _sign(sign) > 0 else "-"
    D = p.degree if bound is None else bound
    if p.degree > D:
        raise ValueError(f"degree {p.degree} exceeds bound {D}")
    if p.is_zero():
        return []
    params = p.params
    labels: list[tuple[int, int, CliffordPoly]] = []
    columns: list[CliffordPoly] = []
    for k in range(D + 1):
        for q in eigenspace(params, k, k).basis:
            raised = q
            for r in range(D - k + 1):
                labels.append((k + r, r, q))
                columns.append(raised)
                raised = ladder_step(raised, sign)
    monos = _descending_monomials(params.n, D)
    index = {a: i for i, a in enumerate(monos)}
    matrix = [list(row) for row in zip(*(_coords(c, index) for c in columns))]
    found: dict[tuple[int, int], tuple[CliffordPoly, CliffordPoly]] = {}
    for mask in sorted(p.blades()):
        part = p.blade_part(mask)
        sol, _ = solve(matrix, _coords(part, index))
        if sol is None:
            raise DecompositionError(f"blade {mask}: no decomposition at n={params.n}, degree {D}", part)
        for (s, r, q), col, c in zip(labels, columns, sol):
            if not c:
                continue
            seed = q.with_blade(mask).scale(c) if mask else q.scale(c)
            comp = col.with_blade(mask).scale(c) if mask else col.scale(c)
            if (s, r) in found:
                old_seed, old_comp = found[(s, r)]
                seed, comp = old_seed + seed, old_comp + comp
            found[(s, r)] = (seed, comp)
    out = [FourierComponent(s, r, sd, cp) for (s, r), (sd, cp) in sorted(found.items()) if cp]
    total = CliffordPoly.zero(params)
    for c in out:
        total = total + c.component
    if total != p:
        raise DecompositionError("reconstruction mismatch", p - total)
    return out


def decomposition_rank(params: LatticeParams, D: int, sign) -> tuple[int, int, int]:
    """``(rank, columns, dim P_D)`` of the raised-eigenbasis system (scalar part)."""
    sign = "+" if _sign(sign) > 0 else "-"
    columns = []
    for k in range(D + 1):
        for q in eigenspace(params, k, k).basis:
            raised = q
            for _ in range(D - k + 1):
                columns.append(raised)
                raised = ladder_step(raised, sign)
    monos = _descending_monomials(params.n, D)
    index = {a: i for i, a in enumerate(monos)}
    _, piv = rref([_coords(c, index) for c in columns], len(monos)) if columns else ([], [])
    return len(piv), len(columns), len(monos)


# ---------------------------------------------------------------------------
# the reconstruction recursion with coefficients c_{r,s}


def almansi_coefficients(s: int, n: int) -> list[Q]:
    """``c_{0,s} = 1``, ``c_{r+1,s} = c_{r,s} / ((r+1)(-2s-n+r+2))``."""
    out = [Q(1)]
    for r in range(s):
        den = (r + 1) * (-2 * s - n + r + 2)
        if den == 0:
            raise SingularParameterError(s, n, r, "reconstruction")
        out.append(out[-1] / den)
    return out


@dataclass(frozen=True)
class AlmansiRecord:
    s: int
    sign: str
    m_s: CliffordPoly
    coefficients: tuple[Q, ...]
    eigen_plus: bool
    eigen_minus: bool
    ratio_to_w: Q | None
    gamma: Q | None
    matches_gamma: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def verified(self) -> bool:
        return self.eigen_plus and self.eigen_minus


def almansi_reconstruct(s: int, sign, w_s: CliffordPoly) -> AlmansiRecord:
    """``m_s = sum_r c_{r,s} ((1/h) W_h^{+-})^r (E_h^+ - E_h^-)^r w_s``, checked.

    The recursion is taken as printed; failures are recorded, never raised
    (except a vanishing denominator in the coefficients).
    """
    sign = "+" if _sign(sign) > 0 else "-"
    n = w_s.n
    coeffs = almansi_coefficients(s, n)
    m = CliffordPoly.zero(w_s.params)
    for r, c in enumerate(coeffs):
        tilde = w_s
        for _ in range(r):
            tilde = euler_difference(tilde)
        for _ in range(r):
            tilde = ladder_step(tilde, sign)
        m = m + tilde.scale(c)
    notes = []
    try:
        g = gamma_s(s, n)
    except SingularParameterError as exc:
        g = None
        notes.append(str(exc))
    rho = ratio(m, w_s)
    if m.is_zero():
        rho = Q(0)
        notes.append("reconstruction is the zero polynomial")
    return AlmansiRecord(
        s=s,
        sign=sign,
        m_s=m,
        coefficients=tuple(coeffs),
        eigen_plus=euler(m, "+") == m.scale(s),
        eigen_minus=euler(m, "-") == m.scale(s),
        ratio_to_w=rho,
        gamma=g,
        matches_gamma=g is not None and m == w_s.scale(g),
        notes=tuple(notes),
    )


def default_seed(params: LatticeParams) -> CliffordPoly:
    return CliffordPoly.constant(params, 1)

