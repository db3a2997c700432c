"""Exact finite-difference Clifford calculus on the lattice hZ^n.

Clifford-valued polynomials with rational coefficients, the forward and
backward difference, weight, Dirac and Euler operators, the su(1,1) ladder
structure built from them, the semigroup exp(t(E_h^- - E_h^+)) and a
registry of relations checked with zero-residual arithmetic.
"""

from .clifford import CliffordDomainError, Multivector, blade, blade_product
from .evolution import TimePoly, cauchy_verify, semigroup_apply, semigroup_trajectory
from .operators import apply, parse, to_text
from .poly import CliffordPoly, LatticeParams, SchemaError
from .rational import Q, format_q, parse_q
from .su11 import build_appell, build_ladder, eigenspace, fourier_decompose, gamma_s
from .verifier import run_suite

__version__ = "0.1.0"

__all__ = [
    "CliffordDomainError",
    "CliffordPoly",
    "LatticeParams",
    "Multivector",
    "Q",
    "SchemaError",
    "TimePoly",
    "apply",
    "blade",
    "blade_product",
    "build_appell",
    "build_ladder",
    "cauchy_verify",
    "eigenspace",
    "format_q",
    "fourier_decompose",
    "gamma_s",
    "parse",
    "parse_q",
    "run_suite",
    "semigroup_apply",
    "semigroup_trajectory",
    "to_text",
]
