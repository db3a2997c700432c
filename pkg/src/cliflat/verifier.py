"""Run named relations exactly and assemble deterministic reports.

A relation is one of three kinds:

``identity``
    operator equalities ``lhs == rhs`` evaluated on every monomial-blade
    basis element up to the degree bound plus a few seeded random
    polynomials. Over an exact field this certifies the identity on the
    whole degree-bounded space.
``check``
    a structural property computed by a custom routine (ladders, Appell
    normalization, semigroup laws, ...).
``adjudication``
    several candidate statements of which the report records which hold.
    These never fail a run.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .operators import Op, apply, to_text
from .poly import CliffordPoly, LatticeParams, monomial_basis, multi_indices
from .rational import Q, format_q

__all__ = [
    "Instance",
    "Outcome",
    "Relation",
    "RelationResult",
    "Report",
    "UnknownRelationError",
    "random_poly",
    "run_suite",
]

REPORT_HEADER = (
    "Identities are evaluated with exact rational arithmetic on every monomial-blade "
    "basis element up to the degree bound (plus seeded random polynomials); by linearity "
    "a zero residual on the basis certifies the identity on the whole degree-bounded space."
)


class UnknownRelationError(KeyError):
    pass


PolyMap = Callable[[CliffordPoly], CliffordPoly]


@dataclass(frozen=True)
class Instance:
    """One concrete equality, e.g. a bracket for fixed axes ``j, k``."""

    label: str
    lhs: Op | PolyMap
    rhs: Op | PolyMap
    lhs_text: str | None = None  # required wording for callable sides
    rhs_text: str | None = None

    def evaluate(self, p: CliffordPoly) -> CliffordPoly:
        return _run(self.lhs, p) - _run(self.rhs, p)

    def texts(self) -> tuple[str, str]:
        def one(side, given):
            if given is not None:
                return given
            return to_text(side) if isinstance(side, Op) else self.label

        return one(self.lhs, self.lhs_text), one(self.rhs, self.rhs_text)


def _run(side, p):
    return apply(side, p) if isinstance(side, Op) else side(p)


@dataclass
class Context:
    params: LatticeParams
    degree: int
    seed: int
    relation_id: str

    def rng(self, salt: str = "") -> random.Random:
        p = self.params
        return random.Random(f"{self.seed}|{self.relation_id}|{p}|{salt}")

    def basis(self, scalar_only: bool = False, degree: int | None = None) -> list[CliffordPoly]:
        d = self.degree if degree is None else degree
        return monomial_basis(self.params, d, [0] if scalar_only else None)


@dataclass
class Outcome:
    """What a ``check`` or ``adjudication`` routine hands back."""

    status: str  # pass | fail | singular | adjudicated
    checked: int = 0
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Relation:
    id: str
    citation: str
    description: str
    kind: str = "identity"
    instances: Callable[[LatticeParams, random.Random], list[Instance]] | None = None
    routine: Callable[[Context], Outcome] | None = None
    scalar_only: bool = False
    random_samples: int = 2
    max_degree: int | None = None
    min_n: int = 1

    def __post_init__(self):
        if self.kind not in ("identity", "check", "adjudication"):
            raise ValueError(f"bad relation kind {self.kind!r}")
        if (self.kind == "identity") != (self.instances is not None):
            raise ValueError(f"{self.id}: identities need instances, other kinds a routine")


@dataclass
class RelationResult:
    id: str
    citation: str
    kind: str
    status: str
    checked: int
    counterexample: dict | None
    details: dict
    lattices: list[dict]
    wall_time: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "checked": self.checked,
            "citation": self.citation,
            "counterexample": self.counterexample,
            "details": self.details,
            "id": self.id,
            "kind": self.kind,
            "lattices": self.lattices,
            "status": self.status,
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 6)
        return out


@dataclass
class Report:
    suite: list[str]
    lattices: list[LatticeParams]
    degree: int
    seed: int
    results: list[RelationResult]

    @property
    def failed(self) -> list[RelationResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self, timings: bool = False) -> dict:
        return {
            "header": REPORT_HEADER,
            "params": {
                "degree": self.degree,
                "lattices": [lattice_json(p) for p in self.lattices],
                "seed": self.seed,
            },
            "results": [r.to_json(timings) for r in self.results],
            "suite": list(self.suite),
            "summary": {
                status: sum(1 for r in self.results if r.status == status)
                for status in ("adjudicated", "fail", "pass", "singular")
            },
        }

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), sort_keys=True, indent=2) + "\n"

    def text(self) -> str:
        lines = []
        for r in self.results:
            extra = ""
            if r.kind == "adjudication":
                extra = "  holds: " + (", ".join(r.details.get("holds", [])) or "none")
            lines.append(f"{r.status.upper():<12} {r.id:<36}{extra}")
        s = self.to_json()["summary"]
        lines.append(f"-- {s['pass']} pass, {s['fail']} fail, {s['adjudicated']} adjudicated, {s['singular']} singular")
        return "\n".join(lines) + "\n"


def lattice_json(p: LatticeParams) -> dict:
    return {"n": p.n, **p.to_json()}


# ---------------------------------------------------------------------------
# random inputs


def random_rational(rng: random.Random, height: int = 9) -> Q:
    num = 0
    while num == 0:
        num = rng.randint(-height, height)
    return Q(num, rng.randint(1, height))


def random_poly(
    params: LatticeParams, degree: int, rng: random.Random, terms: int = 4, scalar: bool = False
) -> CliffordPoly:
    """Seeded random polynomial with rational coefficients of bounded height."""
    alphas = multi_indices(params.n, degree)
    out = CliffordPoly.zero(params)
    for _ in range(terms):
        mask = 0 if scalar else rng.randrange(1 << params.n)
        out = out + CliffordPoly.monomial(params, rng.choice(alphas), mask, random_rational(rng))
    return out


# ---------------------------------------------------------------------------
# evaluation


def poly_record(p: CliffordPoly) -> dict:
    return p.to_json()


def _identity_outcome(rel: Relation, ctx: Context) -> Outcome:
    degree = ctx.degree if rel.max_degree is None else min(ctx.degree, rel.max_degree)
    rng = ctx.rng("instances")
    instances = rel.instances(ctx.params, rng)
    inputs = ctx.basis(rel.scalar_only, degree)
    sample_rng = ctx.rng("samples")
    inputs += [random_poly(ctx.params, degree, sample_rng, scalar=rel.scalar_only) for _ in range(rel.random_samples)]
    tally = evaluate_instances(instances, inputs)
    return Outcome(
        "fail" if tally.failures else "pass",
        tally.checked,
        tally.first,
        {"instances": len(instances), "inputs": len(inputs), "failures": tally.failures},
    )


@dataclass
class Tally:
    checked: int = 0
    failures: int = 0
    first: dict | None = None


def evaluate_instances(instances: Sequence[Instance], inputs: Sequence[CliffordPoly]) -> Tally:
    """Evaluate every instance on every input; keep the first counterexample."""
    tally = Tally()
    for inst in instances:
        for p in inputs:
            tally.checked += 1
            res = inst.evaluate(p)
            if res:
                tally.failures += 1
                if tally.first is None:
                    lhs, rhs = inst.texts()
                    tally.first = {
                        "instance": inst.label,
                        "lhs": lhs,
                        "rhs": rhs,
                        "input": poly_record(p),
                        "residual": poly_record(res),
                    }
    return tally


_STATUS_RANK = {"fail": 3, "singular": 2, "adjudicated": 1, "pass": 0}


def run_relation(rel: Relation, lattices: Sequence[LatticeParams], degree: int, seed: int) -> RelationResult:
    start = time.perf_counter()
    status = "pass"
    checked = 0
    counterexample = None
    details: dict = {}
    for params in lattices:
        ctx = Context(params, degree, seed, rel.id)
        if params.n < rel.min_n:
            out = Outcome("pass", 0, None, {"skipped": f"quantified over n >= {rel.min_n}"})
        elif rel.kind == "identity":
            out = _identity_outcome(rel, ctx)
        else:
            out = rel.routine(ctx)
        checked += out.checked
        if _STATUS_RANK[out.status] > _STATUS_RANK[status]:
            status = out.status
        if counterexample is None and out.counterexample is not None:
            counterexample = {"lattice": lattice_json(params), **out.counterexample}
        details[_lattice_key(params)] = out.details
    return RelationResult(
        id=rel.id,
        citation=rel.citation,
        kind=rel.kind,
        status=status,
        checked=checked,
        counterexample=counterexample,
        details=_merge_details(rel, details),
        lattices=[lattice_json(p) for p in lattices],
        wall_time=time.perf_counter() - start,
    )


def _lattice_key(p: LatticeParams) -> str:
    return f"n={p.n},h={format_q(p.h)},mu={format_q(p.mu)},b={format_q(p.b)}"


def _merge_details(rel: Relation, per_lattice: dict) -> dict:
    out: dict = {"per_lattice": per_lattice}
    if rel.kind == "adjudication":
        holds = None
        for d in per_lattice.values():
            if "skipped" in d:
                continue
            cand = set(d.get("holds", []))
            holds = cand if holds is None else holds & cand
        order = []
        for d in per_lattice.values():
            for name in d.get("candidates", []):
                if name not in order:
                    order.append(name)
        out["candidates"] = order
        out["holds"] = [c for c in order if c in (holds or set())]
    return out


def threads_from_env() -> int:
    raw = os.environ.get("CLIFLAT_THREADS")
    if raw is None or raw == "":
        return 1
    if not raw.isdigit() or int(raw) < 1:
        raise ValueError(f"CLIFLAT_THREADS must be a positive integer, got {raw!r}")
    return int(raw)


def _worker(args):
    rid, lattices, degree, seed = args
    from .relations import REGISTRY

    return run_relation(REGISTRY[rid], lattices, degree, seed)


def resolve_suite(selector: Iterable[str] | str, registry: dict[str, Relation]) -> list[str]:
    names = [selector] if isinstance(selector, str) else list(selector)
    out: list[str] = []
    for name in names:
        if name == "all":
            ids = list(registry)
        elif name in registry:
            ids = [name]
        else:
            prefixed = [rid for rid in registry if rid.startswith(name + "-")]
            if not prefixed:
                raise UnknownRelationError(name)
            ids = prefixed
        out.extend(i for i in ids if i not in out)
    return out


def run_suite(
    suite: Iterable[str] | str,
    lattices: Sequence[LatticeParams],
    degree: int = 4,
    seed: int = 0,
    registry: dict[str, Relation] | None = None,
    threads: int | None = None,
) -> Report:
    """Evaluate the selected relations on every lattice parameter set.

    ``suite`` holds relation ids, id prefixes (``"powers"`` selects every
    ``powers-*`` relation) or ``"all"``. Unknown names raise
    :class:`UnknownRelationError`.
    """
    from .relations import REGISTRY

    custom = registry is not None
    registry = REGISTRY if registry is None else registry
    ids = resolve_suite(suite, registry)
    lattices = list(lattices)
    threads = threads_from_env() if threads is None else threads
    if threads > 1 and not custom and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_worker, [(rid, lattices, degree, seed) for rid in ids]))
    else:
        results = [run_relation(registry[rid], lattices, degree, seed) for rid in ids]
    return Report(ids, lattices, degree, seed, results)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
