"""Acceptance criteria, each split into the checks it names.

Every check carries ``@pytest.mark.criterion(N)``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import csv
import io
import json
import random
import re
import subprocess
import sys
import time
from pathlib import Path

import pytest

from cliflat.evolution import (
    cauchy_verify,
    intertwine_verify,
    semigroup_property_verify,
    semigroup_trajectory,
)
from cliflat.operators import euler
from cliflat.poly import CliffordPoly, LatticeParams, monomial_basis
from cliflat.rational import Q, format_q
from cliflat.relations import REGISTRY
from cliflat.schema import load_schema
from cliflat.su11 import (
    build_appell,
    build_ladder,
    default_seed,
    eigenspace,
    fourier_decompose,
    gamma_paths,
    gamma_s,
    lowering_constants,
)
from cliflat.verifier import random_poly, run_suite

from .conftest import TRIPLES

GOLDENS = Path(__file__).parent / "goldens"
SWEEP = [LatticeParams(n, h, mu, b) for n in (1, 2, 3) for (h, mu, b) in TRIPLES]
criterion = pytest.mark.criterion


def sweep(ids, degree=4):
    start = time.perf_counter()
    report = run_suite(ids, SWEEP, degree=degree, seed=0)
    return report, time.perf_counter() - start


def assert_all_pass(report):
    bad = [(r.id, r.counterexample) for r in report.results if r.status != "pass"]
    assert not bad, bad


# --------------------------------------------------------------------------- 1

DEFINING = [
    "clifford-anticommutation",
    "translation-interrelation",
    "product-rule-forward",
    "product-rule-backward",
    "weyl-heisenberg",
]


@pytest.fixture(scope="module")
def defining_run():
    return sweep(DEFINING)


@criterion(1)
def test_c1_zero_residual_on_sweep(defining_run):
    report, _ = defining_run
    assert len({(p.h, p.mu, p.b) for p in SWEEP}) >= 3
    assert_all_pass(report)
    # full basis at n = 3, degree 4: 35 monomials times 8 blades
    wh = report.results[DEFINING.index("weyl-heisenberg")]
    assert wh.details["per_lattice"]["n=3,h=1,mu=1,b=0"]["inputs"] >= 35 * 8


@criterion(1)
def test_c1_six_weyl_heisenberg_brackets(std2):
    # the six bracket families, each instantiated for every axis pair
    n = 2
    insts = REGISTRY["weyl-heisenberg"].instances(std2, random.Random(0))
    families = {re.sub(r"\d", "", inst.label) for inst in insts}
    assert len(families) == 6, families
    assert len(insts) == 6 * n * n


@criterion(1)
def test_c1_runtime(defining_run):
    _, elapsed = defining_run
    assert elapsed < 30, elapsed


# --------------------------------------------------------------------------- 2

LEMMA = [
    "w-bracket-plus-minus",
    "w-bracket-plus-w",
    "w-bracket-w-minus",
    "factorized-hamiltonian-plus",
    "factorized-hamiltonian-minus",
]


@criterion(2)
def test_c2_brackets_and_hamiltonians():
    report, _ = sweep(LEMMA)
    assert_all_pass(report)


# --------------------------------------------------------------------------- 3


@criterion(3)
@pytest.mark.parametrize("rid", ["powers-euler-difference", "powers-weight", "powers-mixed"])
def test_c3_powers(rid):
    report, _ = sweep([rid])
    assert_all_pass(report)


# --------------------------------------------------------------------------- 4

ADJUDICATED = ["su11-bracket-Wminus-W", "ladder-lowering-constant", "casimir-constancy"]


@pytest.fixture(scope="module")
def adjudication_run():
    return run_suite(ADJUDICATED, SWEEP, degree=4, seed=0)


@criterion(4)
@pytest.mark.parametrize("rid", ADJUDICATED)
def test_c4_record_matches_golden(adjudication_run, rid):
    (res,) = [r for r in adjudication_run.results if r.id == rid]
    golden = json.loads((GOLDENS / f"{rid}.json").read_text())
    assert json.loads(json.dumps(res.to_json(), sort_keys=True)) == golden


@criterion(4)
def test_c4a_bracket_names_one_candidate(adjudication_run):
    res = adjudication_run.results[0]
    assert res.status == "adjudicated" and len(res.details["holds"]) == 1


@criterion(4)
def test_c4b_lowering_constant_uniform():
    for n in (1, 2, 3):
        for h, mu, b in TRIPLES:
            P = LatticeParams(n, h, mu, b)
            for sign in "+-":
                consts = lowering_constants(build_ladder(sign, default_seed(P), 6))
                assert sorted(consts) == list(range(1, 7))
                hits = {
                    "s(s+n+1)": all(c == s * (s + n + 1) for s, c in consts.items()),
                    "s(s+n-1)": all(c == s * (s + n - 1) for s, c in consts.items()),
                }
                assert sum(hits.values()) == 1, (P, sign, consts)


@criterion(4)
def test_c4c_casimir_recorded(adjudication_run):
    res = adjudication_run.results[2]
    assert "constant-in-s" in res.details["holds"]
    for key, d in res.details["per_lattice"].items():
        n = int(key.split(",")[0][2:])
        assert d["n^2/4 - n/2"] == format_q(Q(n * n, 4) - Q(n, 2))
        for rows in d["table"].values():
            assert {r["kappa"] for r in rows} == {d["n^2/4 - n/2"]}
            assert all(r["kappa_minus_label"] is not None for r in rows)


@criterion(4)
def test_c4_records_do_not_fail_the_build(adjudication_run):
    assert adjudication_run.ok


# --------------------------------------------------------------------------- 5


@criterion(5)
def test_c5_appell_lowering():
    assert_all_pass(sweep(["appell-property"])[0])
    for n in (1, 2, 3):
        seq = build_appell(LatticeParams(n), "+", 6)
        assert len(seq) == 7


@criterion(5)
def test_c5_binomial_three_times():
    report, _ = sweep(["appell-binomial"])
    assert_all_pass(report)
    assert len(report.results[0].details["per_lattice"]["n=1,h=1,mu=1,b=0"]["t"]) == 3


# --------------------------------------------------------------------------- 6

GAMMA_RANGE = [(s, n) for n in range(6) for s in range(21)]


def _nonsingular():
    return [gp for gp in (gamma_paths(s, n) for s, n in GAMMA_RANGE) if gp.singular is None]


@criterion(6)
def test_c6_direct_equals_2f1():
    bad = [(gp.s, gp.n) for gp in _nonsingular() if gp.direct != gp.hyp2f1]
    assert not bad, bad


@criterion(6)
def test_c6_direct_equals_0f1():
    bad = [(gp.s, gp.n) for gp in _nonsingular() if gp.direct != gp.hyp0f1]
    assert not bad, f"{len(bad)} mismatching (s, n) pairs, first {bad[:5]}"


@criterion(6)
def test_c6_goldens():
    assert all(gamma_s(0, n) == 1 for n in range(6))
    assert gamma_s(1, 2) == -1


# --------------------------------------------------------------------------- 7


@criterion(7)
def test_c7_eigenspace_examples():
    P2 = LatticeParams(2)
    eb = eigenspace(P2, 1, 1)
    x1, x2 = CliffordPoly.var(P2, 1), CliffordPoly.var(P2, 2)
    assert len(eb.basis) == 1
    (v,) = eb.basis
    c = v.coeff((1, 0))
    assert c != 0 and v == (x1 - x2).scale(c)
    assert len(eigenspace(LatticeParams(1), 1, 1).basis) == 0


@criterion(7)
def test_c7_fourier_reconstruction():
    P = LatticeParams(2)
    rng = random.Random("fourier-acceptance")
    for _ in range(20):
        p = random_poly(P, rng.randint(0, 3), rng, terms=5)
        for sign in "+-":
            total = CliffordPoly.zero(P)
            for comp in fourier_decompose(p, sign):
                total = total + comp.component
            assert total == p


# --------------------------------------------------------------------------- 8

PAIRS = [(Q(1, 2), Q(1, 3)), (Q(-1), Q(2)), (Q(3, 4), Q(-5, 6)), (Q(0), Q(7, 2)), (Q(-2, 9), Q(-4, 5))]
TIMES = (Q(0), Q(1, 2), Q(1))
EVO_LATTICES = [LatticeParams(2), LatticeParams(3, Q(1, 3), Q(2), Q(1, 5))]


@criterion(8)
@pytest.mark.parametrize("t,tau", PAIRS)
def test_c8_semigroup_law_and_inverse(t, tau):
    for P in EVO_LATTICES:
        checks = semigroup_property_verify(P, t, tau, 4)
        assert all(c.holds for c in checks.values()), checks


@criterion(8)
@pytest.mark.parametrize("t", TIMES, ids=str)
def test_c8_intertwining_euler(t):
    for P in EVO_LATTICES:
        assert intertwine_verify(P, t, 3)["euler"].holds


@criterion(8)
@pytest.mark.parametrize("t", TIMES, ids=str)
def test_c8_intertwining_weight(t):
    for P in EVO_LATTICES:
        assert intertwine_verify(P, t, 3)["weight"].holds, f"fails at t={t}, n={P.n}"


@criterion(8)
def test_c8_pde_residual_degree_5():
    for P in EVO_LATTICES:
        for p in monomial_basis(P, 5, [0, 1]):
            rep = cauchy_verify(semigroup_trajectory(p), p)
            assert rep.solves_pde


@criterion(8)
def test_c8_joint_eigenfunctions_stationary():
    for P in EVO_LATTICES:
        for s in range(4):
            for f in eigenspace(P, 3, s).basis:
                g = semigroup_trajectory(f)
                assert g.t_degree == 0 and g[0] == f
                assert euler(f, "+") == euler(f, "-")


# --------------------------------------------------------------------------- 9


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "cliflat.cli", *argv], capture_output=True, text=True)


@criterion(9)
def test_c9_verify_all_defaults():
    start = time.perf_counter()
    first = cli("verify", "--suite", "all")
    elapsed = time.perf_counter() - start
    assert first.returncode == 0, first.stderr
    assert elapsed < 60, elapsed
    second = cli("verify", "--suite", "all")
    assert second.stdout == first.stdout
    import jsonschema

    jsonschema.validate(json.loads(first.stdout), load_schema("report"))


CLI_RUNS = {
    "list-relations": (["list-relations"], "relations"),
    "gamma": (["gamma"], "gamma"),
    "appell": (["appell", "--h", "1/3", "--b", "1/5"], "appell"),
    "ladder": (["ladder", "--n", "3"], "ladder"),
}


@criterion(9)
@pytest.mark.parametrize("cmd", list(CLI_RUNS))
def test_c9_schemas_and_determinism(cmd):
    import jsonschema

    argv, schema = CLI_RUNS[cmd]
    a, b = cli(*argv), cli(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout
    jsonschema.validate(json.loads(a.stdout), load_schema(schema))
    c = cli(*argv, "--format", "csv")
    spec = load_schema("csv")["commands"][cmd]
    reader = csv.DictReader(io.StringIO(c.stdout))
    assert reader.fieldnames == spec["columns"]
    for row in reader:
        jsonschema.validate(row, spec["row"])


@criterion(9)
def test_c9_file_commands(tmp_path):
    import jsonschema

    P = LatticeParams(2, Q(1, 2))
    p = random_poly(P, 3, random.Random(3), terms=5)
    path = tmp_path / "p.json"
    path.write_text(p.dumps())
    for argv, schema in ((["decompose", "--input", str(path)], "decompose"), (["evolve", "--input", str(path), "--t", "1/3"], "evolve")):
        a, b = cli(*argv), cli(*argv)
        assert a.returncode == 0 and a.stdout == b.stdout
        jsonschema.validate(json.loads(a.stdout), load_schema(schema))
        c = cli(*argv, "--format", "csv")
        spec = load_schema("csv")["commands"][argv[0]]
        for row in csv.DictReader(io.StringIO(c.stdout)):
            jsonschema.validate(row, spec["row"])


def regenerate_goldens():
    """Rewrite the adjudication goldens; review the diff before committing."""
    report = run_suite(ADJUDICATED, SWEEP, degree=4, seed=0)
    for res in report.results:
        (GOLDENS / f"{res.id}.json").write_text(json.dumps(res.to_json(), sort_keys=True, indent=2) + "\n")


if __name__ == "__main__":
    regenerate_goldens()
