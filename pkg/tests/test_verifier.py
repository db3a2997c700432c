import json
from collections import Counter
from pathlib import Path

import pytest

from cliflat.operators import apply, fdiff_op, parse, weight_op
from cliflat.poly import CliffordPoly, LatticeParams
from cliflat.rational import Q
from cliflat.relations import REGISTRY, registry_list
from cliflat.verifier import Instance, Relation, UnknownRelationError, run_suite

CATALOGUE = json.loads((Path(__file__).parent / "relation_catalogue.json").read_text())


def test_registry_floor_and_examples():
    ids = [rid for rid, _, _ in registry_list()]
    assert len(ids) >= 20
    assert len(set(ids)) == len(ids)
    assert "product-rule-forward" in ids and "so-n-invariance" in ids
    assert registry_list() == registry_list()
    assert all(cit and desc for _, cit, desc in registry_list())


def test_catalogue_covered_exactly_once():
    mapped = [rid for section in ("operator-calculus", "su11-structure", "evolution") for rid in CATALOGUE[section].values()]
    counts = Counter(mapped)
    assert all(c == 1 for c in counts.values()), counts
    assert set(mapped) <= set(REGISTRY)
    # every registry entry beyond the catalogue is the Clifford defining relation
    assert set(REGISTRY) - set(mapped) == {"clifford-anticommutation"}


def test_weyl_heisenberg_example():
    rep = run_suite(["weyl-heisenberg"], [LatticeParams(2)], degree=3)
    (res,) = rep.results
    assert res.status == "pass" and res.counterexample is None and res.checked > 0


def test_su11_candidate_adjudication_names_one():
    rep = run_suite(["su11-bracket-Wminus-W"], [LatticeParams(2), LatticeParams(3, Q(1, 2), Q(2), Q(1))], degree=3)
    (res,) = rep.results
    assert res.status == "adjudicated"
    assert res.details["holds"] == ["-(1/h)W_h^-"]
    assert rep.ok


def test_ladder_lowering_table():
    rep = run_suite(["ladder-lowering-constant"], [LatticeParams(1), LatticeParams(3)], degree=2)
    (res,) = rep.results
    assert res.details["holds"] == ["s(s+n-1)"]
    rows = res.details["per_lattice"]["n=3,h=1,mu=1,b=0"]["table"]["+"]
    assert [r["c"] for r in rows[:4]] == ["3", "8", "15", "24"]


def test_unknown_id():
    with pytest.raises(UnknownRelationError):
        run_suite(["nope"], [LatticeParams(2)])


def test_prefix_selection():
    rep = run_suite(["powers"], [LatticeParams(1)], degree=2)
    assert [r.id for r in rep.results] == ["powers-euler-difference", "powers-weight", "powers-mixed"]


def test_byte_identical_reports():
    lat = [LatticeParams(2, Q(1, 3), Q(2), Q(1, 5))]
    a = run_suite("all", lat, degree=3, seed=7).dumps()
    b = run_suite("all", lat, degree=3, seed=7).dumps()
    assert a == b


def test_threads_do_not_change_report():
    lat = [LatticeParams(2)]
    suite = ["weyl-heisenberg", "gamma-triple-path", "semigroup-law"]
    assert run_suite(suite, lat, 3, threads=1).dumps() == run_suite(suite, lat, 3, threads=2).dumps()


def _false_relation():
    # [d+j, W-k] = 2 delta I is false by a factor 2
    def inst(params, rng):
        return [Instance("j=k=1", fdiff_op("+", 1) @ weight_op(1, "-") - weight_op(1, "-") @ fdiff_op("+", 1), Q(2) * parse("I"))]

    return Relation("broken", "deliberately false", "test only", instances=inst)


def test_fail_carries_independently_reproducible_counterexample():
    rep = run_suite(["broken"], [LatticeParams(2, Q(1, 2))], degree=2, registry={"broken": _false_relation()})
    (res,) = rep.results
    assert res.status == "fail" and not rep.ok
    cx = res.counterexample
    p = CliffordPoly.from_json(cx["input"])
    residual = apply(parse(cx["lhs"]), p) - apply(parse(cx["rhs"]), p)
    assert residual
    assert residual == CliffordPoly.from_json(cx["residual"])


def test_min_n_skips():
    rep = run_suite(["so-n-invariance"], [LatticeParams(1)], degree=2)
    (res,) = rep.results
    assert res.checked == 0
    assert "skipped" in res.details["per_lattice"]["n=1,h=1,mu=1,b=0"]


def test_report_matches_schema():
    jsonschema = pytest.importorskip("jsonschema")
    from cliflat.schema import load_schema

    rep = run_suite(["weyl-heisenberg", "casimir-constancy", "broken"], [LatticeParams(2)], 2,
                    registry={**REGISTRY, "broken": _false_relation()})
    jsonschema.validate(json.loads(rep.dumps(timings=True)), load_schema("report"))
