import json

import pytest

from lml import verify as V
from lml.cli import strip_timing


def _ok(rep):
    assert rep.status == "pass", json.dumps(rep.to_json(), indent=1, default=str)[:3000]


def test_report_schema():
    rep = V.verify_kr(3)
    js = rep.to_json()
    assert set(js) >= {"theorem", "params", "status", "evidence", "ms"}
    assert js["theorem"] == "kr" and js["params"] == {"n": 3}
    for ev in js["evidence"]:
        assert set(ev) == {"name", "ok", "detail"}
    json.dumps(js)


@pytest.mark.parametrize("name,call", [
    ("kr", lambda: V.verify_kr(3)),
    ("extreme", lambda: V.verify_extreme_count(5)),
    ("vanishing", lambda: V.verify_vanishing(3)),
    ("chart", lambda: V.verify_chart(3, 1, 3)),
    ("worst-fiber", lambda: V.verify_worst_fiber(3, 1, 3)),
    ("torsion", lambda: V.verify_torsion("c1", 3, 1, 3)),
    ("splitting", lambda: V.verify_splitting(3, 1, 3)),
    ("nonnormal", lambda: V.verify_nonnormality_witness(3, 1, 1)),
    ("drinfeld", lambda: V.verify_regular_drinfeld(2, 3)),
    ("hs", lambda: V.verify_hs(1, 3)),
    ("sort-lemma", lambda: V.verify_sort_lemma(2, 2)),
    ("normalization", lambda: V.verify_normalization(2, 3)),
    ("elliptic", lambda: V.verify_elliptic(3)),
])
def test_harness_passes(name, call):
    _ok(call())


def test_not_applicable_cases():
    assert V.verify_torsion("c1", 4, 1, 3).status == "not-applicable"
    assert V.verify_nonnormality_witness(3, 2, 0).status == "not-applicable"
    sp = V.verify_splitting(4, 1, 3)
    assert sp.status == "pass" and sp.notes


def test_splitting_cyclotomic():
    _ok(V.verify_splitting(4, 1, 7))


def test_torsion_hs():
    _ok(V.verify_torsion("hs", 2, None, 3))


def test_witness_alcoves():
    assert V.witness_alcove(4, 1, 0).rows == ((0, 1, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0), (1, 1, 1, 1))
    assert V.witness_alcove(4, 2, 0).rows == ((0, 1, 1, 0), (1, 1, 1, 0), (1, 1, 1, 1), (1, 2, 1, 1))


def test_budget_abort_is_never_a_pass():
    rep = V.verify_torsion("c1", 3, 1, 3, budget=5)
    assert rep.status == "budget"


def test_failure_is_reported():
    with V._run("demo", {}) as rep:
        rep.add("always false", False)
    assert rep.status == "fail"


def test_evidence_is_replayable():
    a = strip_timing(V.verify_torsion("c1", 3, 1, 3).to_json())
    b = strip_timing(V.verify_torsion("c1", 3, 1, 3).to_json())
    assert a == b


def test_lift_battery_small():
    rep = V.verify_lift(2, 1, 3, 4)
    _ok(rep)
    assert rep.notes
