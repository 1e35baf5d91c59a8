import json

import pytest

from thetasp.suites import SUITES, SuiteResult, orbit_table


def test_suite_result_bookkeeping():
    res = SuiteResult("x")
    res.add("a", "anchor a", True)
    assert res.passed
    res.add("b", "anchor b", False, {"why": 1})
    js = res.to_json()
    assert not res.passed and js["failed"] == 1 and js["total"] == 2
    assert js["checks"][1] == {"id": "b", "anchor": "anchor b", "passed": False, "detail": {"why": 1}}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_with_unique_ids(name):
    res = SUITES[name]()
    assert res.passed, [c.check_id for c in res.checks if not c.passed]
    ids = [c.check_id for c in res.checks]
    assert len(ids) == len(set(ids))
    assert all(c.anchor for c in res.checks)
    json.dumps(res.to_json(), sort_keys=True)


def test_identities_suite_restricted():
    res = SUITES["identities"](5)
    transports = [c for c in res.checks if c.check_id.startswith("transport:")]
    assert transports and all(":n=5," in c.check_id for c in transports)
    star = [c for c in transports if "w0-star" in c.check_id][0]
    assert star.passed and star.detail == {"exact": False, "sign_torus": [1, 1, 1, 1, -1]}


def test_orbit_table_rows():
    rows = orbit_table(6)
    assert all(r["ok"] for r in rows)
    assert {"n": 3, "r": 3, "orbit": [3, 3]}.items() <= rows[[(r["n"], r["r"]) for r in rows].index((3, 3))].items()
