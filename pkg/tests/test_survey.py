from fractions import Fraction

import pytest

from iwasawa_artin.errors import InvalidDiscriminant
from iwasawa_artin.survey import (
    COLUMNS,
    SurveyReport,
    cohen_lenstra,
    ejv,
    heuristic_values,
    rank_failure,
    scan_lambda,
    scan_T,
)
from oracles import euler_function, in_S_oracle


@pytest.fixture(scope="module")
def lam100():
    return scan_lambda(-4, 100)


def test_scan_lambda_rows(lam100):
    ps = [int(r["p"]) for r in lam100.rows]
    assert ps == [p for p in range(3, 100) if all(p % d for d in range(2, p)) and p != 2]
    row5 = next(r for r in lam100.rows if r["p"] == "5")
    assert row5["lambda"] == "one" and row5["gold"] == "eq1"
    s = lam100.summaries
    assert s["count_zero"] + s["count_one"] + s["count_gt1"] + s["count_unknown"] == len(ps)


def test_scan_lambda_gt_one_row():
    rows = scan_lambda(-3, 20).rows
    assert next(r for r in rows if r["p"] == "13")["lambda"] == "gt1"
    assert [r["p"] for r in rows] == ["5", "7", "11", "13", "17", "19"]  # 3 divides w*D


def test_scan_lambda_empty_and_invalid():
    r = scan_lambda(-4, 2)
    assert r.rows == [] and r.summaries["M"] == 0 and r.summaries["split_sum"] == 0
    with pytest.raises(InvalidDiscriminant):
        scan_lambda(-12, 100)


def test_scan_T_matches_root_count():
    rep = scan_T("x^3-x-1", 100)
    S = [int(r["p"]) for r in rep.rows if r["verdict"] != "not_in_s"]
    assert S == [p for p in range(2, 101) if all(p % d for d in range(2, p)) and in_S_oracle((-1, -1, 0), -23, p)]
    assert 13 in S
    curve = rep.summaries["N_T"]
    assert all(a[1] <= b[1] for a, b in zip(curve, curve[1:]))


def test_assume_h_marks_rows():
    rep = scan_T("x^3+4x-1", 200, assume_h=True)
    cert = [r for r in rep.rows if r["verdict"] == "certified"]
    assert cert and all("assumed-h" in r["notes"] and r["hK_source"] == "assumed" for r in cert)
    assert rep.summaries["stained"] == len(cert)
    plain = scan_T("x^3+4x-1", 200)
    assert plain.summaries["certified"] == 0


def test_csv_schema_and_round_trip(lam100):
    text = lam100.to_csv()
    assert text.splitlines()[0] == ",".join(COLUMNS)
    again = SurveyReport.from_csv(text, lam100.metadata)
    assert again.to_csv() == text
    assert again.summaries == lam100.summaries
    j = lam100.to_json()
    assert SurveyReport.from_json(j).to_json() == j


def test_parallel_matches_serial():
    a = scan_T("x^3-x-1", 5000)
    b = scan_T("x^3-x-1", 5000, workers=2)
    assert a.to_csv() == b.to_csv() and a.to_json() == b.to_json()


def test_heuristic_examples():
    assert abs(ejv(5, 0) - 0.76033) < 1e-5
    assert abs(ejv(5, 1) - 0.19008) < 1e-5
    assert rank_failure(1, 2, 5) == Fraction(1, 25)
    hv = heuristic_values(5, 0, 1, 2)
    assert hv.cl == hv.ejv and hv.ejv_error < 1e-40
    with pytest.raises(ValueError):
        heuristic_values(5, 0, 1, 2, t_max=10)


@pytest.mark.parametrize("p", [5, 7, 13, 101])
def test_cohen_lenstra_matches_pentagonal_series(p):
    assert abs(cohen_lenstra(p) - euler_function(1 / p)) < 1e-14


@pytest.mark.parametrize("p", [3, 5, 7])
def test_ejv_mass_sums_to_one(p):
    total = sum(ejv(p, r) for r in range(60))
    assert abs(total - 1) < 1e-12
