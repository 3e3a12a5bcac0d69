import json

import pytest

from weilrel.arith.fields import field_create
from weilrel.errors import CapExceeded, ConfigInvalid
from weilrel.galois.cert import PROVEN
from weilrel.survey import (
    SurveyConfig,
    csv_projection,
    export,
    parse_config,
    parse_records,
    records_from_csv,
    records_from_json,
    records_to_csv,
    run_survey,
    survey_parameters,
)
from weilrel.weil import QSymplecticPoly, is_q_symplectic, rh_check


def test_parse_config():
    cfg = parse_config("""
        # comments and blank lines are ignored
        f = 2, 0, 1
        p = 5
        e = 2
        seed = 9
        timing = no
    """)
    assert cfg.f == (2, 0, 1) and cfg.q == 25 and cfg.g == 1 and cfg.seed == 9 and not cfg.timing


@pytest.mark.parametrize("text", [
    "p = 5",
    "f = 2,0,1\np = 4",
    "f = 2,0,1\np = 5\ncolour = red",
    "f = 2,0,1\np = 5\nbits = many",
    "f = 2,0,1\np = 5\nk = 3",
    "f = 1,0,2\np = 5",
    "f = -1,6,1\np = 5",
    "f = 2,0,1\np = 5\njust some words",
])
def test_invalid_configs(text):
    with pytest.raises(ConfigInvalid):
        parse_config(text)


def test_cap():
    with pytest.raises(CapExceeded):
        SurveyConfig((3, 1, 0, 0, 1), 7, 4, cap=10**6)


def test_genus_one_survey_is_consistent():
    report = run_survey(SurveyConfig((2, 0, 1), 5, 2))
    assert len(report.records) == 23
    assert not report.violations()
    for r in report.records:
        P = QSymplecticPoly(r.coeffs[0], 25)
        assert is_q_symplectic(P.coeffs, 25) and rh_check(P)
        if r.cert == PROVEN and not r.trace_zero:
            assert r.rel_verdict != "HasRelations"
    agg = report.aggregate
    assert agg["records"] == 23 and agg["theorem_violations"] == 0
    assert agg["sieve"]["bound"].endswith("×O(1)")


def test_height_cross_check_runs():
    report = run_survey(SurveyConfig((2, 0, 1), 5, 1, height=2))
    assert len(report.records) == 5


def test_pair_sampling_is_seeded():
    cfg = SurveyConfig((2, 0, 1), 5, 2, k=2, work_budget=10, seed=4)
    params, sampled = survey_parameters(cfg)
    assert sampled == 10 and len(params) == 10
    assert params == survey_parameters(SurveyConfig((2, 0, 1), 5, 2, k=2, work_budget=10, seed=4))[0]
    assert params != survey_parameters(SurveyConfig((2, 0, 1), 5, 2, k=2, work_budget=10, seed=5))[0]
    assert all(a < b for a, b in params)


def test_pair_survey():
    report = run_survey(SurveyConfig((2, 0, 1), 5, 1, k=2))
    assert len(report.records) == 10
    assert not report.violations()


def test_parallel_survey_matches_serial():
    serial = run_survey(SurveyConfig((1, 0, 1), 7, 2))
    parallel = run_survey(SurveyConfig((1, 0, 1), 7, 2, jobs=2))
    assert records_to_csv(serial.records) == records_to_csv(parallel.records)


def test_export_round_trips(tmp_path):
    report = run_survey(SurveyConfig((3, 1, 0, 0, 1), 7, 1))
    csv_text = export(report.records, "csv", tmp_path / "r.csv")
    json_text = export(report.records, "json", tmp_path / "r.json", report.aggregate)
    assert (tmp_path / "r.csv").read_text() == csv_text
    back_csv = records_from_csv(csv_text)
    back_json = records_from_json(json_text)
    assert [csv_projection(r) for r in back_csv] == [csv_projection(r) for r in report.records]
    assert back_json == report.records
    assert json.loads(json_text)["aggregate"]["q"] == 7
    assert parse_records(csv_text, "csv") == back_csv
    with pytest.raises(ConfigInvalid):
        export(report.records, "xml")


def test_pair_export_round_trip():
    report = run_survey(SurveyConfig((2, 0, 1), 5, 1, k=2))
    back = records_from_csv(records_to_csv(report.records))
    assert [csv_projection(r) for r in back] == [csv_projection(r) for r in report.records]


def test_timing_columns():
    quiet = run_survey(SurveyConfig((2, 0, 1), 5, 1))
    assert all(r.ms_count == r.ms_cert == r.ms_rel == 0 for r in quiet.records)


@pytest.mark.parametrize("f,p,e", [((2, 0, 1), 5, 2), ((3, 1, 0, 0, 1), 7, 1), ((1, 0, 1), 7, 1)])
def test_record_count_is_the_parameter_count(f, p, e):
    report = run_survey(SurveyConfig(f=f, p=p, e=e, ell_budget=60))
    q = p**e
    roots_of_f = sum(1 for t in range(q) if _eval_in_field(f, t, p, e) == 0)
    assert len(report.records) == q - roots_of_f


def _eval_in_field(f, t, p, e):
    return field_create(p, e).poly_eval(f, t)


def test_larger_ell_budget_never_loses_a_proof():
    base = SurveyConfig(f=(3, 1, 0, 0, 1), p=7, ell_budget=20)
    small = run_survey(base).records
    large = run_survey(SurveyConfig(f=(3, 1, 0, 0, 1), p=7, ell_budget=200)).records
    for a, b in zip(small, large):
        assert a.t == b.t
        if a.cert == PROVEN:
            assert b.cert == PROVEN
    assert sum(r.cert == PROVEN for r in large) >= sum(r.cert == PROVEN for r in small)
