import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpfaff.identities import (
    ACCEPTANCE,
    IDENTITIES,
    UnsupportedRequest,
    classical_check,
    confluence_check,
    run_suite,
    verify_identity,
)
from qpfaff.ncalg import corrupted, generic_spec
from qpfaff.report import REPORT_KEYS, Report


def test_examples():
    assert verify_identity("det_rc_eq", 3).holds
    assert verify_identity("pf_rdet", 4).holds
    rep = verify_identity("maya", 4, "generic")
    assert not rep.holds and rep.residual_terms > 0


@pytest.mark.parametrize(
    "name,size,regime",
    [
        ("det_commutation", 2, "generic"),
        ("laplace", 3, "generic"),
        ("cramer", 3, "generic"),
        ("grouplike", 2, "generic"),
        ("phi", 2, "generic"),
        ("manin", 2, "generic"),
        ("maya", 4, "q-inverse"),
        ("maya_neg", 4, "q-negative"),
        ("pf_simplified", 4, "q-negative"),
        ("hf_per", 4, "q-negative"),
        ("hf_oracle", 4, "q-negative"),
        ("det_rc_eq", 3, "numeric"),
    ],
)
def test_identities_hold(name, size, regime):
    rep = verify_identity(name, size, regime)
    assert rep.holds, rep.text()
    assert (rep.identity, rep.size, rep.regime) == (name, size, regime)


def test_numeric_parameters():
    assert verify_identity("pf_rdet", 4, "numeric", r=2, s=3).holds
    # one-parameter Maya holds exactly when r^2 s^2 = 1
    assert verify_identity("maya", 4, "numeric", r=3, s="1/3").holds
    assert not verify_identity("maya", 4, "numeric", r=3, s=2).holds


def test_request_validation():
    with pytest.raises(UnsupportedRequest, match="unknown identity"):
        verify_identity("nope", 2)
    with pytest.raises(UnsupportedRequest, match="cap"):
        verify_identity("det_rc_eq", 5)
    with pytest.raises(UnsupportedRequest, match="cap"):
        verify_identity("pf_rdet", 8)
    with pytest.raises(UnsupportedRequest, match="even"):
        verify_identity("pf_rdet", 3)
    with pytest.raises(UnsupportedRequest, match="regime"):
        verify_identity("hf_per", 4, "generic")
    with pytest.raises(UnsupportedRequest, match="regime"):
        verify_identity("pf_recursion", 4, "generic")
    with pytest.raises(UnsupportedRequest):
        verify_identity("det_rc_eq", 2, "bogus")


def test_allow_large_lifts_cap():
    assert verify_identity("det_rc_eq", 1, allow_large=True).holds
    assert verify_identity("det_rc_eq", 5, allow_large=True).holds


def test_explicit_spec():
    rep = verify_identity("det_rc_eq", 2, spec=generic_spec(2))
    assert rep.holds
    with pytest.raises(UnsupportedRequest):
        verify_identity("det_rc_eq", 3, spec=generic_spec(2))


def test_identity_enumeration_is_closed():
    assert len(IDENTITIES) == 21
    assert {"det_rc_eq", "pf_pf", "hf_recursion", "manin"} <= set(IDENTITIES)


# the harness itself ---------------------------------------------------------------


def test_corrupted_engine_fails_det_rc_eq():
    with corrupted():
        rep = verify_identity("det_rc_eq", 3)
    assert not rep.holds
    assert verify_identity("det_rc_eq", 3).holds


@pytest.mark.parametrize("rule", ["c_row", "c_col", "c_anti", "c_cross"])
@pytest.mark.parametrize("factor", [2, -1])
def test_every_corrupted_rule_is_detected(rule, factor):
    with corrupted(rule, factor):
        assert not verify_identity("det_commutation", 3).holds
        assert not verify_identity("cramer", 2).holds
    assert verify_identity("det_commutation", 3).holds


def test_corrupted_engine_breaks_cramer():
    with corrupted("c_cross", 3):
        assert not verify_identity("cramer", 2).holds


def test_confluence_small():
    rep = confluence_check(count=40, n=3, seed=5)
    assert rep.holds and rep.identity == "confluence"


def test_confluence_detects_nonconfluent_rules():
    # a scaled cross rule leaves the overlap ambiguities unresolved
    with corrupted("c_cross", 2):
        rep = confluence_check(count=60, n=3, seed=1)
    assert not rep.holds


def test_classical_checks():
    assert classical_check("agree", trials=10, seed=3).holds
    assert classical_check("pf_det", trials=10, seed=3).holds
    assert not classical_check("hf_per", trials=10, seed=3).holds
    with pytest.raises(UnsupportedRequest):
        classical_check("other")


# reports ------------------------------------------------------------------------


@given(
    st.sampled_from(sorted(IDENTITIES)),
    st.integers(1, 6),
    st.sampled_from(["generic", "q-inverse", "q-negative", "numeric"]),
    st.integers(0, 50),
    st.integers(0, 10**6),
)
def test_report_round_trip(name, size, regime, residual, ms):
    rep = Report(name, size, regime, residual == 0, residual, ms)
    data = json.loads(rep.to_json())
    assert tuple(data) == REPORT_KEYS
    assert Report.from_dict(data) == rep


def test_report_rejects_inconsistent_holds():
    with pytest.raises(ValueError):
        Report("x", 2, "generic", True, 3, 0)
    with pytest.raises(ValueError):
        Report.from_dict({"identity": "x"})


# suite plumbing -------------------------------------------------------------------


def test_acceptance_matrix_covers_every_criterion():
    assert {row.criterion for row in ACCEPTANCE} == set(range(1, 16))
    negatives = [row.label for row in ACCEPTANCE if not row.expect_holds]
    assert negatives == ["maya@4/generic", "maya_neg@4/generic"]


def test_suite_budget_skips_rows():
    summary = run_suite(budget_s=-1.0, only_criteria=(1,))
    assert [r.status for r in summary.results] == ["skipped"] * 3
    assert not summary.ok


def test_suite_tag_skip_is_not_a_failure():
    summary = run_suite(only_criteria=(6,), skip=("2n6",))
    assert [r.status for r in summary.results] == ["pass", "skipped"]
    assert summary.ok


def test_suite_subset_passes():
    summary = run_suite(only_criteria=(2, 11))
    assert summary.ok
    assert [r.row.identity for r in summary.results] == ["det_commutation"] * 2 + ["grouplike"] * 2
