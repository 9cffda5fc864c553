import pytest

from kq2 import tables as tb
from kq2 import verify as vf
from kq2.errors import InadmissibleQ, NotTwoRegular
from kq2.fields import (
    Generic,
    MaxRealCyclo2,
    MaxRealCycloOdd,
    Rationals,
    RealQuadratic,
)

REGRESSION_SPECS = (
    [Rationals()]
    + [RealQuadratic(d) for d in (2, 3, 5, 6, 10, 11, 13)]
    + [MaxRealCyclo2(b) for b in (2, 3, 4)]
    + [MaxRealCycloOdd(m) for m in (5, 11)]
)


@pytest.mark.parametrize("spec", REGRESSION_SPECS, ids=str)
def test_run_all_passes(spec):
    reports = vf.run_all(spec, None, 64)
    failures = [r for r in reports if not r.passed]
    assert not failures, failures


def test_run_all_rejects_irregular_field():
    with pytest.raises(NotTwoRegular):
        vf.run_all(RealQuadratic(34), None, 16)
    # 14 = 2 * 7 with 7 = -1 (mod 8): not 2-regular either
    with pytest.raises(NotTwoRegular):
        vf.run_all(RealQuadratic(14), None, 16)


def test_run_all_rejects_inadmissible_q():
    with pytest.raises(InadmissibleQ):
        vf.run_all(Rationals(), 7, 16)


def test_check_t_w():
    rep = vf.check_t_w([2, 3, 4, 5], 200)
    assert rep.passed


def test_check_splittings_example_values():
    # spot values confirming what the identity checks compare
    from kq2.abgroup import C2, direct_sum, n_copies

    spec = Generic(r=3, a=2, regular_claim=True)
    lhs = tb.kq_rf(12, -1, spec, 3)
    rhs = direct_sum(tb.kq_bar(12, -1, 3), n_copies(2, tb.ko(18)))
    assert lhs == rhs == C2(3)

    spec2 = Generic(r=2, a=2, regular_claim=True)
    assert tb.v_rf(1, 1, spec2) == C2(4)
    assert direct_sum(tb.v_bar(1, 1), n_copies(2, tb.ko(1))) == C2(4)


def test_failing_report_needs_counterexample():
    with pytest.raises(ValueError):
        vf.CheckReport("x", False, "no counterexample")


def test_report_json_shape():
    reports = vf.run_all(Rationals(), 3, 16)
    payload = vf.reports_to_json(reports)
    for item in payload:
        assert set(item) <= {"name", "passed", "details", "counterexample"}
        assert isinstance(item["passed"], bool)


@pytest.mark.parametrize("site", [("kq_rf+", 3), ("v_bar-", 0), ("k_rf", 7)])
def test_fault_injection_spot_checks(site):
    spec, q = RealQuadratic(6), 3
    assert vf.all_passed(vf.run_all(spec, q, 16))
    with tb.fault_injection(*site):
        assert not vf.all_passed(vf.run_all(spec, q, 16))
