import pytest

from kq2 import tables as tb
from kq2.abgroup import C, C2, Z, ZERO, direct_sum, n_copies, parse_group
from kq2.errors import (
    DegreeOutOfRange,
    EvenN,
    NegativeDegree,
    NotTwoRegular,
    OddM,
)
from kq2.fields import Generic, Rationals, RealQuadratic, find_q

Q = Rationals()
D6 = RealQuadratic(6)
R2 = Generic(r=2, a=2, regular_claim=True)


def G(text):
    return parse_group(text)


def test_w_examples():
    assert tb.w(2, 2) == 8
    assert tb.w(4, 2) == 16
    assert tb.w(6, 3) == 16
    with pytest.raises(OddM):
        tb.w(3, 2)


def test_t_examples():
    assert tb.t(3, 3) == 8
    assert tb.t(7, 3) == 16
    assert tb.t(7, 7) == 32  # 7^4 - 1 = 2400 = 2^5 * 75
    with pytest.raises(EvenN):
        tb.t(4, 3)


def test_ko_ku():
    assert tb.ko(2) == C(2)
    assert tb.ko(8) == Z(1)
    assert tb.ku(5) == ZERO
    assert [tb.ko(n) for n in range(8)] == [
        Z(1), C(2), C(2), ZERO, Z(1), ZERO, ZERO, ZERO,
    ]
    with pytest.raises(NegativeDegree):
        tb.ko(-1)


def test_kq_top():
    assert tb.kq_top(2, 1, "R") == C2(2)
    assert tb.kq_top(1, -1, "R") == ZERO
    assert tb.kq_top(0, -1, "C") == Z(1)
    for n in range(12):
        assert tb.kq_top(n, 1, "R") == direct_sum(tb.ko(n), tb.ko(n))
        assert tb.kq_top(n, 1, "C") == tb.ko(n)
        assert tb.kq_top(n, -1, "R") == tb.ku(n)
        assert tb.kq_top(n, -1, "C") == tb.ko(n + 4)


def test_k_fq():
    assert tb.k_fq(2, 3) == ZERO
    assert tb.k_fq(1, 3) == C(2)
    assert tb.k_fq(3, 3) == C(8)
    assert tb.k_fq(0, 3) == Z(1)
    assert tb.k_fq(7, 3) == C(16)


def test_kq_fq():
    assert tb.kq_fq(1, 1, 3) == C2(2)
    assert tb.kq_fq(7, -1, 3) == C(16)
    assert tb.kq_fq(0, -1, 3) == Z(1)
    assert tb.kq_fq(0, 1, 3) == direct_sum(Z(1), C(2))
    assert tb.kq_fq(5, -1, 3) == C2(2)
    assert tb.kq_fq(3, -1, 3) == C(8)
    # the orthogonal groups complement KO inside the building block
    for n in range(0, 33):
        assert tb.kq_bar(n, 1, 3) == direct_sum(tb.kq_fq(n, 1, 3), tb.ko(n))


def test_kq_rf_golden():
    assert tb.kq_rf(9, 1, Q) == C2(3)
    assert tb.kq_rf(3, -1, D6) == G("Z/2 + Z/16")
    assert tb.k_rf(3, Q) == C(16)
    assert tb.kq_rf(3, 1, Q) == C(8)  # orthogonal value is w_2 = 8, not 16
    assert tb.kq_rf(0, -1, Q) == Z(1)
    assert tb.kq_rf(0, 1, Q) == G("Z^2 + Z/2")
    assert tb.kq_rf(1, 1, Q) == C2(3)


def test_v_u_golden():
    assert tb.v_rf(8, 1, R2) == Z(4)
    assert tb.u_rf(9, -1, R2) == Z(4)
    assert tb.v_rf(0, -1, R2) == G("Z^2 + Z/2")
    with pytest.raises(DegreeOutOfRange):
        tb.u_rf(0, 1, Q)


def test_barred_tables():
    assert tb.kq_bar(4, -1, 3) == C(2)
    assert tb.v_bar(0, 1) == Z(2)
    assert tb.k_bar(1, 3, 2) == G("Z + Z/2")
    assert tb.k_bar(7, 3, 2) == C(16)
    assert tb.k_bar_uses_resolved_order(7)
    assert not tb.k_bar_uses_resolved_order(3)
    with pytest.raises(DegreeOutOfRange):
        tb.k_bar(0, 3, 2)


def test_witt_groups():
    assert tb.witt(Q) == G("Z + Z/2")
    assert tb.cowitt(RealQuadratic(10)) == G("Z^2 + Z/2")
    assert tb.w1(Q) == C(2)
    assert tb.square_classes(RealQuadratic(5)) == C2(3)


def test_not_two_regular_is_loud():
    bad = RealQuadratic(34)
    for fn in (
        lambda: tb.k_rf(1, bad),
        lambda: tb.kq_rf(1, 1, bad),
        lambda: tb.v_rf(1, 1, bad),
        lambda: tb.witt(bad),
        lambda: tb.low_dim(bad, 1),
    ):
        with pytest.raises(NotTwoRegular):
            fn()


def test_low_dim():
    assert tb.low_dim(Q, -1) == {-1: ZERO, 0: Z(1), 1: ZERO}
    assert tb.low_dim(Q, 1)[1] == C2(3)
    assert tb.low_dim(R2, 1)[1] == C2(4)
    for eps in (1, -1):
        ld = tb.low_dim(Q, eps)
        for n in (0, 1):
            assert ld[n] == tb.kq_rf(n, eps, Q)


def test_hf_fh_involution():
    assert tb.hf_class(7, -1) == tb.HF_MULTIPLY_BY_2
    assert tb.hf_class(9, 1) == tb.HF_IMAGE_ORDER_2
    assert tb.hf_class(10, 1) == tb.HF_IMAGE_ORDER_2
    assert tb.hf_class(9, -1) == tb.HF_ZERO
    assert tb.hf_class(4, 1) == tb.HF_ZERO
    assert tb.fh_class(7) == tb.HF_MULTIPLY_BY_2
    assert tb.fh_class(5) == tb.HF_ZERO
    assert tb.involution_class(0) == tb.INV_IDENTITY
    assert tb.involution_class(3) == tb.INV_IDENTITY
    assert tb.involution_class(5) == tb.INV_MINUS_IDENTITY
    with pytest.raises(DegreeOutOfRange):
        tb.hf_class(0, 1)


def test_forgetful_rank_image_index():
    assert tb.forgetful_rank_image_index(1) == 1
    assert tb.forgetful_rank_image_index(-1) == 2
    assert tb.forgetful_rank_image_index(-1) == 2  # stable under repetition


def test_t_equals_w_on_admissible_pairs():
    for a in (2, 3, 4):
        q = find_q(Generic(r=1, a=a, regular_claim=True))
        for n in range(3, 120, 4):
            assert tb.t(n, q) == tb.w((n + 1) // 2, a)
    # also a non-minimal admissible prime: 5 = -3 (mod 8) works for a = 2
    assert tb.t(11, 5) == tb.w(6, 2) == 8  # 5^6 - 1 = 15624 = 8 * 1953
    assert tb.t(7, 7) == tb.w(4, 3) == 32


def test_v_plus_is_wedge_of_ko():
    for r in (1, 2, 4):
        spec = Generic(r=r, a=2, regular_claim=True)
        for n in range(0, 32):
            assert tb.v_rf(n, 1, spec) == n_copies(2 * r, tb.ko(n))


def test_periodicity():
    for n in range(0, 24):
        for eps in (1, -1):
            assert tb.v_rf(n, eps, R2) == tb.v_rf(n + 8, eps, R2)
    # K and KQ rows repeat except in degrees 7 mod 8 where the torsion
    # order grows with k through w(4k+4)
    for n in range(1, 24):
        if n % 8 != 7:
            assert tb.k_rf(n, Q) == tb.k_rf(n + 8, Q)
            assert tb.kq_rf(n, 1, Q) == tb.kq_rf(n + 8, 1, Q)
            assert tb.kq_rf(n, -1, Q) == tb.kq_rf(n + 8, -1, Q)
    assert tb.k_rf(7, Q) == C(16)
    assert tb.k_rf(15, Q) == C(32)  # template-periodic, not value-periodic


def test_u_is_shifted_v():
    for n in range(1, 25):
        for eps in (1, -1):
            assert tb.u_rf(n, eps, R2) == tb.v_rf(n - 1, -eps, R2)


def test_theory_dispatch():
    assert tb.query(tb.TheoryTag.parse("KQ-"), 3, D6, 3) == G("Z/2 + Z/16")
    assert tb.query(tb.TheoryTag.parse("W"), None, Q, None) == G("Z + Z/2")
    assert tb.query(tb.TheoryTag.parse("w'"), None, Q, None) == G("Z + Z/2")
    assert tb.query(tb.TheoryTag.parse("KQ+"), -1, Q, None) == ZERO
    assert tb.query(tb.TheoryTag.parse("KO"), 2, Q, None) == C(2)
    assert tb.query(tb.TheoryTag.parse("KFq"), 3, Q, 3) == C(8)
    with pytest.raises(ValueError):
        tb.TheoryTag.parse("nope")
    with pytest.raises(ValueError):
        tb.query(tb.TheoryTag.parse("K"), None, Q, None)


def test_fault_injection_is_scoped():
    clean = tb.kq_bar(4, -1, 3)
    with tb.fault_injection("kq_bar-", 4):
        assert tb.kq_bar(4, -1, 3) != clean
    assert tb.kq_bar(4, -1, 3) == clean
    assert len(tb.fault_sites()) == 72
