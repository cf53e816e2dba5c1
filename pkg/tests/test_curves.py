import cmath
import math

import pytest

from tatelab.arith import PrimeCtx, primes_up_to
from tatelab.curves import (
    CurveQ,
    FrobeniusPair,
    extension_trace,
    frobenius_angle,
    local_zeta,
    reduce_mod,
    trace_fp,
    trace_sequence,
    zeta_numerator,
)

from oracles import ext_field_point_count, naive_point_count, table_point_count


def test_singular_model_rejected():
    with pytest.raises(ValueError):
        CurveQ(0, 0)


def test_discriminant():
    assert CurveQ(1, 1).discriminant == -16 * 31


def test_reduce_bad_prime():
    # 4 + 27 = 31 divides the discriminant
    assert reduce_mod(CurveQ(1, 1), 31) is None


def test_reduce_good_prime():
    assert reduce_mod(CurveQ(1, 1), 5) == (1, 1)


def test_reduce_rejects_small_p():
    with pytest.raises(ValueError):
        reduce_mod(CurveQ(1, 1), 3)


def test_trace_examples():
    assert trace_fp(1, 1, PrimeCtx(5)) == -3  # 9 points
    # x -> x^3 is a bijection for p = 2 mod 3
    assert trace_fp(0, 1, PrimeCtx(5)) == 0
    assert trace_fp(0, 1, PrimeCtx(11)) == 0


def test_trace_rejects_singular_reduction():
    with pytest.raises(ValueError):
        trace_fp(1, 1, PrimeCtx(31))


def test_trace_matches_naive_enumeration():
    # quick battery; the full |A|,|B| <= 5, p <= 200 sweep runs in acceptance
    for p in (5, 7, 11, 13, 17, 19, 23):
        ctx = PrimeCtx(p)
        for A in range(-2, 3):
            for B in range(-2, 3):
                if (4 * A**3 + 27 * B**2) % p == 0:
                    continue
                assert trace_fp(A, B, ctx) == p + 1 - naive_point_count(A % p, B % p, p)


def test_table_oracle_matches_naive():
    # the collapsed y-table oracle agrees with the literal double loop
    for p in (5, 7, 11, 13):
        for A in range(-2, 3):
            for B in range(-2, 3):
                assert table_point_count(A % p, B % p, p) == naive_point_count(A % p, B % p, p)


def test_trace_sequence_good_primes_only():
    recs = trace_sequence(CurveQ(1, 1), 10)
    assert [r.p for r in recs] == [5, 7]


def test_trace_sequence_rejects_small_cutoff():
    with pytest.raises(ValueError):
        trace_sequence(CurveQ(1, 1), 4)


def test_trace_sequence_cm_zeros():
    for r in trace_sequence(CurveQ(0, 1), 100):
        if r.p % 3 == 2:
            assert r.a_p == 0


def test_hasse_bound_on_records():
    for r in trace_sequence(CurveQ(1, 1), 500):
        assert r.a_p * r.a_p <= 4 * r.p
        assert 0.0 <= r.theta_p <= math.pi


def test_trace_sequence_worker_invariance():
    serial = trace_sequence(CurveQ(2, 3), 300, workers=1)
    parallel = trace_sequence(CurveQ(2, 3), 300, workers=3)
    assert serial == parallel


def test_frobenius_pair_validates():
    with pytest.raises(ValueError):
        FrobeniusPair(a=100, q=7, p=7)
    with pytest.raises(ValueError):
        FrobeniusPair(a=1, q=10, p=5, n=1)


def test_extension_trace_degree_one():
    fp = FrobeniusPair.from_prime(-3, 5)
    assert extension_trace(fp, 1) == fp


def test_extension_trace_examples():
    fp = FrobeniusPair.from_prime(-3, 5)
    e2 = extension_trace(fp, 2)
    assert (e2.a, e2.q) == (-1, 25)
    assert e2.q + 1 - e2.a == 27  # direct F_25 count below
    assert ext_field_point_count(1, 1, 5) == 27
    ss = extension_trace(FrobeniusPair.from_prime(0, 5), 2)
    assert (ss.a, ss.q) == (-10, 25)


def test_extension_trace_matches_direct_f_p2_counts():
    for p in (5, 7, 11, 13):
        for A, B in ((1, 1), (0, 1), (2, 3), (-1, 1)):
            if (4 * A**3 + 27 * B**2) % p == 0:
                continue
            a = trace_fp(A, B, PrimeCtx(p))
            e2 = extension_trace(FrobeniusPair.from_prime(a, p), 2)
            assert e2.q + 1 - e2.a == ext_field_point_count(A % p, B % p, p)


def test_extension_trace_composes():
    fp = FrobeniusPair.from_prime(-3, 5)
    for m, k in ((2, 2), (2, 3), (3, 2)):
        step = extension_trace(extension_trace(fp, m), k)
        direct = extension_trace(fp, m * k)
        assert (step.a, step.q) == (direct.a, direct.q)


def test_extension_trace_hasse():
    fp = FrobeniusPair.from_prime(7, 41)
    for n in range(1, 30):
        ext = extension_trace(fp, n)
        assert ext.a * ext.a <= 4 * ext.q  # exact integers, no wraparound


def test_zeta_numerator_examples():
    assert zeta_numerator(FrobeniusPair.from_prime(-3, 5)) == (1, 3, 5)
    assert zeta_numerator(FrobeniusPair.from_prime(0, 5)) == (1, 0, 5)


@pytest.mark.parametrize("a,p", [(-3, 5), (0, 5), (3, 7), (-4, 11)])
def test_zeta_numerator_root_magnitude(a, p):
    c0, c1, c2 = zeta_numerator(FrobeniusPair.from_prime(a, p))
    disc = cmath.sqrt(complex(c1 * c1 - 4 * c0 * c2))
    for root in ((-c1 + disc) / (2 * c2), (-c1 - disc) / (2 * c2)):
        assert abs(abs(root) - p**-0.5) < 1e-12


def test_local_zeta_matches_log_series():
    # zeta(E, s) = exp(sum_n N_n t^n / n) with N_n the extension counts;
    # independent of the closed rational form
    fp = FrobeniusPair.from_prime(-3, 5)
    s = 3.0
    t = 5.0**-s
    series = 0.0
    for n in range(1, 60):
        ext = extension_trace(fp, n)
        series += (ext.q + 1 - ext.a) * t**n / n
    assert abs(math.exp(series) - local_zeta(fp, s)) < 1e-12


def test_local_zeta_pole_rejected():
    with pytest.raises(ValueError):
        local_zeta(FrobeniusPair.from_prime(-3, 5), 0.0)


def test_angle_endpoints():
    assert frobenius_angle(0, 5) == pytest.approx(math.pi / 2)
    assert frobenius_angle(-10, 25) == pytest.approx(math.pi)
