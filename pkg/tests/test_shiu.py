import math

import numpy as np
import pytest

from congaps import shiu
from congaps.errors import DomainError


def brute_sets(con, H):
    """Per-h membership via a divisibility sieve, no factorization."""
    keep = np.ones(H + 1, dtype=bool)
    keep[0] = False
    for p in con.modulus_primes():
        keep[p::p] = False
    h = np.arange(H + 1)
    s = int(np.count_nonzero(keep & (h % con.q == con.a % con.q)))
    t = int(np.count_nonzero(keep)) - s
    return s, t


def test_t_of_h():
    assert shiu.t_of_H(10**7) == pytest.approx(19.375768888695553, rel=1e-12)
    assert shiu.t_of_H(10**6) < 13.816  # below log H: regime not reached
    with pytest.raises(DomainError):
        shiu.t_of_H(15.0)
    with pytest.raises(DomainError):
        shiu.t_of_H(1.0)


def test_construction_a1_set(table5):
    H = 10**5
    con = shiu.build_construction(H, 3, 1, 1, table5)
    log_h = math.log(H)
    cap = H / log_h**2
    expect = sorted(
        int(p) for p in table5.primes
        if (p <= log_h and p % 3 == 1) or (p <= cap and p % 3 != 1)
    )
    assert con.script_p.tolist() == expect
    assert con.tH is None
    assert con.regime_ok
    assert con.q_primes == (3,)


def test_construction_a2_set(table5):
    H = 10**5
    con = shiu.build_construction(H, 3, 2, 1, table5)
    log_h = math.log(H)
    cap = H / log_h**2
    tH = con.tH
    assert tH == pytest.approx(shiu.t_of_H(H))
    expect = sorted(
        int(p) for p in table5.primes
        if (p <= log_h and p % 3 == 1)
        or (p <= cap and p % 3 not in (1, 2))
        or (tH < p <= cap and p % 3 == 1)
        or (p <= H / tH and p % 3 == 2)
    )
    assert con.script_p.tolist() == expect
    assert not con.regime_ok  # t(H) < log H at this scale


def test_construction_contains_small_primes(table5):
    for q, a in ((3, 1), (3, 2), (4, 3), (6, 5)):
        con = shiu.build_construction(10**4, q, a, 1, table5)
        sp = set(con.script_p.tolist())
        for p in table5.primes[table5.primes <= math.log(10**4)]:
            assert int(p) in sp


def test_construction_errors(table5):
    with pytest.raises(DomainError):
        shiu.build_construction(10**4, 3, 3, 1, table5)  # gcd(a, q) > 1
    with pytest.raises(DomainError):
        shiu.build_construction(10**4, 2, 1, 1, table5)
    with pytest.raises(DomainError):
        shiu.build_construction(50, 3, 1, 1, table5)
    with pytest.raises(DomainError):
        shiu.build_construction(10**4, 3, 1, 1, None)
    with pytest.raises(DomainError):
        shiu.build_construction(10**4, 3, 1, 8, table5)  # p0 composite
    with pytest.raises(DomainError):
        shiu.build_construction(10**5, 3, 1, 7, table5)  # p0 <= log H


def test_p0_removed_from_modulus(table5):
    con = shiu.build_construction(10**5, 3, 1, 17, table5)
    assert 17 in con.script_p
    assert 17 not in con.modulus_primes()
    base = shiu.build_construction(10**5, 3, 1, 1, table5)
    assert con.modulus_primes() == base.modulus_primes() - {17}


def test_modulus_primes_include_q(table5):
    con = shiu.build_construction(10**4, 6, 5, 1, table5)
    assert {2, 3} <= con.modulus_primes()


def test_phi_over_q_tiny():
    con = shiu.ShiuConstruction(
        H=100, q=3, a=1, p0=1, tH=None,
        script_p=np.array([5], dtype=np.int64),
        q_primes=(3,), regime_ok=True,
    )
    assert shiu.phi_over_Q(con) == pytest.approx((2 / 3) * (4 / 5), rel=1e-12)


def test_compute_s_t_matches_brute_force(table5, spf5):
    for q, a in ((3, 1), (3, 2), (4, 1), (4, 3), (6, 1), (6, 5)):
        con = shiu.build_construction(10**4, q, a, 1, table5)
        sets = shiu.compute_S_T(con, spf5)
        assert (sets.S_count, sets.T_count) == brute_sets(con, 10**4)


def test_compute_s_t_members(table5, spf5):
    con = shiu.build_construction(10**4, 3, 2, 1, table5)
    sets = shiu.compute_S_T(con, spf5, keep_members=True)
    assert len(sets.S_members) == sets.S_count
    assert len(sets.T_members) == sets.T_count
    assert set(sets.S_members).isdisjoint(sets.T_members)
    qset = con.modulus_primes()
    for h in sets.S_members:
        assert h % 3 == 2
        assert all(h % p for p in qset)
    for h in sets.T_members:
        assert h % 3 != 2
        assert all(h % p for p in qset)


def test_compute_s_t_table_too_small(table5):
    con = shiu.build_construction(10**4, 3, 1, 1, table5)
    from congaps.primes import build_spf

    with pytest.raises(DomainError):
        shiu.compute_S_T(con, build_spf(100))


def test_lemma34_check_a1(table5, spf5):
    con = shiu.build_construction(10**4, 3, 1, 1, table5)
    sets = shiu.compute_S_T(con, spf5)
    rep = shiu.lemma34_check(con, sets)
    assert rep.actual == float(sets.S_count - sets.T_count)
    expect_rhs = 10**4 / math.gamma(0.5) * sets.phiQ_over_Q
    assert rep.predicted == pytest.approx(expect_rhs, rel=1e-12)
    assert rep.params["case"] == "a=1"
    assert rep.passed == (rep.actual >= rep.predicted)


def test_lemma34_check_a2(table5, spf5):
    con = shiu.build_construction(10**4, 3, 2, 1, table5)
    sets = shiu.compute_S_T(con, spf5)
    rep = shiu.lemma34_check(con, sets)
    expect_rhs = 0.4 * 10**4 / (3 * math.gamma(0.5)) * sets.phiQ_over_Q
    assert rep.predicted == pytest.approx(expect_rhs, rel=1e-12)
    assert rep.params["case"] == "a!=1"
    assert rep.params["regime"] == "asymptotic regime not reached"


def test_t_bound_report(table5, spf5):
    con = shiu.build_construction(10**4, 3, 1, 1, table5)
    sets = shiu.compute_S_T(con, spf5)
    rep = shiu.t_bound_report(con, sets)
    assert rep.passed is None
    assert rep.ratio == pytest.approx(
        sets.T_count * math.log(10**4) / 10**4, rel=1e-12
    )
