import math
import os

import numpy as np
import pytest

from congaps import primes
from congaps.errors import CacheError, CapacityError, DomainError, OutOfRangeError


def trial_primes(limit):
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def test_sieve_small():
    assert primes.sieve_primes(10).primes.tolist() == [2, 3, 5, 7]
    assert primes.sieve_primes(2).primes.tolist() == [2]
    assert primes.sieve_primes(1).primes.tolist() == []
    assert primes.sieve_primes(0).primes.tolist() == []


def test_sieve_against_trial_division():
    table = primes.sieve_primes(10_000)
    assert table.primes.tolist() == trial_primes(10_000)


def test_pi_of_1e6():
    assert primes.sieve_primes(10**6).primes.size == 78498


def test_sieve_prefix_property():
    small = primes.sieve_primes(10**3).primes
    big = primes.sieve_primes(10**4).primes
    assert big[: small.size].tolist() == small.tolist()


def test_sieve_segment_boundaries():
    # odd segment size forces awkward segment edges
    ref = primes.sieve_primes(50_000).primes
    got = primes.sieve_primes(50_000, segment_size=101).primes
    assert got.tolist() == ref.tolist()


def test_sieve_domain_and_capacity():
    with pytest.raises(DomainError):
        primes.sieve_primes(-1)
    with pytest.raises(CapacityError):
        primes.sieve_primes(2**40)
    with pytest.raises(CapacityError):
        primes.sieve_primes(10**6, max_limit=10**5)


def test_count_upto(table5):
    assert table5.count_upto(100) == 25
    assert table5.count_upto(2) == 1
    assert table5.count_upto(1) == 0
    with pytest.raises(OutOfRangeError):
        table5.count_upto(table5.limit + 1)


def test_prime_count_ap_examples(table5):
    assert primes.prime_count_ap(table5, 100, 3, 1) == 11
    assert primes.prime_count_ap(table5, 100, 3, 2) == 13
    assert primes.prime_count_ap(table5, 2, 3, 1) == 0
    assert primes.prime_count_ap(table5, 10, 4, 1) == 1  # just 5


def test_prime_count_ap_partition(table5):
    # residue classes partition the primes not dividing q
    for q in (3, 4, 5, 12):
        t = 50_000
        total = sum(
            primes.prime_count_ap(table5, t, q, a) for a in range(q)
        )
        assert total == table5.count_upto(t)


def test_prime_count_ap_monotone(table5):
    counts = [primes.prime_count_ap(table5, t, 3, 2) for t in (10, 100, 1000, 10000)]
    assert counts == sorted(counts)


def test_prime_count_ap_errors(table5):
    with pytest.raises(OutOfRangeError):
        primes.prime_count_ap(table5, table5.limit + 1, 3, 1)
    with pytest.raises(DomainError):
        primes.prime_count_ap(table5, 10, 3, 3)
    with pytest.raises(DomainError):
        primes.prime_count_ap(table5, 10, 0, 0)


def test_spf_values(spf5):
    spf = spf5.spf
    assert spf[1] == 1
    assert spf[2] == 2
    assert spf[12] == 2
    assert spf[9991] == 97  # 97 * 103
    assert spf[65537] == 65537  # prime above sqrt(limit)


def test_spf_factor(spf5):
    assert spf5.factor(1) == []
    assert spf5.factor(360) == [2, 3, 5]
    assert spf5.factor(97) == [97]
    with pytest.raises(OutOfRangeError):
        spf5.factor(0)
    with pytest.raises(OutOfRangeError):
        spf5.factor(spf5.limit + 1)


def test_spf_against_trial_division(spf5):
    for n in range(2, 2000):
        least = next(d for d in range(2, n + 1) if n % d == 0)
        assert int(spf5.spf[n]) == least


def test_build_spf_errors():
    with pytest.raises(DomainError):
        primes.build_spf(0)
    with pytest.raises(CapacityError):
        primes.build_spf(2**40)


def test_cache_roundtrip(tmp_path):
    table = primes.sieve_primes(5000)
    path = primes.save_cache(table, str(tmp_path / "p.bin"))
    loaded = primes.load_cache(path, expected_limit=5000)
    assert loaded.limit == table.limit
    assert np.array_equal(loaded.primes, table.primes)


def test_cache_bad_magic(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"NOTAPRIM" + b"\0" * 16)
    with pytest.raises(CacheError):
        primes.load_cache(str(path))


def test_cache_limit_mismatch(tmp_path):
    table = primes.sieve_primes(5000)
    path = primes.save_cache(table, str(tmp_path / "p.bin"))
    with pytest.raises(CacheError):
        primes.load_cache(path, expected_limit=6000)


def test_cache_rejects_garbled_body(tmp_path):
    table = primes.sieve_primes(100)
    path = primes.save_cache(table, str(tmp_path / "p.bin"))
    raw = bytearray(open(path, "rb").read())
    raw[-8:] = (0).to_bytes(8, "little")  # no longer ascending
    open(path, "wb").write(bytes(raw))
    with pytest.raises(CacheError):
        primes.load_cache(path)


def test_get_prime_table_caches(tmp_path, monkeypatch):
    monkeypatch.setenv(primes.CACHE_ENV, str(tmp_path))
    t1 = primes.get_prime_table(3000)
    assert os.path.exists(primes.cache_path(3000, str(tmp_path)))
    t2 = primes.get_prime_table(3000)
    assert np.array_equal(t1.primes, t2.primes)
