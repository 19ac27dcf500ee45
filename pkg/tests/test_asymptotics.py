import csv
import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congaps import asymptotics, constants
from congaps.errors import DegenerateComparisonError, DomainError, OutOfRangeError


def test_mertens_product_small(table5):
    # direct loop over the primes = 1 mod 3 up to 100
    expect = 1.0
    for p in (7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97):
        expect /= 1.0 - 1.0 / p
    got = asymptotics.mertens_ap_product(3, 100, table5)
    assert got == pytest.approx(expect, rel=1e-12)
    assert asymptotics.mertens_ap_product(3, 5, table5) == 1.0


def test_mertens_product_errors(table5):
    with pytest.raises(DomainError):
        asymptotics.mertens_ap_product(2, 100, table5)
    with pytest.raises(OutOfRangeError):
        asymptotics.mertens_ap_product(3, table5.limit + 1, table5)


def test_mertens_prediction():
    b = constants.constants_bundle(3)
    # at X = e the (log X)^(1/phi) factor is 1
    got = asymptotics.mertens_prediction(3, math.e, b)
    assert got == pytest.approx(math.exp(b.gamma_euler / 2.0) * b.c_q, rel=1e-12)
    with pytest.raises(DomainError):
        asymptotics.mertens_prediction(3, 1.0, b)


def test_mertens_ratio_near_one(table5):
    b = constants.constants_bundle(3)
    ratio = asymptotics.mertens_ap_product(3, 10**5, table5) / \
        asymptotics.mertens_prediction(3, 10**5, b)
    assert abs(ratio - 1.0) < 0.01


def test_count_restricted_examples(table5):
    assert asymptotics.count_restricted(50, 3, 1, table5) == 8
    assert asymptotics.enumerate_restricted(50, 3, 1, table5) == [
        1, 7, 13, 19, 31, 37, 43, 49,
    ]
    assert asymptotics.count_restricted(100, 3, 10, table5) == 11
    assert asymptotics.count_restricted(0, 3, 1, table5) == 0
    assert asymptotics.count_restricted(6, 3, 1, table5) == 1  # just n = 1


def test_count_restricted_errors(table5):
    with pytest.raises(DomainError):
        asymptotics.count_restricted(50, 2, 1, table5)
    with pytest.raises(DomainError):
        asymptotics.count_restricted(50, 3, 0.5, table5)
    with pytest.raises(OutOfRangeError):
        asymptotics.count_restricted(table5.limit + 1, 3, 1, table5)


def test_count_matches_enumeration(table5):
    for X in (1, 10, 500, 12345):
        members = asymptotics.enumerate_restricted(X, 3, 1, table5)
        assert len(members) == asymptotics.count_restricted(X, 3, 1, table5)
        assert members == sorted(set(members))
        assert members[0] == 1


def test_count_against_spf_oracle(table5, spf5):
    n_max = 20_000
    members = set(asymptotics.enumerate_restricted(n_max, 3, 1, table5))
    for n in range(1, n_max + 1):
        in_set = all(p % 3 == 1 for p in spf5.factor(n))
        assert (n in members) == in_set
    # and with a Y cutoff
    members = set(asymptotics.enumerate_restricted(n_max, 3, 10, table5))
    for n in range(1, n_max + 1):
        in_set = all(p % 3 == 1 and p > 10 for p in spf5.factor(n))
        assert (n in members) == in_set


def test_count_monotone(table5):
    counts = [asymptotics.count_restricted(x, 4, 1, table5)
              for x in (10, 100, 1000, 10**4)]
    assert counts == sorted(counts)


def test_lemma33_prediction(table5):
    b = constants.constants_bundle(3)
    p1 = asymptotics.lemma33_prediction(10**4, 3, 1, b, table5)
    p10 = asymptotics.lemma33_prediction(10**4, 3, 10, b, table5)
    # the Y = 10 prediction removes the p = 7 factor
    assert p10 == pytest.approx(p1 * (1.0 - 1.0 / 7.0), rel=1e-12)
    assert p1 > 0
    with pytest.raises(DomainError):
        asymptotics.lemma33_prediction(2, 3, 1, b, table5)


def test_lemma33_ratio_small_scale(table5):
    b = constants.constants_bundle(3)
    ratio = asymptotics.count_restricted(10**5, 3, 1, table5) / \
        asymptotics.lemma33_prediction(10**5, 3, 1, b, table5)
    assert 0.9 < ratio < 1.1


def test_compare_pass_band():
    rep = asymptotics.compare("x", 105.0, 100.0, 0.05)
    assert rep.ratio == pytest.approx(1.05)
    assert rep.passed
    assert not asymptotics.compare("x", 106.0, 100.0, 0.05).passed
    assert asymptotics.compare("x", 95.0, 100.0, 0.05).passed
    assert not asymptotics.compare("x", 94.9, 100.0, 0.05).passed


def test_compare_degenerate():
    with pytest.raises(DegenerateComparisonError):
        asymptotics.compare("x", 1.0, 0.0, 0.1)


def test_report_serialization():
    rep = asymptotics.compare("demo", 2.0, 4.0, 0.1, params={"q": 3})
    d = rep.to_dict()
    assert d["label"] == "demo"
    assert d["ratio"] == 0.5
    assert d["pass"] is False
    assert d["params"] == {"q": 3}
    assert "\"pass\": false" in rep.to_json()


def test_reports_to_csv_roundtrip():
    reps = [
        asymptotics.compare("a", 1.0, 1.0, 0.1, params={"q": 3, "X": 10}),
        asymptotics.compare("b", 0.5, 1.0, 0.1),
    ]
    text = asymptotics.reports_to_csv(reps)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["label", "actual", "predicted", "ratio", "params", "pass"]
    assert len(rows) == 3
    assert float(rows[1][3]) == 1.0
    assert rows[1][5] == "True"
    assert rows[2][5] == "False"


@settings(max_examples=100, deadline=None)
@given(
    actual=st.floats(-1e6, 1e6, allow_nan=False),
    predicted=st.floats(-1e6, 1e6, allow_nan=False).filter(lambda x: abs(x) > 1e-9),
    tol=st.floats(1e-6, 1.0),
)
def test_compare_invariants(actual, predicted, tol):
    rep = asymptotics.compare("h", actual, predicted, tol)
    assert rep.ratio == actual / predicted
    assert rep.passed == (1.0 - tol <= rep.ratio <= 1.0 + tol)
