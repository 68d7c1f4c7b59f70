import pytest

from systolic import census, words
from systolic.census import (
    INFINITE,
    CensusMismatch,
    CensusTable,
    DivisorSieve,
    N_of,
    count_words_by_trace,
    divisor_count,
    growth_report,
    n_by_enumeration,
    n_by_formula,
    n_of,
)

from _oracles import brute_force_matrices, brute_force_trace_count


def test_divisor_count_examples():
    assert divisor_count(1) == 1
    assert divisor_count(12) == 6
    assert divisor_count(5) == 2
    with pytest.raises(ValueError):
        divisor_count(0)


def test_sieve_matches_trial_division():
    sieve = DivisorSieve(3000)
    for n in range(1, 3001):
        assert sieve.divisor_count(n) == divisor_count(n)


def test_sieve_divisors_are_exact():
    sieve = DivisorSieve(500)
    for n in (1, 2, 12, 360, 497, 499):
        divs = sieve.divisors(n)
        assert divs == sorted(d for d in range(1, n + 1) if n % d == 0)
    with pytest.raises(ValueError):
        sieve.divisors(501)


def test_spot_values():
    assert n_by_formula(3) == 2
    assert n_by_formula(4) == 6
    assert n_by_formula(5) == 8
    assert N_of(2) == 0
    assert N_of(4) == 8
    assert N_of(5) == 16


def test_counts_match_bruteforce_search():
    for m in range(3, 15):
        expected = brute_force_trace_count(m)
        assert n_by_formula(m) == expected
        assert n_by_enumeration(m) == expected


def test_trace_two_is_infinite_sentinel():
    assert n_of(2) is INFINITE
    assert repr(INFINITE) == "infinite"
    assert not isinstance(n_of(2), int)
    assert n_of(3) == 2
    for bad in (0, 1):
        with pytest.raises(ValueError):
            n_of(bad)
    for fn in (n_by_formula, n_by_enumeration):
        with pytest.raises(ValueError):
            fn(2)


def test_enumerated_matrices_are_exactly_the_bruteforce_set():
    for m in range(3, 12):
        _, mats = n_by_enumeration(m, with_matrices=True)
        assert {mat.as_tuple() for mat in mats} == brute_force_matrices(m)


def test_enumerated_matrices_roundtrip_through_words():
    sieve = DivisorSieve(40 * 40 // 4)
    for m in range(3, 41):
        count, mats = n_by_enumeration(m, sieve, with_matrices=True)
        assert count == len(mats)
        for mat in mats:
            w = words.word_of_matrix(mat)
            assert words.matrix_of(w) == mat
            assert len(w) <= m - 1


def test_trace_four_matrices_are_the_length_three_words():
    _, mats = n_by_enumeration(4, with_matrices=True)
    found = {words.word_of_matrix(mat) for mat in mats}
    assert found == {"LLR", "LRL", "RLL", "RRL", "RLR", "LRR"}


def test_word_search_matches_formula():
    counts = count_words_by_trace(60)
    sieve = DivisorSieve(60 * 60 // 4)
    for m in range(3, 61):
        assert counts[m] == n_by_formula(m, sieve)


def test_partial_sums_strictly_increase():
    table = CensusTable.build(80)
    prev = 0
    for row in table.rows:
        assert row.n >= 1  # witness L^(m-2) R
        assert row.N == prev + row.n
        assert row.N > prev
        prev = row.N


def test_check_mode_flags_rows_and_catches_corruption():
    table = CensusTable.build(30, check=True)
    assert all(row.checked for row in table.rows)
    assert not any(row.checked for row in CensusTable.build(30).rows)

    # 224 = 15*15 - 1 feeds the trace-30 row; pretending it is prime
    # collapses d(224) from 12 to 2 and the cross-check must notice
    bad = DivisorSieve(30 * 30 // 4)
    bad._spf[224] = 224
    with pytest.raises(CensusMismatch):
        CensusTable.build(30, check=True, sieve=bad)


def test_growth_report_rows():
    rep = growth_report(12)
    by_m = {row.m: row for row in rep.rows}
    assert by_m[5].N == 16
    for row in rep.rows:
        assert row.ratio_mlogm > 0
        assert row.ratio_mloglogm > 0
    # N(9)/81 < N(8)/64, so the quad ratio dip at 9 must be flagged
    assert by_m[9].quad_ratio < by_m[8].quad_ratio
    assert 9 in rep.quad_ratio_violations
    with pytest.raises(ValueError):
        growth_report(9)


def test_csv_shape():
    table = CensusTable.build(50)
    lines = table.to_csv().strip().split("\n")
    assert lines[0] == "m,n,N,ratio_mlogm,ratio_mloglogm"
    assert len(lines) == 1 + 48
    first = lines[1].split(",")
    assert first[0] == "3" and first[1] == "2" and first[2] == "2"
