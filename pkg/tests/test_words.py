import math
import random

import pytest

from systolic import words
from systolic.words import (
    GOLDEN_RATIO,
    UniMat,
    canonical,
    equivalence_class,
    equivalent,
    geodesic_length,
    insert_letter,
    insertion_trace,
    is_letter_power,
    log_phi_ceil,
    matrix_of,
    phi_power_floor,
    phi_trace_ceiling,
    star,
    trace_of,
    word_of_matrix,
)

from _oracles import all_words, random_word


def test_generator_products_match_hand_computation():
    assert matrix_of("").as_tuple() == (1, 0, 0, 1)
    assert matrix_of("LR").as_tuple() == (2, 1, 1, 1)
    assert matrix_of("RL").as_tuple() == (1, 1, 1, 2)
    assert matrix_of("LLL").as_tuple() == (1, 3, 0, 1)


def test_trace_examples():
    assert trace_of("") == 2
    assert trace_of("LR") == 3
    for k in range(3, 16):
        assert trace_of("L" * (k - 2) + "R") == k


def test_matmul_matches_word_concatenation():
    rng = random.Random(1)
    for _ in range(200):
        u, v = random_word(rng, 12), random_word(rng, 12)
        assert (matrix_of(u) @ matrix_of(v)).as_tuple() == matrix_of(u + v).as_tuple()


def test_unimat_validation():
    with pytest.raises(ValueError):
        UniMat(1, 1, 1, 1)  # det 0
    with pytest.raises(ValueError):
        UniMat(2, -1, 1, 1)
    with pytest.raises(ValueError):
        UniMat(1.0, 0, 0, 1)  # type: ignore[arg-type]


def test_unimat_parse_and_str_roundtrip():
    m = UniMat.parse("2,1,1,1")
    assert m == UniMat(2, 1, 1, 1)
    assert str(m) == "2,1,1,1"
    with pytest.raises(ValueError):
        UniMat.parse("2,1,1")
    with pytest.raises(ValueError):
        UniMat.parse("2,1,1,x")


def test_word_validation():
    with pytest.raises(ValueError):
        trace_of("LXR")
    with pytest.raises(ValueError):
        matrix_of("lr")


def test_geodesic_length_values():
    # frozen from an independent high-precision evaluation of 2*arccosh(t/2)
    assert geodesic_length(2) == 0.0
    assert geodesic_length(3) == pytest.approx(1.9248473002384139, rel=1e-12)
    assert geodesic_length(20) == pytest.approx(5.986445692252762, rel=1e-12)
    with pytest.raises(ValueError):
        geodesic_length(1)
    traces = [2, 3, 5, 100, 2**40, 2**60, 2**200]
    lengths = [geodesic_length(t) for t in traces]
    assert lengths == sorted(lengths)
    assert geodesic_length(2**60) == pytest.approx(2 * math.log(2**60), rel=1e-12)


def test_star_examples_and_involution():
    assert star("LLR") == "LRR"
    assert star("") == ""
    rng = random.Random(2)
    for _ in range(200):
        w = random_word(rng, 15)
        assert star(star(w)) == w
        # star is matrix transposition, hence trace-preserving
        a, b, c, d = matrix_of(w).as_tuple()
        assert matrix_of(star(w)).as_tuple() == (a, c, b, d)


def test_equivalent_examples():
    assert equivalent("RL", "LR")
    assert equivalent("LLR", "LRR")  # via star
    assert equivalent("", "")
    assert not equivalent("LL", "LR")
    assert not equivalent("L", "LL")


def test_canonical_examples():
    assert canonical("RL") == "LR"
    assert canonical("") == ""
    assert canonical("RRL") == "LLR"


def test_equivalence_soundness_exhaustive_to_14():
    # traces agree across every class, canonical is a class invariant, and
    # equal canonicals happen exactly within a class
    trace_cache = {w: trace_of(w) for w in all_words(14)}
    for w in all_words(14):
        cls = equivalence_class(w)
        canon = canonical(w)
        assert canon in cls
        t = trace_cache[w]
        for v in cls:
            assert trace_cache[v] == t
            assert canonical(v) == canon


def test_word_of_matrix_examples():
    assert word_of_matrix(UniMat(2, 1, 1, 1)) == "LR"
    assert word_of_matrix(UniMat.identity()) == ""
    assert word_of_matrix(UniMat(1, 5, 0, 1)) == "LLLLL"
    assert word_of_matrix(UniMat(1, 0, 4, 1)) == "RRRR"
    with pytest.raises(ValueError):
        word_of_matrix((2, 1, 1, 1))  # type: ignore[arg-type]


def test_roundtrip_exhaustive_to_10():
    for w in all_words(10):
        assert word_of_matrix(matrix_of(w)) == w


def test_roundtrip_sampled_len_40():
    rng = random.Random(3)
    for _ in range(2000):
        w = random_word(rng, 40)
        assert word_of_matrix(matrix_of(w)) == w


def test_insert_letter_examples():
    assert insert_letter("", 0, "R") == "R"
    assert insertion_trace("", 0, "R") == (2, 2)
    assert insert_letter("LR", 0, "L") == "LLR"
    assert insertion_trace("LR", 0, "L") == (3, 4)
    for pos in range(6):
        assert insertion_trace("LLLLL", pos, "R") == (2, 7)
    with pytest.raises(ValueError):
        insert_letter("LR", 3, "L")
    with pytest.raises(ValueError):
        insert_letter("LR", 0, "LL")


def test_insertion_monotonicity_exhaustive_to_9():
    for w in all_words(9):
        for pos in range(len(w) + 1):
            for letter in "LR":
                before, after = insertion_trace(w, pos, letter)
                assert after >= before, (w, pos, letter)


def test_insertion_monotonicity_sampled_long_words():
    rng = random.Random(4)
    for _ in range(2000):
        w = random_word(rng, 30)
        pos = rng.randint(0, len(w))
        letter = rng.choice("LR")
        before, after = insertion_trace(w, pos, letter)
        assert after >= before, (w, pos, letter)


def test_phi_power_floor_against_float():
    # doubles drift above the true power around n = 36, hence the small range
    for n in range(0, 26):
        assert phi_power_floor(n) == math.floor(GOLDEN_RATIO**n), n


def test_phi_power_floor_high_precision():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 60
    phi = (1 + mp.sqrt(5)) / 2
    for n in range(0, 140):
        assert phi_power_floor(n) == int(mp.floor(phi**n))


def test_log_phi_ceil():
    assert log_phi_ceil(1) == 0
    assert log_phi_ceil(2) == 2
    assert log_phi_ceil(4) == 3
    assert log_phi_ceil(11) == 5
    assert log_phi_ceil(19) == 7
    for m in range(2, 200):
        h = log_phi_ceil(m)
        assert GOLDEN_RATIO**h >= m - 1e-9
        assert GOLDEN_RATIO ** (h - 1) < m


def test_trace_bounds_exhaustive_to_12():
    # upper bound floor(phi^n) + 1 with exact integers, lower bound n + 1
    # for anything that is not a letter power, and max trace realized by the
    # alternating words
    ceilings = [phi_trace_ceiling(n) for n in range(13)]
    max_by_len = [0] * 13
    for w in all_words(12):
        t = trace_of(w)
        n = len(w)
        assert t <= ceilings[n], w
        if not is_letter_power(w):
            assert t >= n + 1, w
        max_by_len[n] = max(max_by_len[n], t)
    for n in range(1, 13):
        maximizer = "LR" * (n // 2) if n % 2 == 0 else "R" + "LR" * (n // 2)
        assert max_by_len[n] == trace_of(maximizer), n


def test_is_letter_power():
    assert is_letter_power("")
    assert is_letter_power("LLLL")
    assert is_letter_power("RR")
    assert not is_letter_power("LRL")
