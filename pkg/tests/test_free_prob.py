from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from py_jmfree.exceptions import CrossingPartitionError, ParameterError, WordError
from py_jmfree.free_prob import (
    AtomicMeasure,
    CumulantSequence,
    MomentSequence,
    bernoulli_cumulants,
    cumulant_of_partition,
    cumulants_to_moments,
    evaluate_free_mixed_moment,
    free_compress,
    free_mixed_moment,
    free_mixed_moment_oracle,
    hankel_determinant,
    is_positive_moment_sequence,
    moments,
    moments_from_cumulants_nc,
    moments_to_cumulants,
    normalize_ab_word,
)
from py_jmfree.nc_partitions import SetPartition

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5)
traces = st.fractions(min_value=0, max_value=1, max_denominator=7).filter(lambda t: t > 0)


def cumulants(*values):
    return CumulantSequence(tuple(values))


SEMICIRCLE = cumulants(0, 1, 0, 0, 0, 0, 0, 0)


def test_atomic_measure_validation():
    with pytest.raises(ParameterError):
        AtomicMeasure(((0, Fraction(1, 2)),))
    with pytest.raises(ParameterError):
        AtomicMeasure(((0, Fraction(1, 2)), (0, Fraction(1, 2))))
    with pytest.raises(ParameterError):
        AtomicMeasure(((0, 2), (1, -1)))
    assert AtomicMeasure.dirac(3).weight(3) == 1


def test_moments_examples():
    coin = AtomicMeasure(((-1, Fraction(1, 2)), (1, Fraction(1, 2))))
    assert moments(coin, 4).values == (0, 1, 0, 1)
    assert moments(AtomicMeasure.dirac(2), 3).values == (2, 4, 8)
    with pytest.raises(ParameterError):
        moments(coin, 0)


def test_semicircle_moments_are_catalan():
    assert cumulants_to_moments(SEMICIRCLE).values == (0, 1, 0, 2, 0, 5, 0, 14)


def test_symmetric_bernoulli_cumulants():
    coin = AtomicMeasure(((-2, Fraction(1, 2)), (2, Fraction(1, 2))))
    assert moments_to_cumulants(moments(coin, 4)).values == (0, 4, 0, -16)


def test_projection_cumulants():
    t = Fraction(1, 3)
    k = bernoulli_cumulants(t, 3)
    assert k[0] == t
    assert k[1] == t - t * t
    assert cumulants_to_moments(k).values == (t, t, t)


@given(st.lists(rationals, min_size=1, max_size=8))
def test_moment_cumulant_round_trip(values):
    k = CumulantSequence(tuple(values))
    m = cumulants_to_moments(k)
    assert moments_to_cumulants(m) == k
    assert m == moments_from_cumulants_nc(k, len(values))


def test_cumulant_of_partition():
    k = cumulants(2, 3, 5)
    assert cumulant_of_partition(k, SetPartition.from_blocks([[1, 2], [3]])) == 6
    assert cumulant_of_partition(k, SetPartition.from_blocks([[1, 2, 3]])) == 5
    with pytest.raises(CrossingPartitionError):
        cumulant_of_partition(cumulants(1, 1), SetPartition.from_blocks([[1, 3], [2, 4]]))
    with pytest.raises(ParameterError):
        cumulant_of_partition(k, SetPartition.full(range(1, 5)))


def test_free_compress_of_semicircle():
    compressed = free_compress(cumulants_to_moments(SEMICIRCLE), Fraction(1, 2))
    assert moments_to_cumulants(compressed).values == (0, Fraction(1, 2), 0, 0, 0, 0, 0, 0)


def test_free_compress_by_one_is_identity():
    m = moments(AtomicMeasure(((-1, Fraction(1, 3)), (2, Fraction(2, 3)))), 6)
    assert free_compress(m, 1) == m


@given(st.lists(rationals, min_size=1, max_size=6), traces, traces)
def test_free_compress_composes(values, s, t):
    m = MomentSequence(tuple(values))
    assert free_compress(free_compress(m, s), t) == free_compress(m, s * t)


@pytest.mark.parametrize("t", [0, -1, Fraction(3, 2)])
def test_free_compress_rejects_bad_traces(t):
    with pytest.raises(ParameterError):
        free_compress(MomentSequence((0, 1)), t)


def test_normalize_ab_word():
    assert normalize_ab_word("abab") == ("b", "a", "b", "a")
    assert normalize_ab_word("bab") == ("b", "a")
    assert normalize_ab_word("bb") == ("b",)
    assert normalize_ab_word("abba") == ("a", "b", "a")
    with pytest.raises(WordError):
        normalize_ab_word("")
    with pytest.raises(WordError):
        normalize_ab_word("abc")


def test_free_mixed_moment_examples():
    k = cumulants(Fraction(1, 2), 3, 1, 1)
    t = Fraction(1, 4)
    assert free_mixed_moment("b", k, t) == t
    assert free_mixed_moment("bb", k, t) == t
    assert free_mixed_moment("ba", k, t) == t * Fraction(1, 2)
    assert free_mixed_moment("aa", k, t) == 3 + Fraction(1, 4)
    assert free_mixed_moment("abab", k, t) == 3 * t ** 2 + Fraction(1, 4) * t


def test_free_mixed_moment_reports_both_forms_of_the_word():
    k = cumulants(Fraction(1, 2), 3, 1, 1)
    t = Fraction(1, 4)
    result = evaluate_free_mixed_moment("bbab", k, t)
    assert result.word == ("b", "b", "a", "b")
    assert result.normalized_word == ("b", "a")
    assert result.value == result.raw_value == t * Fraction(1, 2)
    assert result.agrees
    rotated = evaluate_free_mixed_moment("abab", k, t)
    assert rotated.normalized_word == ("b", "a", "b", "a")
    assert rotated.value == rotated.raw_value == 3 * t ** 2 + Fraction(1, 4) * t
    with pytest.raises(WordError):
        evaluate_free_mixed_moment("", k, t)


@st.composite
def mixed_cases(draw):
    word = draw(st.lists(st.sampled_from("ab"), min_size=1, max_size=8))
    values = draw(st.lists(rationals, min_size=8, max_size=8))
    return "".join(word), CumulantSequence(tuple(values)), draw(traces)


@settings(max_examples=100)
@given(mixed_cases())
def test_free_mixed_moment_matches_vanishing_mixed_cumulants(case):
    word, k, t = case
    assert free_mixed_moment(word, k, t) == free_mixed_moment_oracle(word, k, t)


def test_hankel_positivity():
    assert is_positive_moment_sequence(cumulants_to_moments(SEMICIRCLE))
    assert hankel_determinant(MomentSequence((0, 1, 0, 2)), 1) == 1
    assert not is_positive_moment_sequence(MomentSequence((0, -1)))
    with pytest.raises(ParameterError):
        hankel_determinant(MomentSequence((0, 1)), 2)
