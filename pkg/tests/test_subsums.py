from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zerosum import (
    Sequence,
    SumTable,
    find_zero_sum_subsequence,
    group,
    is_minimal_zero_sum,
    is_zero_sum_free,
    restricted_sums,
    subsequence_sums,
)
from zerosum.errors import InvalidRange

from oracles import (
    naive_is_minimal_zero_sum,
    naive_is_zero_sum_free,
    naive_restricted_sums,
    random_sequence,
)


def seq(n, *terms):
    return Sequence.from_terms(group(n), terms)


def test_sums_of_repeated_generator():
    s = Sequence.repeated(group(5), (0, 1), 4)
    assert subsequence_sums(s) == {(0, 1), (0, 2), (0, 3), (0, 4)}
    assert is_zero_sum_free(s)


def test_restricted_sums_small_hand_case():
    s = seq(3, (1, 0), (1, 0), (0, 1))
    assert restricted_sums(s, 1, 1) == {(1, 0), (0, 1)}
    assert restricted_sums(s, 2, 2) == {(2, 0), (1, 1)}
    assert restricted_sums(s, 1, 3) == {(1, 0), (0, 1), (2, 0), (1, 1), (2, 1)}
    assert restricted_sums(s, 0, 0) == {(0, 0)}


def test_restricted_sums_range_validation():
    s = seq(3, (1, 0), (0, 1))
    for lmin, lmax in [(-1, 1), (2, 1), (0, 3), (1, 5)]:
        with pytest.raises(InvalidRange):
            restricted_sums(s, lmin, lmax)


def test_empty_sequence_conventions():
    e = Sequence.empty(group(4))
    assert subsequence_sums(e) == frozenset()
    assert is_zero_sum_free(e)
    assert not is_minimal_zero_sum(e)


def test_zero_term_sequences():
    assert is_minimal_zero_sum(seq(4, (0, 0)))
    assert not is_minimal_zero_sum(seq(4, (0, 0), (0, 0)))
    assert not is_zero_sum_free(seq(4, (0, 0)))


def test_minimal_zero_sum_examples():
    assert is_minimal_zero_sum(seq(3, (1, 0), (1, 0), (1, 0)))
    assert not is_minimal_zero_sum(seq(3, (1, 0), (1, 0)))
    # zero-sum but splits into two zero-sum halves
    assert not is_minimal_zero_sum(
        seq(3, (1, 0), (1, 0), (1, 0), (0, 1), (0, 1), (0, 1))
    )
    # the n = 2 extremal example: all three involutions once
    assert is_minimal_zero_sum(seq(2, (0, 1), (1, 0), (1, 1)))


def test_minimality_equivalent_to_single_removals_zero_sum_free():
    rng = random.Random(5)
    grp = group(4)
    for _ in range(60):
        s = random_sequence(rng, grp, rng.randrange(1, 8))
        if not s.is_zero_sum():
            continue
        via_removals = all(
            is_zero_sum_free(s.remove(Sequence.repeated(grp, g, 1)))
            for g in s.support()
        )
        assert is_minimal_zero_sum(s) == via_removals


def test_sum_table_membership_and_witness():
    s = seq(5, (0, 1), (0, 1), (1, 0), (1, 3))
    table = SumTable(s, 3)
    assert table.contains((0, 2), 2)
    assert not table.contains((0, 2), 1)
    w = table.witness((1, 4), 2)
    assert w is not None and len(w) == 2 and w.sigma() == (1, 4)
    assert w.is_subsequence_of(s)
    assert table.witness((4, 4), 1) is None


def test_find_zero_sum_subsequence():
    s = seq(3, (1, 0), (2, 0), (1, 1), (2, 2), (0, 1))
    t = find_zero_sum_subsequence(s, 2)
    assert t is not None and len(t) == 2 and t.sigma() == (0, 0)
    assert find_zero_sum_subsequence(seq(3, (1, 0), (1, 0)), 2) is None
    with pytest.raises(InvalidRange):
        find_zero_sum_subsequence(s, 0)
    with pytest.raises(InvalidRange):
        find_zero_sum_subsequence(s, 6)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dp_matches_powerset_oracle(n):
    rng = random.Random(40 + n)
    grp = group(n)
    for _ in range(25):
        s = random_sequence(rng, grp, rng.randrange(0, 9))
        length = len(s)
        for lmin in range(0, length + 1):
            for lmax in range(lmin, length + 1):
                assert restricted_sums(s, lmin, lmax) == naive_restricted_sums(
                    s, lmin, lmax
                ), (s, lmin, lmax)
        assert is_zero_sum_free(s) == naive_is_zero_sum_free(s)
        assert is_minimal_zero_sum(s) == naive_is_minimal_zero_sum(s)


def test_witness_found_whenever_oracle_says_so():
    rng = random.Random(77)
    grp = group(3)
    for _ in range(40):
        s = random_sequence(rng, grp, rng.randrange(1, 8))
        for length in range(1, len(s) + 1):
            exists = (0, 0) in naive_restricted_sums(s, length, length)
            got = find_zero_sum_subsequence(s, length)
            assert (got is not None) == exists
            if got is not None:
                assert len(got) == length and got.sigma() == (0, 0)
                assert got.is_subsequence_of(s)


@given(
    st.integers(min_value=2, max_value=5),
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=7),
)
@settings(max_examples=80, deadline=None)
def test_zero_sum_freeness_is_hereditary(n, terms):
    grp = group(n)
    s = Sequence.from_terms(grp, terms)
    if is_zero_sum_free(s):
        for g in s.support():
            assert is_zero_sum_free(s.remove(Sequence.repeated(grp, g, 1)))
    else:
        assert not is_zero_sum_free(s.concat(s))
