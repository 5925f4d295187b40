import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from itertools import product

import pytest
from hypothesis import given, strategies as st
from sympy import npartitions

from partitions import Partition, partitions_of, pieri_index_set, transpose


def P(*parts):
    return Partition(parts)


def test_transpose_examples():
    assert transpose(P(1)) == P(1)
    assert transpose(P(4)) == P(1, 1, 1, 1)
    assert transpose(P(3, 1)) == P(2, 1, 1)


@given(st.integers(min_value=0, max_value=12).flatmap(lambda n: st.sampled_from(partitions_of(n))))
def test_transpose_is_involution(lam):
    assert transpose(transpose(lam)) == lam
    assert transpose(lam).weight == lam.weight


def test_partitions_of_small():
    assert partitions_of(0) == (P(),)
    assert list(partitions_of(2)) == [P(1, 1), P(2)]
    assert len(partitions_of(6)) == 11


def test_partition_counts_match_sympy():
    for n in range(31):
        found = partitions_of(n)
        assert len(found) == npartitions(n)
        assert list(found) == sorted(set(found))


def test_parse_and_str():
    assert Partition.parse("(2,1)") == P(2, 1)
    assert Partition.parse("1 2") == P(2, 1)
    assert str(P(3, 1, 1)) == "(3,1,1)"
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_pieri_examples():
    assert pieri_index_set(P(1), 1) == [P(2), P(1, 1)]
    assert pieri_index_set(P(), 1) == [P(1)]


def test_pieri_includes_new_rows():
    # rows below the last part can gain a box too
    assert pieri_index_set(P(2, 1), 2) == [P(3, 2), P(3, 1, 1), P(2, 2, 1), P(2, 1, 1, 1)]


def test_pieri_row_cap():
    assert pieri_index_set(P(2, 1), 2, max_rows=3) == [P(3, 2), P(3, 1, 1), P(2, 2, 1)]
    assert pieri_index_set(P(2, 1), 4, max_rows=3) == []


def test_pieri_first_entry_fills_first_rows():
    mu = P(3, 2, 2)
    assert pieri_index_set(mu, 2)[0] == P(4, 3, 2)


def test_pieri_matches_brute_force():
    for n in range(5):
        for mu in partitions_of(n):
            for p in range(1, 4):
                rows = len(mu) + p
                expected = set()
                for bits in product((0, 1), repeat=rows):
                    if sum(bits) != p:
                        continue
                    parts = [mu[i] + bits[i] for i in range(rows)]
                    if all(a >= b for a, b in zip(parts, parts[1:])):
                        expected.add(Partition(tuple(x for x in parts if x)))
                assert set(pieri_index_set(mu, p)) == expected
