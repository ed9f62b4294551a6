"""Set-partition lattice: enumeration, join, Mobius, Kreweras."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finfree.errors import DimensionMismatch, DomainError, SizeCapError
from finfree.partitions import (
    PartitionType,
    SetPartition,
    enumerate_noncrossing,
    enumerate_partitions,
    is_noncrossing,
    join,
    kreweras,
    mobius_zero,
    partition_type,
    type_mobius,
    type_set_partition_count,
    type_vectors,
)


def bell_numbers(upto):
    # independent oracle: B(n+1) = sum_k C(n,k) B(k)
    from math import comb
    bell = [1]
    for n in range(upto):
        bell.append(sum(comb(n, k) * bell[k] for k in range(n + 1)))
    return bell


def catalan_numbers(upto):
    # independent oracle: C_{n+1} = sum_i C_i C_{n-i}
    cat = [1]
    for n in range(upto):
        cat.append(sum(cat[i] * cat[n - i] for i in range(n + 1)))
    return cat


def brute_force_partitions(n):
    # dedupe all n^n block-assignment strings into canonical frozensets
    seen = set()
    for assign in itertools.product(range(n), repeat=n):
        blocks = {}
        for i, b in enumerate(assign):
            blocks.setdefault(b, []).append(i + 1)
        seen.add(frozenset(tuple(b) for b in blocks.values()))
    return seen


class TestEnumeration:
    def test_n1_single(self):
        assert [str(p) for p in enumerate_partitions(1)] == ["{1}"]

    def test_n3_matches_brute_force(self):
        got = {frozenset(p.blocks) for p in enumerate_partitions(3)}
        assert got == brute_force_partitions(3)
        assert len(got) == 5

    def test_counts_are_bell(self):
        bell = bell_numbers(11)
        for n in range(1, 12):
            assert sum(1 for _ in enumerate_partitions(n)) == bell[n]

    def test_n10_count(self):
        assert sum(1 for _ in enumerate_partitions(10)) == 115975

    def test_lexicographic_rgs_order(self):
        for n in range(1, 8):
            seq = [p.rgs for p in enumerate_partitions(n)]
            assert seq == sorted(seq)
            assert len(set(seq)) == len(seq)

    def test_cap_error_names_cap(self):
        with pytest.raises(SizeCapError, match="3"):
            list(enumerate_partitions(9, cap=3))
        with pytest.raises(SizeCapError):
            list(enumerate_partitions(13))

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            list(enumerate_partitions(0))


class TestSetPartition:
    def test_rgs_invariants(self):
        p = SetPartition.from_string("{1,3}{2}{4}")
        assert p.rgs == (0, 1, 0, 2)
        assert p.rgs[0] == 0
        assert p.block_count == 1 + max(p.rgs)

    def test_blocks_round_trip(self):
        for n in range(1, 7):
            for p in enumerate_partitions(n):
                assert SetPartition.from_blocks(n, p.blocks) == p
                assert SetPartition.from_string(str(p)) == p

    def test_bad_rgs_rejected(self):
        with pytest.raises(DomainError):
            SetPartition((1, 0))
        with pytest.raises(DomainError):
            SetPartition((0, 2))

    def test_bad_blocks_rejected(self):
        with pytest.raises(DomainError):
            SetPartition.from_blocks(3, [(1, 2)])
        with pytest.raises(DomainError):
            SetPartition.from_blocks(3, [(1, 2), (2, 3)])


class TestJoin:
    def test_zero_is_identity(self):
        for n in range(1, 7):
            zero = SetPartition.zero(n)
            for p in enumerate_partitions(n):
                assert join(zero, p) == p

    def test_chain_connects_to_top(self):
        a = SetPartition.from_string("{1,2}{3}")
        b = SetPartition.from_string("{1}{2,3}")
        assert join(a, b) == SetPartition.one(3)

    def test_hand_example(self):
        a = SetPartition.from_string("{1,3}{2}{4}")
        b = SetPartition.from_string("{1}{2,4}{3}")
        assert str(join(a, b)) == "{1,3}{2,4}"

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            join(SetPartition.zero(3), SetPartition.zero(4))

    def test_commutative_idempotent(self):
        parts = list(enumerate_partitions(5))
        for a, b in itertools.islice(itertools.combinations(parts, 2), 300):
            assert join(a, b) == join(b, a)
        for a in parts:
            assert join(a, a) == a


class TestMobius:
    def test_zero_partition(self):
        for n in range(1, 8):
            assert mobius_zero(SetPartition.zero(n)) == 1

    def test_top_of_four(self):
        assert mobius_zero(SetPartition.one(4)) == -6

    def test_two_pairs(self):
        assert mobius_zero(SetPartition.from_string("{1,2}{3,4}")) == 1

    def test_sign_pattern(self):
        for n in range(1, 10):
            for p in enumerate_partitions(n):
                m = mobius_zero(p)
                expect_sign = -1 if (n - p.block_count) % 2 else 1
                assert (m > 0) == (expect_sign > 0)

    def test_type_level_agrees(self):
        for n in range(1, 8):
            by_type = {}
            for p in enumerate_partitions(n):
                t = partition_type(p).counts
                by_type[t] = by_type.get(t, 0) + 1
                assert mobius_zero(p) == type_mobius(t)
            for t, count in by_type.items():
                assert type_set_partition_count(t) == count
            assert set(by_type) == set(type_vectors(n))


class TestNoncrossing:
    def test_top_always(self):
        for n in range(1, 8):
            assert is_noncrossing(SetPartition.one(n))

    def test_minimal_crossing(self):
        assert not is_noncrossing(SetPartition.from_string("{1,3}{2,4}"))

    def test_catalan_counts_by_filter(self):
        cat = catalan_numbers(9)
        for n in range(1, 9):
            count = sum(1 for p in enumerate_partitions(n) if is_noncrossing(p))
            assert count == cat[n]

    def test_quadruple_definition(self):
        # the O(n^4) definition is the oracle for the linear-time check
        for p in enumerate_partitions(6):
            naive = True
            for i, j, k, l in itertools.combinations(range(6), 4):
                if (p.rgs[i] == p.rgs[k] and p.rgs[j] == p.rgs[l]
                        and p.rgs[i] != p.rgs[j]):
                    naive = False
                    break
            assert is_noncrossing(p) == naive

    def test_direct_enumeration_matches_filter(self):
        cat = catalan_numbers(10)
        for n in range(1, 10):
            direct = {p.rgs for p in enumerate_noncrossing(n)}
            assert len(direct) == cat[n]
        filtered = {p.rgs for p in enumerate_partitions(7) if is_noncrossing(p)}
        assert {p.rgs for p in enumerate_noncrossing(7)} == filtered


class TestKreweras:
    def test_extremes(self):
        for n in range(1, 9):
            assert kreweras(SetPartition.zero(n)) == SetPartition.one(n)
            assert kreweras(SetPartition.one(n)) == SetPartition.zero(n)

    def test_hand_example(self):
        p = SetPartition.from_string("{1,3}{2}{4}")
        assert str(kreweras(p)) == "{1,2}{3,4}"

    def test_crossing_rejected(self):
        with pytest.raises(DomainError):
            kreweras(SetPartition.from_string("{1,3}{2,4}"))

    def test_block_count_complement(self):
        for n in range(1, 10):
            for p in enumerate_noncrossing(n):
                q = kreweras(p)
                assert is_noncrossing(q)
                assert p.block_count + q.block_count == n + 1

    def test_double_complement_preserves_type(self):
        for n in range(1, 10):
            for p in enumerate_noncrossing(n):
                double = kreweras(kreweras(p))
                assert partition_type(double) == partition_type(p)


class TestPartitionType:
    def test_examples(self):
        assert partition_type(SetPartition.zero(4)).counts == (4, 0, 0, 0)
        assert partition_type(SetPartition.one(4)).counts == (0, 0, 0, 1)
        p = SetPartition.from_string("{1,3}{2}{4}")
        assert partition_type(p).counts == (2, 1, 0, 0)

    def test_weight_consistency(self):
        with pytest.raises(DomainError):
            PartitionType(4, (1, 0, 0, 0))

    def test_type_vectors_cover(self):
        assert set(type_vectors(4)) == {(4, 0, 0, 0), (2, 1, 0, 0), (0, 2, 0, 0),
                                        (1, 0, 1, 0), (0, 0, 0, 1)}


@st.composite
def random_partition(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    raw = draw(st.lists(st.integers(min_value=0, max_value=max_n),
                        min_size=n, max_size=n))
    # normalize to a restricted-growth string
    relabel = {}
    rgs = []
    for x in raw:
        if x not in relabel:
            relabel[x] = len(relabel)
        rgs.append(relabel[x])
    return SetPartition(rgs)


@settings(max_examples=60, deadline=None)
@given(random_partition())
def test_property_join_bounds(p):
    n = p.n
    assert join(p, SetPartition.zero(n)) == p
    assert join(p, SetPartition.one(n)) == SetPartition.one(n)
    assert join(p, p) == p


@settings(max_examples=60, deadline=None)
@given(random_partition())
def test_property_mobius_multiplicative(p):
    from math import factorial
    expected = 1
    for b in p.blocks:
        expected *= factorial(len(b) - 1)
    assert abs(mobius_zero(p)) == expected
