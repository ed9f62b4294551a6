"""Symmetric-group machinery: genus, censuses, annular permutations."""

import itertools

import pytest

from finfree.errors import DimensionMismatch, DomainError, SizeCapError
from finfree.partitions import SetPartition, is_noncrossing, join, kreweras
from finfree.permutations import (
    CycleType,
    Permutation,
    annular_kreweras,
    canonical_gamma,
    compose,
    cycle_types,
    enumerate_annular,
    enumerate_snc,
    gamma_pair,
    is_transitive_pair,
    orbit_partition,
    relative_genus,
    snc_type_census,
    type_count,
)


def catalan_numbers(upto):
    cat = [1]
    for n in range(upto):
        cat.append(sum(cat[i] * cat[n - i] for i in range(n + 1)))
    return cat


class TestBasics:
    def test_cycle_string_round_trip(self):
        a = Permutation.from_cycle_string("(1,7,4)(2,5)(3,6)")
        assert str(a) == "(1,7,4)(2,5)(3,6)"
        assert Permutation.from_cycle_string(str(a)) == a

    def test_fixed_points_printed(self):
        a = Permutation.from_cycle_string("(2,5)", n=5)
        assert str(a) == "(1)(2,5)(3)(4)"

    def test_bad_input(self):
        with pytest.raises(DomainError):
            Permutation((1, 1, 2))
        with pytest.raises(DomainError):
            Permutation.from_cycle_string("(1,2)(2,3)")

    def test_compose_identity(self):
        b = Permutation.from_cycle_string("(1,3,2)")
        assert compose(Permutation.identity(3), b) == b
        assert compose(b, b.inverse()) == Permutation.identity(3)

    def test_compose_hand_example(self):
        # alpha^{-1} gamma_4 for alpha = (1,3), applying gamma first
        a = Permutation.from_cycle_string("(1,3)", n=4)
        g = Permutation.from_cycle_string("(1,2,3,4)")
        assert str(compose(a.inverse(), g)) == "(1,2)(3,4)"

    def test_compose_dimension(self):
        with pytest.raises(DimensionMismatch):
            compose(Permutation.identity(3), Permutation.identity(4))

    def test_orbit_partition(self):
        assert orbit_partition(Permutation.identity(3)) == SetPartition.zero(3)
        assert orbit_partition(Permutation.from_cycle_string("(1,2,3)")) == SetPartition.one(3)
        a = Permutation.from_cycle_string("(1,7,4)(2,5)(3,6)")
        assert str(orbit_partition(a)) == "{1,4,7}{2,5}{3,6}"

    def test_kreweras_consistency(self):
        # f(alpha^{-1} gamma_n) = Kr(f(alpha)) pins the composition convention
        for n in range(2, 9):
            g = canonical_gamma([n])
            for a in enumerate_snc([n], 0):
                p = orbit_partition(a)
                assert orbit_partition(compose(a.inverse(), g)) == kreweras(p)


class TestGamma:
    def test_full_cycle(self):
        assert str(canonical_gamma([5])) == "(1,2,3,4,5)"

    def test_with_fixed_points(self):
        assert str(canonical_gamma([3, 1, 1])) == "(1,2,3)(4)(5)"

    def test_two_cycles(self):
        assert str(canonical_gamma([4, 3])) == "(1,2,3,4)(5,6,7)"
        assert gamma_pair(4, 3) == canonical_gamma([4, 3])
        # gamma_pair also covers r < s, which has no sorted cycle type
        assert str(gamma_pair(1, 2)) == "(1)(2,3)"

    def test_bad_type(self):
        with pytest.raises(DomainError):
            CycleType((1, 2))
        with pytest.raises(DomainError):
            CycleType((0,))


class TestTransitivity:
    def test_identity_with_full_cycle(self):
        for n in range(1, 7):
            assert is_transitive_pair(Permutation.identity(n), canonical_gamma([n]))

    def test_identity_with_split(self):
        assert not is_transitive_pair(Permutation.identity(4), canonical_gamma([2, 2]))

    def test_figure_pair(self):
        a = Permutation.from_cycle_string("(1,7,4)(2,5)(3,6)")
        g = Permutation.from_cycle_string("(1,2,3,4)(5,6,7)")
        assert is_transitive_pair(a, g)

    def test_matches_join(self):
        g = canonical_gamma([3, 2])
        for img in itertools.permutations(range(1, 6)):
            a = Permutation(img)
            via_join = join(orbit_partition(a), orbit_partition(g)) == SetPartition.one(5)
            assert is_transitive_pair(a, g) == via_join


class TestRelativeGenus:
    def test_full_cycle_self(self):
        for n in range(1, 8):
            g = canonical_gamma([n])
            assert relative_genus(g, g) == 0

    def test_torus_pair(self):
        a = Permutation.from_cycle_string("(1,7,4)(2,5)(3,6)")
        g = Permutation.from_cycle_string("(1,2,3,4)(5,6,7)")
        assert relative_genus(a, g) == 1

    def test_annular_pair(self):
        a = Permutation.from_cycle_string("(1,7,5,4)(3)(2,6)")
        g = Permutation.from_cycle_string("(1,2,3,4)(5,6,7)")
        assert relative_genus(a, g) == 0

    def test_requires_transitive(self):
        with pytest.raises(DomainError):
            relative_genus(Permutation.identity(4), canonical_gamma([2, 2]))

    def test_parity_exhaustive(self):
        # Euler residue is even and non-negative over all transitive pairs
        for n in range(1, 8):
            for zeta in cycle_types(n):
                g = canonical_gamma(zeta)
                cg = g.cycle_count
                for img in itertools.permutations(range(1, n + 1)):
                    a = Permutation(img)
                    if not is_transitive_pair(a, g):
                        continue
                    residue = n + 2 - a.cycle_count - compose(a.inverse(), g).cycle_count - cg
                    assert residue >= 0 and residue % 2 == 0


class TestEnumerateSnc:
    def test_catalan_counts(self):
        cat = catalan_numbers(8)
        for n in range(1, 8):
            assert len(enumerate_snc([n], 0)) == cat[n]

    def test_bijection_with_noncrossing(self):
        for n in range(2, 9):
            members = enumerate_snc([n], 0)
            images = {orbit_partition(a).rgs for a in members}
            assert len(images) == len(members)
            assert all(is_noncrossing(SetPartition(r)) for r in images)

    def test_membership_example(self):
        inside = Permutation.from_cycle_string("(1,4,7)(2,5)(3,6)")
        assert inside in enumerate_snc([4, 3], 1)

    def test_two_fixed_points(self):
        assert enumerate_snc([1, 1], 0) == [Permutation.from_cycle_string("(1,2)")]

    def test_lexicographic_order(self):
        members = enumerate_snc([3, 2], 0)
        assert [m.image for m in members] == sorted(m.image for m in members)

    def test_genus_sum_is_transitive_count(self):
        for n in range(1, 8):
            for zeta in cycle_types(n):
                g = canonical_gamma(zeta)
                total = sum(1 for img in itertools.permutations(range(1, n + 1))
                            if is_transitive_pair(Permutation(img), g))
                by_genus = sum(len(enumerate_snc(zeta, gg)) for gg in range(n // 2 + 1))
                assert by_genus == total

    def test_cap(self):
        with pytest.raises(SizeCapError):
            enumerate_snc([10], 0)

    def test_census_matches_enumeration(self):
        for zeta in ((4,), (3, 2), (2, 2, 1)):
            census = snc_type_census(zeta)
            n = sum(zeta)
            for g in range(n // 2 + 1):
                members = enumerate_snc(zeta, g)
                assert sum(census.get(g, {}).values()) == len(members)


class TestAnnular:
    def test_brute_force_counts(self):
        # independent sweep with inline join/genus logic
        for r in range(1, 5):
            for s in range(1, 5):
                if r + s > 8 or r + s < 2:
                    continue
                n = r + s
                g = gamma_pair(r, s)
                count = 0
                for img in itertools.permutations(range(1, n + 1)):
                    a = Permutation(img)
                    if not is_transitive_pair(a, g):
                        continue
                    if a.cycle_count + compose(a.inverse(), g).cycle_count == n:
                        count += 1
                assert count == len(enumerate_annular(r, s))

    def test_symmetry_r_s(self):
        for r, s in ((1, 3), (2, 3), (1, 4)):
            assert len(enumerate_annular(r, s)) == len(enumerate_annular(s, r))

    def test_kreweras_examples(self):
        assert annular_kreweras(Permutation.from_cycle_string("(1,2)"), 1, 1) == \
            Permutation.from_cycle_string("(1,2)")
        a = Permutation.from_cycle_string("(1,7,5,4)(3)(2,6)")
        kr = annular_kreweras(a, 4, 3)
        assert kr.cycle_count == 4
        assert kr == compose(a.inverse(), gamma_pair(4, 3))
        # connecting full cycle on the (2,1) annulus, right-to-left convention
        kr21 = annular_kreweras(Permutation.from_cycle_string("(1,2,3)"), 2, 1)
        assert str(kr21) == "(1)(2,3)"
        assert kr21.cycle_count == 2

    def test_rejects_non_annular(self):
        with pytest.raises(DomainError):
            annular_kreweras(Permutation.identity(4), 2, 2)
        a = Permutation.from_cycle_string("(1,7,4)(2,5)(3,6)")  # genus 1
        with pytest.raises(DomainError):
            annular_kreweras(a, 4, 3)


class TestTypeCount:
    def test_full_cycles(self):
        from math import factorial
        for n in range(1, 8):
            assert type_count([n]) == factorial(n - 1)

    def test_identity_type(self):
        assert type_count([1, 1, 1, 1]) == 1

    def test_two_two(self):
        assert type_count([2, 2]) == 3
        count = sum(1 for img in itertools.permutations(range(1, 5))
                    if Permutation(img).cycle_type() == CycleType((2, 2)))
        assert count == 3

    def test_all_types_sum_to_group_order(self):
        from math import factorial
        for n in range(1, 8):
            assert sum(type_count(z) for z in cycle_types(n)) == factorial(n)
