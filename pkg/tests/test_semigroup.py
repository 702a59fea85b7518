"""Tests for src/algebra/semigroup.py: tables, isomorphisms, catalog and census."""

import itertools
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.semigroup import (
    CayleyTable,
    catalog,
    catalog_entry,
    catalog_ids,
    census,
    check_associativity,
    classify,
    enumerate_semigroups,
    find_anti_isomorphism,
    find_isomorphism,
    is_commutative,
    match_catalog,
    opposite,
    right_zero_table,
    structure_constants,
    table_from_json,
    table_to_json,
)
from src.errors import (
    BadInputError,
    ClosureViolationError,
    OrderMismatchError,
    UnknownSemigroupError,
    UnsupportedOrderError,
)


class TestCayleyTable:
    def test_rejects_out_of_range_entry(self):
        with pytest.raises(ClosureViolationError):
            CayleyTable(((1, 3), (1, 1)))

    def test_rejects_ragged_table(self):
        with pytest.raises(ClosureViolationError):
            CayleyTable(((1, 1), (1,)))

    def test_mul_is_one_based(self):
        t = catalog_entry("L2").table
        assert t.mul(2, 1) == 2
        assert t.mul(1, 2) == 1

    def test_json_round_trip(self):
        t = catalog_entry("NCS(6)").table
        assert table_from_json(table_to_json(t)) == t

    def test_json_wrong_shape(self):
        with pytest.raises(BadInputError):
            table_from_json('{"n": 3, "table": [[1,1],[1,1]]}')


class TestAssociativity:
    def test_catalog_is_associative(self):
        assert all(check_associativity(entry.table) for entry in catalog())

    def test_non_associative_table(self):
        # e1*e2 = e2, every other product is e1
        assert not check_associativity([[1, 2], [1, 1]])


class TestStructureConstants:
    def test_one_output_per_pair(self):
        r = structure_constants(catalog_entry("NCS(5)").table)
        assert (r.array.sum(axis=2) == 1).all()

    def test_lookup(self):
        r = structure_constants(catalog_entry("CS(12)").table)
        assert r(2, 3, 1) == 1
        assert r(2, 3, 2) == 0


class TestIsomorphism:
    def test_left_and_right_zero_are_anti_isomorphic(self):
        L2, R2 = catalog_entry("L2").table, right_zero_table()
        assert find_isomorphism(L2, R2) is None
        assert find_anti_isomorphism(L2, R2) is not None

    def test_identity_is_found_first(self):
        t = catalog_entry("NCS(1)").table
        assert find_isomorphism(t, t) == (1, 2, 3)

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            find_isomorphism(catalog_entry("N2").table, catalog_entry("CS(1)").table)

    def test_opposite_is_involution(self):
        for entry in catalog():
            assert opposite(opposite(entry.table)) == entry.table

    def test_commutative_equals_opposite(self):
        for entry in catalog():
            assert (opposite(entry.table) == entry.table) == entry.commutative

    def test_catalog_tables_pairwise_inequivalent(self):
        for a, b in itertools.combinations(catalog(), 2):
            if a.table.order != b.table.order:
                continue
            assert find_isomorphism(a.table, b.table) is None
            assert find_anti_isomorphism(a.table, b.table) is None

    def test_search_is_symmetric_over_catalog(self):
        for a, b in itertools.product(catalog(), repeat=2):
            if a.table.order != b.table.order:
                continue
            for search in (find_isomorphism, find_anti_isomorphism):
                forward, backward = search(a.table, b.table), search(b.table, a.table)
                assert (forward is None) == (backward is None), (search.__name__, a.id, b.id)
                if a.id == b.id:
                    assert forward is not None

    def test_found_maps_are_homomorphisms_both_ways(self):
        tables = enumerate_semigroups(2)
        for t1, t2 in itertools.product(tables, repeat=2):
            forward, backward = find_isomorphism(t1, t2), find_isomorphism(t2, t1)
            assert (forward is None) == (backward is None)
            for source, target, pi in ((t1, t2, forward), (t2, t1, backward)):
                if pi is None:
                    continue
                for x, y in itertools.product(range(1, 3), repeat=2):
                    assert pi[source.mul(x, y) - 1] == target.mul(pi[x - 1], pi[y - 1])


class TestCatalog:
    def test_twenty_two_ids(self):
        ids = catalog_ids()
        assert len(ids) == 22
        assert ids[:4] == ["N2", "Y2", "Z2", "L2"]

    def test_commutativity_split(self):
        commutative = [e.id for e in catalog() if e.commutative]
        assert commutative == ["N2", "Y2", "Z2"] + [f"CS({k})" for k in range(1, 13)]

    def test_unknown_id(self):
        with pytest.raises(UnknownSemigroupError):
            catalog_entry("CS(13)")

    def test_right_zero_is_not_a_catalog_entry(self):
        assert not is_commutative(right_zero_table())
        assert match_catalog(right_zero_table()) == ("L2", "anti")

    def test_match_catalog_identity(self):
        assert match_catalog(catalog_entry("NCS(3)").table) == ("NCS(3)", "iso")


class TestEnumeration:
    def test_order_one(self):
        assert enumerate_semigroups(1) == [CayleyTable(((1,),))]

    def test_order_two_count(self):
        assert len(enumerate_semigroups(2)) == 8

    def test_order_three_count(self):
        assert len(enumerate_semigroups(3)) == 113

    def test_order_four_unsupported(self):
        with pytest.raises(UnsupportedOrderError):
            enumerate_semigroups(4)
        assert UnsupportedOrderError.exit_code == 3

    def test_lexicographic_order(self):
        flats = [t.flat() for t in enumerate_semigroups(2)]
        assert flats == sorted(flats)

    @settings(max_examples=5, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_classify_ignores_input_order(self, rng):
        for n in (2, 3):
            tables = enumerate_semigroups(n)
            shuffled = list(tables)
            rng.shuffle(shuffled)
            for mode in ("iso", "iso_and_anti"):
                assert classify(shuffled + shuffled[:5], mode) == classify(tables, mode)

    def test_classify_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            classify(enumerate_semigroups(2), "anti")


class TestCensus:
    def test_order_two_classes(self):
        result = census(2)
        assert result.iso_classes == 5
        assert result.iso_anti_classes == 4

    def test_order_three_classes(self):
        start = time.perf_counter()
        result = census(3)
        elapsed = time.perf_counter() - start
        assert result.iso_classes == 24
        assert result.iso_anti_classes == 18
        assert elapsed < 10.0, f"Census took {elapsed:.2f}s, expected < 10s"

    def test_each_class_matches_one_catalog_entry(self):
        for n in (2, 3):
            matches = list(census(n).matches.values())
            assert "unmatched" not in matches
            assert len(set(matches)) == len(matches)
