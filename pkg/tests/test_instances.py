"""Tests for src/families/instances.py: F_p instances of the curated families."""

import numpy as np
import pytest

from src.algebra.semigroup import catalog_entry, catalog_ids
from src.errors import UnknownSemigroupError, UnsupportedPrimeError
from src.families.catalog import families_for, family_catalog
from src.families.instances import instance_codes_modp, instances_modp, union_instance_codes, union_instances
from src.oracle.solver import brute_force_modp
from src.rbsystem.generator import OperatorMatrix, codes_to_array, is_rbo, is_rbo_batch


def _family(fam_id: str):
    return next(f for f in family_catalog() if f.id == fam_id)


class TestInstanceCounts:
    def test_null_semigroup_family(self):
        assert len(instances_modp(_family("N2:1"), 7)) == 49

    def test_zero_family(self):
        assert instances_modp(_family("Y2:1"), 7) == {OperatorMatrix.zero(2, 7)}

    def test_left_zero_family_excludes_b_zero(self):
        instances = instances_modp(_family("L2:1"), 7)
        assert len(instances) == 42
        assert all(C[2, 1] for C in instances)

    def test_nonvanishing_constraint_respected(self):
        instances = instances_modp(_family("N_{1,2}"), 7)
        assert len(instances) == 6
        assert OperatorMatrix.zero(3, 7) not in instances

    def test_codes_sorted_and_unique(self):
        codes = instance_codes_modp(_family("C_{2,2}"), 11)
        assert (np.diff(codes) > 0).all()


class TestRadicalFamilies:
    def test_sign_twins_coincide(self):
        for first, second in (("N_{3,2}", "N_{3,3}"), ("N_{5,1}", "N_{5,2}"), ("N_{6,3}", "N_{6,4}")):
            a = instance_codes_modp(_family(first), 7)
            b = instance_codes_modp(_family(second), 7)
            assert np.array_equal(a, b)

    def test_roots_satisfy_relation(self):
        for C in instances_modp(_family("N_{5,21}"), 7):
            s, e, f = C[1, 1], C[1, 2], C[2, 1]
            assert s * s == -(e * f)
            assert C[2, 2] == -s


class TestUnion:
    def test_left_zero_union(self):
        assert len(union_instances("L2", 7)) == 49

    def test_group_union_is_zero(self):
        assert union_instances("Z2", 7) == {OperatorMatrix.zero(2, 7)}

    def test_null_semigroup_of_order_three(self):
        assert len(union_instance_codes("CS(1)", 7)) == 7**6

    def test_unknown_semigroup(self):
        with pytest.raises(UnknownSemigroupError):
            union_instances("R2", 7)

    def test_unsupported_prime(self):
        with pytest.raises(UnsupportedPrimeError):
            instances_modp(_family("N2:1"), 5)


class TestSoundness:
    @pytest.mark.parametrize("sg_id", catalog_ids())
    def test_instances_are_solutions(self, sg_id):
        table = catalog_entry(sg_id).table
        solutions = brute_force_modp(table, 7)
        for fam in families_for(sg_id, include_errata=False):
            codes = instance_codes_modp(fam, 7)
            assert np.isin(codes, solutions.codes).all(), fam.id

    @pytest.mark.parametrize("sg_id", catalog_ids())
    def test_instances_satisfy_identity_in_algebra(self, sg_id):
        table = catalog_entry(sg_id).table
        for fam in families_for(sg_id, include_errata=False):
            codes = instance_codes_modp(fam, 7)
            ok = is_rbo_batch(table, codes_to_array(codes, table.order, 7), 7)
            assert ok.all(), f"{fam.id}: {int((~ok).sum())} of {len(codes)} instances fail"

    def test_erratum_instances_fail(self):
        table = catalog_entry("NCS(2)").table
        for fam_id in ("N_{2,5}", "N_{2,9}"):
            codes = instance_codes_modp(_family(fam_id), 7)
            assert len(codes) == 6
            assert not is_rbo_batch(table, codes_to_array(codes, 3, 7), 7).any()
            assert not np.isin(codes, union_instance_codes("NCS(2)", 7)).any()

    def test_direct_check_on_order_two(self):
        for sg_id in ("N2", "Y2", "Z2", "L2"):
            table = catalog_entry(sg_id).table
            for C in union_instances(sg_id, 7):
                assert is_rbo(table, C), (sg_id, C)

    def test_direct_check_samples_every_family(self):
        for fam in family_catalog():
            if fam.erratum or fam.order != 3:
                continue
            table = catalog_entry(fam.semigroup).table
            codes = instance_codes_modp(fam, 7)
            for code in np.concatenate([codes[:10], codes[-10:]]):
                assert is_rbo(table, OperatorMatrix.from_code(int(code), 3, 7)), fam.id

    def test_direct_check_on_radical_family(self):
        table = catalog_entry("NCS(5)").table
        for C in sorted(instances_modp(_family("N_{5,1}"), 7), key=OperatorMatrix.code)[:50]:
            assert is_rbo(table, C)
