"""Tests for src/oracle: exhaustive F_p search, completeness reports and properties."""

import json
import time

import numpy as np
import pandas as pd
import pytest

from src.algebra.field import PrimeFieldElement
from src.algebra.semigroup import (
    CayleyTable,
    catalog_entry,
    catalog_ids,
    find_isomorphism,
    opposite,
    right_zero_table,
)
from src.errors import UnsupportedOrderError, UnsupportedPrimeError
from src.families.catalog import family_catalog
from src.oracle.kernels import compile_system, scan_block
from src.oracle.properties import permute_table, property_suite
from src.oracle.report import ClassificationReport, completeness_check, export_reports, reports_frame
from src.oracle.solver import brute_force_modp
from src.rbsystem.generator import OperatorMatrix, generate_system


def _table(sg_id: str) -> CayleyTable:
    return catalog_entry(sg_id).table


class TestBruteForce:
    def test_semilattice_has_only_zero(self):
        solutions = brute_force_modp(_table("Y2"), 7)
        assert solutions.as_set() == {OperatorMatrix.zero(2, 7)}

    def test_null_semigroup_count(self):
        assert len(brute_force_modp(_table("N2"), 7)) == 49

    @pytest.mark.parametrize("sg_id", ["Z2", "CS(4)", "CS(6)", "CS(8)", "CS(10)", "CS(12)"])
    def test_zero_only_semigroups(self, sg_id):
        assert len(brute_force_modp(_table(sg_id), 7)) == 1

    def test_null_semigroup_of_order_three(self):
        assert len(brute_force_modp(_table("CS(1)"), 7)) == 7**6

    def test_zero_is_always_a_solution(self):
        for sg_id in catalog_ids():
            t = _table(sg_id)
            assert OperatorMatrix.zero(t.order, 7) in brute_force_modp(t, 7)

    def test_sorted_output(self):
        codes = brute_force_modp(_table("L2"), 11).codes
        assert (np.diff(codes) > 0).all()

    def test_opposite_has_same_solutions(self):
        a = brute_force_modp(_table("L2"), 7)
        b = brute_force_modp(right_zero_table(), 7)
        assert np.array_equal(a.codes, b.codes)

    def test_equation_order_does_not_matter(self):
        t = _table("NCS(4)")
        order = [index for index, _ in generate_system(t).items()]
        forward = brute_force_modp(t, 7)
        backward = brute_force_modp(t, 7, equation_order=list(reversed(order)))
        assert np.array_equal(forward.codes, backward.codes)

    def test_parallel_matches_serial(self):
        t = _table("NCS(2)")
        assert np.array_equal(brute_force_modp(t, 7, jobs=2).codes, brute_force_modp(t, 7).codes)

    def test_weighted_search_contains_minus_identity(self):
        solutions = brute_force_modp(_table("Z2"), 7, weight=1)
        minus_one = PrimeFieldElement(-1, 7)
        zero = PrimeFieldElement(0, 7)
        assert OperatorMatrix(((minus_one, zero), (zero, minus_one))) in solutions

    def test_unsupported_prime(self):
        with pytest.raises(UnsupportedPrimeError):
            brute_force_modp(_table("CS(1)"), 5)

    def test_unsupported_order(self):
        null4 = CayleyTable(tuple((1, 1, 1, 1) for _ in range(4)))
        with pytest.raises(UnsupportedOrderError):
            brute_force_modp(null4, 7)


class TestKernelPerformance:
    def test_compiled_equation_count(self):
        system = generate_system(_table("NCS(5)"))
        compiled = compile_system(system, 7)
        assert compiled.equation_count == sum(1 for _, f in system.items() if f)
        assert compiled.equation_count <= 27

    def test_order_three_scan_speed(self):
        compiled = compile_system(generate_system(_table("CS(12)")), 7)
        scan_block(compiled, (0, 0))  # warm up numba JIT

        start = time.perf_counter()
        blocks = [scan_block(compiled, (a, b)) for a in range(7) for b in range(7)]
        elapsed = time.perf_counter() - start

        assert sum(len(b) for b in blocks) == 1
        assert elapsed < 60.0, f"Scan took {elapsed:.2f}s, expected < 60s"


class TestCompleteness:
    def test_left_zero(self):
        report = completeness_check("L2", 7)
        assert report.passed
        assert report.bruteforce_count == report.family_union_count == 49

    def test_null_semigroup_of_order_three(self):
        report = completeness_check("CS(1)", 7)
        assert report.passed
        assert report.bruteforce_count == 117649

    @pytest.mark.parametrize("sg_id", catalog_ids())
    def test_every_catalog_semigroup(self, sg_id):
        report = completeness_check(sg_id, 7)
        assert report.missing == []
        assert report.spurious == []

    def test_missing_family_is_reported(self):
        families = [f for f in family_catalog() if f.id != "L2:2"]
        report = completeness_check("L2", 7, families=families)
        assert not report.passed
        assert len(report.missing) == 7
        assert report.spurious == []


class TestReportExport:
    def test_json(self):
        report = ClassificationReport(
            semigroup="Z2", p=7, bruteforce_count=2, family_union_count=1, missing=[OperatorMatrix.from_code(1, 2, 7)]
        )
        payload = json.loads(report.to_json())
        assert payload["pass"] is False
        assert payload["missing"] == [[["0", "0"], ["0", "1"]]]
        assert "elapsed_seconds" not in payload

    def test_frame_and_files(self, tmp_path):
        reports = [completeness_check("Y2", 7), completeness_check("N2", 7)]
        frame = reports_frame(reports)
        assert list(frame["semigroup"]) == ["Y2", "N2"]
        assert frame["pass"].all()

        summary = export_reports(reports, tmp_path / "out")
        assert (tmp_path / "out" / "Y2.json").exists()
        assert pd.read_csv(summary)["bruteforce_count"].tolist() == [1, 49]

    def test_empty_frame(self):
        assert reports_frame([]).empty


class TestProperties:
    def test_null_semigroup(self):
        assert property_suite(_table("N2"), 7, samples=10).passed

    def test_left_zero(self):
        assert property_suite(_table("L2"), 7, samples=10).passed

    def test_transport_on_order_three(self):
        report = property_suite(_table("CS(7)"), 7, samples=10, cross_check_samples=200)
        assert report.passed
        assert [r.name for r in report.results] == ["scaling", "opposite", "transport", "cross_check"]

    def test_permuted_table_is_isomorphic(self):
        t = _table("NCS(4)")
        permuted = permute_table(t, (2, 3, 1))
        assert permuted != t
        assert find_isomorphism(t, permuted) is not None

    def test_opposite_of_noncommutative(self):
        t = _table("NCS(6)")
        assert np.array_equal(brute_force_modp(t, 7).codes, brute_force_modp(opposite(t), 7).codes)


class TestPropertiesOverCatalog:
    @pytest.mark.parametrize("sg_id", catalog_ids())
    def test_catalog_semigroup(self, sg_id):
        report = property_suite(_table(sg_id), 7, samples=10, cross_check_samples=1000)
        assert report.passed, report.summary()
