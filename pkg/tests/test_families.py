"""Tests for src/families: curated catalog, symbolic verification and rendering."""

import json
import time
from collections import Counter

import pytest

from src.algebra.poly import format_polynomial
from src.algebra.semigroup import catalog_entry
from src.errors import FamilyFormatError, UnboundVariableError, UnknownSemigroupError, UnsupportedFormatError
from src.families.catalog import families_for, family_catalog, family_from_record, load_families
from src.families.render import render_family_table
from src.families.verify import system_residuals, verify_families, verify_family
from src.rbsystem.generator import generate_system
from src.schemas import FamilyRecord


def _family(fam_id: str):
    return next(f for f in family_catalog() if f.id == fam_id)


def _record(**overrides) -> FamilyRecord:
    data = {"id": "X", "semigroup": "L2", "entries": [["a", "-a^2/b"], ["b", "-a"]], "nonvanishing": ["b"]}
    data.update(overrides)
    return FamilyRecord(**data)


class TestFamilyCatalog:
    def test_seventy_nine_families(self):
        assert len(family_catalog()) == 79

    def test_counts_per_table(self):
        counts = Counter(f.semigroup for f in family_catalog())
        assert sum(counts[s] for s in ("N2", "Y2", "Z2", "L2")) == 5
        assert sum(counts[f"CS({k})"] for k in range(1, 13)) == 13
        assert [counts[f"NCS({k})"] for k in range(1, 7)] == [5, 9, 8, 8, 22, 9]

    def test_unique_ids(self):
        ids = [f.id for f in family_catalog()]
        assert len(set(ids)) == len(ids)

    def test_null_semigroup_family_is_unconstrained(self):
        fam = _family("C_{1,1}")
        assert [v.symbol_name for v in fam.params] == ["a", "b", "c", "d", "e", "f"]
        assert not fam.nonvanishing
        assert not fam.relations
        assert str(fam.entries[0][2]) == "-a - b"

    def test_c22_keeps_distinct_parameters(self):
        fam = _family("C_{2,2}")
        assert [format_polynomial(g) for g in fam.nonvanishing] == ["a - b"]
        assert str(fam.entries[2][2]) == "2*a - 2*b"

    def test_radical_family(self):
        fam = _family("N_{5,1}")
        assert [v.symbol_name for v in fam.aux] == ["F"]
        (rel,) = fam.relations
        assert format_polynomial(rel.radicand) == "-a*c - b*d"
        assert sorted(format_polynomial(g) for g in fam.nonvanishing) == ["F", "a", "b", "c", "d"]

    def test_zero_families(self):
        for sg_id in ("Y2", "Z2", "CS(4)", "CS(6)", "CS(8)", "CS(10)", "CS(12)"):
            (fam,) = families_for(sg_id)
            assert not fam.params
            assert all(not e.num for row in fam.entries for e in row)

    def test_discrepancies_are_annotated(self):
        for fam_id in ("N_{1,3}", "N_{2,1}", "N_{2,4}", "N_{2,5}", "N_{2,9}", "N_{3,6}", "N_{6,9}"):
            assert _family(fam_id).notes

    def test_errata_are_marked(self):
        assert sorted(f.id for f in family_catalog() if f.erratum) == ["N_{2,5}", "N_{2,9}"]

    def test_families_for_can_drop_errata(self):
        ids = [f.id for f in families_for("NCS(2)", include_errata=False)]
        assert len(ids) == 7
        assert "N_{2,5}" not in ids
        assert "N_{2,9}" not in ids
        assert len(families_for("NCS(2)")) == 9

    def test_families_for_unknown(self):
        with pytest.raises(UnknownSemigroupError):
            families_for("R2")


class TestWellFormedness:
    def test_unknown_semigroup(self):
        with pytest.raises(FamilyFormatError):
            family_from_record(_record(semigroup="Q8"))

    def test_wrong_order(self):
        with pytest.raises(FamilyFormatError):
            family_from_record(_record(semigroup="CS(1)"))

    def test_uncovered_denominator(self):
        with pytest.raises(FamilyFormatError):
            family_from_record(_record(nonvanishing=[]))

    def test_denominator_covered_up_to_sign(self):
        fam = family_from_record(_record(entries=[["a", "1/(b-a)"], ["0", "0"]], nonvanishing=["a-b"]))
        assert fam.order == 2

    def test_unused_aux(self):
        with pytest.raises(FamilyFormatError):
            family_from_record(_record(relations=[{"aux": "s", "radicand": "-a*b"}]))

    def test_radicand_with_aux(self):
        with pytest.raises(FamilyFormatError):
            family_from_record(
                _record(entries=[["s", "0"], ["0", "0"]], nonvanishing=[], relations=[{"aux": "s", "radicand": "s+1"}])
            )

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "families.json"
        path.write_text(json.dumps({"families": [_record().model_dump()]}))
        (fam,) = load_families(path)
        assert fam.id == "X"

    def test_duplicate_ids(self, tmp_path):
        path = tmp_path / "families.json"
        record = _record().model_dump()
        path.write_text(json.dumps({"families": [record, record]}))
        with pytest.raises(FamilyFormatError):
            load_families(path)

    def test_invalid_file(self, tmp_path):
        path = tmp_path / "families.json"
        path.write_text('{"families": [{"id": "X"}]}')
        with pytest.raises(FamilyFormatError):
            load_families(path)


class TestVerifyFamily:
    def test_left_zero_family(self):
        report = verify_family(_family("L2:1"))
        assert report.passed
        assert len(report.residuals) == 8

    def test_radical_family_needs_relation(self):
        assert verify_family(_family("N_{6,3}")).passed

    def test_corrupted_family_fails(self):
        fam = family_from_record(
            FamilyRecord(
                id="C_{1,1}-bad",
                semigroup="CS(1)",
                entries=[["a", "b", "a+b"], ["c", "d", "-c-d"], ["e", "f", "-e-f"]],
            )
        )
        report = verify_family(fam)
        assert not report.passed
        assert report.failures()

    def test_unbound_coefficient(self):
        fam = _family("L2:1")
        system = generate_system(catalog_entry("L2").table)
        bindings = fam.bindings()
        bindings.pop(next(iter(bindings)))
        with pytest.raises(UnboundVariableError):
            system_residuals(system, bindings, fam.ring)

    def test_every_curated_family_passes(self):
        start = time.perf_counter()
        reports = verify_families(family_catalog())
        elapsed = time.perf_counter() - start
        failed = [r.family_id for r in reports if not r.passed and not r.erratum]
        assert failed == []
        assert len(reports) == 79
        assert sorted(r.family_id for r in reports if r.erratum) == ["N_{2,5}", "N_{2,9}"]
        assert not any(r.passed for r in reports if r.erratum)
        assert elapsed < 30.0, f"Verification took {elapsed:.1f}s, expected < 30s"

    def test_erratum_residuals(self):
        failures = verify_family(_family("N_{2,5}")).failures()
        assert list(failures) == [(2, 1, 3)]
        assert format_polynomial(failures[(2, 1, 3)]) == "-a^2"
        failures = verify_family(_family("N_{2,9}")).failures()
        assert list(failures) == [(1, 1, 2), (1, 3, 2)]
        assert {format_polynomial(r) for r in failures.values()} == {"-b^2"}


class TestRenderFamilyTable:
    def test_text(self):
        text = render_family_table(["L2"])
        assert text.splitlines()[0] == "L2 (2 families)"
        assert "L2:1: [a, -a^2/b; b, -a]  (b != 0)" in text

    def test_json(self):
        payload = json.loads(render_family_table(["NCS(3)"], "json"))
        assert payload[0]["semigroup"] == "NCS(3)"
        assert len(payload[0]["families"]) == 8
        assert "s^2 = -a*b" in payload[0]["families"][1]["constraints"]

    def test_latex(self):
        doc = render_family_table(["N2", "L2"], "latex")
        assert doc.startswith("\\begin{tabular}")
        assert "\\frac{-a^{2}}{b}" in doc
        assert "b \\neq 0" in doc

    def test_unknown_format(self):
        with pytest.raises(UnsupportedFormatError):
            render_family_table(["L2"], "csv")

    def test_errata_flagged(self):
        lines = render_family_table(["NCS(2)"]).splitlines()
        flagged = [line for line in lines if line.endswith("[erratum]")]
        assert [line.split(":")[0].strip() for line in flagged] == ["N_{2,5}", "N_{2,9}"]
        payload = json.loads(render_family_table(["NCS(2)"], "json"))
        assert [f["erratum"] for f in payload[0]["families"]].count(True) == 2
