"""Tests for src/rbsystem/export.py: text, JSON, LaTeX and CAS renderings."""

import json
from fractions import Fraction

import pytest

from src.algebra.semigroup import catalog_entry
from src.errors import BadInputError, UnsupportedFormatError
from src.rbsystem.export import export_system, latex_polynomial, load_system_json
from src.rbsystem.generator import generate_system


@pytest.fixture
def n2_system():
    return generate_system(catalog_entry("N2").table, 0, "N2")


class TestTextFormat:
    def test_one_line_per_equation(self):
        system = generate_system(catalog_entry("CS(1)").table, 0, "CS(1)")
        lines = export_system(system, "text").decode().splitlines()
        assert len(lines) == 27
        assert lines[0].startswith("E[1,1,1]: ")

    def test_first_equation(self, n2_system):
        lines = export_system(n2_system, "text").decode().splitlines()
        assert lines[0] == "E[1,1,1]: -c11^2 + c12^2"

    def test_byte_identical_reruns(self, n2_system):
        again = generate_system(catalog_entry("N2").table, 0, "N2")
        for fmt in ("text", "json", "latex", "cas"):
            assert export_system(n2_system, fmt) == export_system(again, fmt)


class TestLatexFormat:
    def test_environment_and_rows(self, n2_system):
        doc = export_system(n2_system, "latex").decode()
        assert doc.startswith("\\begin{align*}")
        assert doc.rstrip().endswith("\\end{align*}")
        assert doc.count("= 0") == 8
        assert "E_{1,1,1}:&\\quad -c_{11}^{2} + c_{12}^{2} = 0" in doc

    def test_custom_environment(self, n2_system):
        doc = export_system(n2_system, "latex", latex_environment="eqnarray*").decode()
        assert doc.startswith("\\begin{eqnarray*}")

    def test_rational_coefficient(self):
        system = generate_system(catalog_entry("Z2").table, Fraction(1, 2))
        assert "\\frac{1}{2} c_{11}" in latex_polynomial(system.equation(1, 1, 1))


class TestJsonFormat:
    def test_payload(self, n2_system):
        payload = json.loads(export_system(n2_system, "json"))
        assert payload["semigroup"] == "N2"
        assert payload["weight"] == "0"
        assert payload["variables"] == ["c11", "c12", "c21", "c22"]
        assert payload["equations"][0]["index"] == [1, 1, 1]
        assert len(payload["equations"]) == 8

    def test_load_inverts_export(self):
        system = generate_system(catalog_entry("NCS(2)").table, Fraction(-2, 3), "NCS(2)")
        loaded = load_system_json(export_system(system, "json"))
        assert loaded.items() == system.items()
        assert loaded.weight == Fraction(-2, 3)
        assert loaded.table == system.table

    def test_load_rejects_garbage(self):
        with pytest.raises(BadInputError):
            load_system_json('{"variables": ["c11"]}')


class TestCasFormat:
    def test_maple_lists(self, n2_system):
        doc = export_system(n2_system, "cas").decode()
        assert doc.startswith("vars := [c11, c12, c21, c22];")
        assert "-c11^2 + c12^2," in doc
        assert doc.rstrip().endswith("];")


class TestUnsupportedFormat:
    def test_raises(self, n2_system):
        with pytest.raises(UnsupportedFormatError):
            export_system(n2_system, "mathml")
