"""Classification tables: one matrix per family with its constraints."""

import json

from src.algebra.poly import RationalFunction, format_polynomial
from src.algebra.semigroup import catalog_entry
from src.errors import UnsupportedFormatError
from src.families.catalog import ParametricFamily, families_for
from src.rbsystem.export import latex_polynomial

TABLE_FORMATS = ("text", "json", "latex")


def _constraints(fam: ParametricFamily) -> list[str]:
    out = [f"{rel.aux}^2 = {format_polynomial(rel.radicand)}" for rel in fam.relations]
    out += [f"{format_polynomial(g)} != 0" for g in fam.nonvanishing]
    return out


def _latex_entry(e: RationalFunction) -> str:
    if e.den == e.ring.one:
        return latex_polynomial(e.num)
    return f"\\frac{{{latex_polynomial(e.num)}}}{{{latex_polynomial(e.den)}}}"


def _latex_constraints(fam: ParametricFamily) -> str:
    parts = [f"{rel.aux}^{{2}} = {latex_polynomial(rel.radicand)}" for rel in fam.relations]
    parts += [f"{latex_polynomial(g)} \\neq 0" for g in fam.nonvanishing]
    return ", ".join(parts) if parts else "--"


def _text_table(groups: dict[str, list[ParametricFamily]]) -> str:
    lines = []
    for sg_id, fams in groups.items():
        lines.append(f"{sg_id} ({len(fams)} families)")
        for fam in fams:
            matrix = "; ".join(", ".join(row) for row in fam.source_entries)
            constraints = "; ".join(_constraints(fam))
            line = f"  {fam.id}: [{matrix}]" + (f"  ({constraints})" if constraints else "")
            lines.append(line + ("  [erratum]" if fam.erratum else ""))
    return "\n".join(lines) + "\n"


def _json_table(groups: dict[str, list[ParametricFamily]]) -> str:
    payload = [
        {
            "semigroup": sg_id,
            "families": [
                {
                    "id": fam.id,
                    "entries": [list(row) for row in fam.source_entries],
                    "constraints": _constraints(fam),
                    "paper_row": fam.paper_row,
                    "constraint_source": fam.constraint_source,
                    "notes": fam.notes,
                    "erratum": fam.erratum,
                }
                for fam in fams
            ],
        }
        for sg_id, fams in groups.items()
    ]
    return json.dumps(payload, indent=2) + "\n"


def _latex_table(groups: dict[str, list[ParametricFamily]]) -> str:
    rows = []
    for sg_id, fams in groups.items():
        for fam in fams:
            matrix = " \\\\ ".join(" & ".join(_latex_entry(e) for e in row) for row in fam.entries)
            rows.append(f"{sg_id} & ${fam.id}$ & $\\begin{{pmatrix}} {matrix} \\end{{pmatrix}}$ & ${_latex_constraints(fam)}$ \\\\")
    body = "\n".join(rows)
    return f"\\begin{{tabular}}{{llll}}\n\\hline\nSemigroup & Family & $C_P$ & Constraints \\\\\n\\hline\n{body}\n\\hline\n\\end{{tabular}}\n"


def render_family_table(
    sg_ids: list[str], fmt: str = "text", families: list[ParametricFamily] | None = None
) -> str:
    """Render the families of the given semigroups, in the order the ids are listed.

    Args:
        sg_ids: Catalog ids.
        fmt: text, json or latex.
        families: Family pool; defaults to the shipped catalog.

    Returns:
        The rendered table.
    """
    if fmt not in TABLE_FORMATS:
        raise UnsupportedFormatError(f"Unsupported table format {fmt!r}; choose one of {TABLE_FORMATS}")
    groups = {}
    for sg_id in sg_ids:
        catalog_entry(sg_id)
        groups[sg_id] = families_for(sg_id, families)
    if fmt == "json":
        return _json_table(groups)
    if fmt == "latex":
        return _latex_table(groups)
    return _text_table(groups)
