"""Rendering of RboSystems as text, JSON, LaTeX and a CAS polynomial list.

All formats are deterministic: equations appear in (i, j, m) order and
terms in the ring's graded lexicographic order.
"""

import json
import re
from fractions import Fraction

from sympy.polys.rings import PolyElement

from src.algebra.field import format_rational, parse_rational
from src.algebra.poly import (
    format_polynomial,
    make_ring,
    parse_variable,
    polynomial_from_json,
    polynomial_to_json,
    ring_names,
    to_fraction,
)
from src.algebra.semigroup import CayleyTable
from src.errors import BadInputError, UnsupportedFormatError
from src.rbsystem.generator import RboSystem

EXPORT_FORMATS = ("text", "json", "latex", "cas")

_COEFF_SUBSCRIPT = re.compile(r"^c(\d+?)_?(\d+)$")


def _latex_variable(name: str) -> str:
    match = _COEFF_SUBSCRIPT.match(name)
    if match:
        return f"c_{{{match.group(1)}{match.group(2)}}}"
    return name


def _latex_coefficient(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def latex_polynomial(f: PolyElement) -> str:
    """c_{11}^{2} + 2 c_{12} c_{21} style rendering."""
    if not f:
        return "0"
    names = ring_names(f.ring)
    out = []
    for monom, coeff in f.terms():
        c = to_fraction(coeff)
        factors = []
        for k, e in enumerate(monom):
            if e == 1:
                factors.append(_latex_variable(names[k]))
            elif e > 1:
                factors.append(f"{_latex_variable(names[k])}^{{{e}}}")
        mono = " ".join(factors)
        magnitude = abs(c)
        body = _latex_coefficient(magnitude) if not mono else (mono if magnitude == 1 else f"{_latex_coefficient(magnitude)} {mono}")
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def _text(system: RboSystem) -> str:
    lines = [f"E[{i},{j},{m}]: {format_polynomial(poly)}" for (i, j, m), poly in system.items()]
    return "\n".join(lines) + "\n"


def _json(system: RboSystem) -> str:
    payload = {
        "semigroup": system.semigroup_id,
        "table": system.table.to_lists(),
        "weight": format_rational(system.weight),
        "variables": ring_names(system.ring),
        "equations": [{"index": list(index), "terms": polynomial_to_json(poly)} for index, poly in system.items()],
    }
    return json.dumps(payload, indent=2) + "\n"


def _latex(system: RboSystem, environment: str) -> str:
    rows = [f"E_{{{i},{j},{m}}}:&\\quad {latex_polynomial(poly)} = 0" for (i, j, m), poly in system.items()]
    body = " \\\\\n".join(rows)
    return f"\\begin{{{environment}}}\n{body}\n\\end{{{environment}}}\n"


def _cas(system: RboSystem) -> str:
    variables = ", ".join(ring_names(system.ring))
    polys = ",\n  ".join(format_polynomial(poly) for _, poly in system.items())
    return f"vars := [{variables}];\neqs := [\n  {polys}\n];\n"


def export_system(system: RboSystem, fmt: str = "text", latex_environment: str = "align*") -> bytes:
    """Render a system in one of text, json, latex or cas.

    Args:
        system: Generated system.
        fmt: Output format.
        latex_environment: Display environment used by the latex format.

    Returns:
        UTF-8 encoded document.
    """
    if fmt == "text":
        document = _text(system)
    elif fmt == "json":
        document = _json(system)
    elif fmt == "latex":
        document = _latex(system, latex_environment)
    elif fmt == "cas":
        document = _cas(system)
    else:
        raise UnsupportedFormatError(f"Unsupported format {fmt!r}; choose one of {EXPORT_FORMATS}")
    return document.encode("utf-8")


def load_system_json(data: str | bytes) -> RboSystem:
    """Inverse of the json export."""
    try:
        payload = json.loads(data)
        R = make_ring(parse_variable(name) for name in payload["variables"])
        equations = {
            tuple(entry["index"]): polynomial_from_json(entry["terms"], R) for entry in payload["equations"]
        }
        table = CayleyTable(tuple(tuple(row) for row in payload["table"]))
        weight = parse_rational(payload["weight"])
    except (KeyError, TypeError, ValueError) as e:
        raise BadInputError(f"Invalid system JSON: {e}") from e
    return RboSystem(table=table, weight=weight, ring=R, equations=equations, semigroup_id=payload.get("semigroup", ""))
