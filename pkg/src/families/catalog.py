"""Curated parametric families of Rota-Baxter operators, loaded from JSON.

Each family is a matrix of rational functions in free parameters and
auxiliary square roots. Radical entries are never written with a complex
unit: an entry sqrt(ab)*i is stored as an aux s with s^2 = -a*b.

Architecture boundary: parsing and well-formedness of family data. Symbolic
verification lives in verify.py, F_p instances in instances.py.
"""

import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from loguru import logger
from pydantic import ValidationError
from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.poly import (
    AlgebraicRelation,
    RationalFunction,
    VariableId,
    coeff_variables,
    make_ring,
    parse_polynomial,
    parse_rational_function,
    variables_of,
)
from src.algebra.semigroup import catalog_entry
from src.errors import FamilyFormatError, RotaBaxterError, UnknownSemigroupError
from src.schemas import FamilyFile, FamilyRecord

FAMILIES_PATH = Path(__file__).resolve().parent / "data" / "families.json"

_IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class ParametricFamily:
    """A component of the solution set of one semigroup's defining system."""

    id: str
    semigroup: str
    ring: PolyRing = field(repr=False)
    params: tuple[VariableId, ...]
    aux: tuple[VariableId, ...]
    entries: tuple[tuple[RationalFunction, ...], ...] = field(repr=False)
    relations: tuple[AlgebraicRelation, ...] = ()
    nonvanishing: tuple[PolyElement, ...] = field(default=(), repr=False)
    paper_row: str = ""
    constraint_source: str = ""
    notes: str = ""
    erratum: bool = False
    source_entries: tuple[tuple[str, ...], ...] = field(default=(), repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.entries)

    def bindings(self) -> dict[VariableId, RationalFunction]:
        """Coeff(i, j) -> entry, the substitution that turns the system into residuals."""
        n = self.order
        return {VariableId.coeff(i, j): self.entries[i - 1][j - 1] for i in range(1, n + 1) for j in range(1, n + 1)}

    def variable_names(self) -> list[str]:
        """Params then aux, the order instance enumeration iterates in."""
        return [v.symbol_name for v in (*self.params, *self.aux)]


def _identifiers(texts: list[str]) -> set[str]:
    return {name for text in texts for name in _IDENTIFIER.findall(text)}


def _peel(den: PolyElement, nonvanishing: tuple[PolyElement, ...]) -> PolyElement:
    """Divide out nonvanishing factors; a constant remainder means den divides their product."""
    changed = True
    while changed and not den.is_ground:
        changed = False
        for g in nonvanishing:
            if g.is_ground:
                continue
            q, r = divmod(den, g)
            if not r:
                den = q
                changed = True
    return den


def family_from_record(record: FamilyRecord) -> ParametricFamily:
    """Build a ParametricFamily and check it is well formed.

    Args:
        record: Validated JSON record.

    Returns:
        ParametricFamily whose ring holds the coefficient variables, params and aux.
    """
    try:
        table = catalog_entry(record.semigroup).table
    except UnknownSemigroupError as e:
        raise FamilyFormatError(f"{record.id}: {e}") from e
    n = len(record.entries)
    if n != table.order:
        raise FamilyFormatError(f"{record.id}: {n}x{n} entries for {record.semigroup} of order {table.order}")

    aux_names = [rel.aux for rel in record.relations]
    if len(set(aux_names)) != len(aux_names):
        raise FamilyFormatError(f"{record.id}: more than one relation for an aux variable")
    texts = [e for row in record.entries for e in row] + record.nonvanishing + [r.radicand for r in record.relations]
    if record.params is None:
        param_names = sorted(_identifiers(texts) - set(aux_names))
    else:
        param_names = list(record.params)

    try:
        params = tuple(VariableId.param(name) for name in param_names)
        aux = tuple(VariableId.aux(name) for name in aux_names)
        R = make_ring([*coeff_variables(n), *params, *aux])
        entries = tuple(tuple(parse_rational_function(e, R) for e in row) for row in record.entries)
        relations = tuple(
            AlgebraicRelation(VariableId.aux(rel.aux), parse_polynomial(rel.radicand, R)) for rel in record.relations
        )
        nonvanishing = tuple(parse_polynomial(text, R) for text in record.nonvanishing)
    except (RotaBaxterError, ValueError) as e:
        raise FamilyFormatError(f"{record.id}: {e}") from e

    aux_set = set(aux_names)
    used_aux = {name for row in entries for e in row for name in variables_of(e.num) | variables_of(e.den)} & aux_set
    if used_aux != aux_set:
        raise FamilyFormatError(f"{record.id}: relations for unused aux {sorted(aux_set - used_aux)}")
    for rel in relations:
        if variables_of(rel.radicand) & aux_set:
            raise FamilyFormatError(f"{record.id}: radicand of {rel.aux} mentions an aux variable")
    for row in entries:
        for e in row:
            if not _peel(e.den, nonvanishing).is_ground:
                raise FamilyFormatError(f"{record.id}: denominator {e.den} is not covered by the nonvanishing list")

    return ParametricFamily(
        id=record.id,
        semigroup=record.semigroup,
        ring=R,
        params=params,
        aux=aux,
        entries=entries,
        relations=relations,
        nonvanishing=nonvanishing,
        paper_row=record.paper_row,
        constraint_source=record.constraint_source,
        notes=record.notes,
        erratum=record.erratum,
        source_entries=tuple(tuple(row) for row in record.entries),
    )


def load_families(path: str | Path) -> list[ParametricFamily]:
    """Load and check every record of a family JSON file."""
    path = Path(path)
    try:
        data = FamilyFile.model_validate_json(path.read_bytes())
    except OSError as e:
        raise FamilyFormatError(f"Cannot read family file {path}: {e}") from e
    except ValidationError as e:
        raise FamilyFormatError(f"Invalid family file {path}: {e}") from e
    ids = [record.id for record in data.families]
    if len(set(ids)) != len(ids):
        raise FamilyFormatError(f"Duplicate family ids in {path}")
    families = [family_from_record(record) for record in data.families]
    logger.debug(f"Loaded {len(families)} families from {path}")
    return families


@lru_cache(maxsize=1)
def _shipped_families() -> tuple[ParametricFamily, ...]:
    return tuple(load_families(FAMILIES_PATH))


def family_catalog() -> list[ParametricFamily]:
    """The 79 curated records: 5 of order two, 13 commutative and 61 noncommutative of order three.

    Two NCS(2) records are errata (`erratum=True`): printed rows that fail the identity.
    """
    return list(_shipped_families())


def families_for(
    sg_id: str, families: list[ParametricFamily] | None = None, include_errata: bool = True
) -> list[ParametricFamily]:
    catalog_entry(sg_id)
    pool = family_catalog() if families is None else families
    return [fam for fam in pool if fam.semigroup == sg_id and (include_errata or not fam.erratum)]
