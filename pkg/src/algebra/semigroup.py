"""Cayley tables, structure constants, isomorphism search and the built-in catalog.

Basis indices are 1-based everywhere, matching e_1..e_n: entry[k][l] = m means
e_k * e_l = e_m, with row k the left factor.

Architecture boundary: finite combinatorics only. Polynomial systems are
built from StructureConstants in src/rbsystem.
"""

import itertools
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from loguru import logger
from pydantic import ValidationError

from src.errors import (
    BadInputError,
    ClosureViolationError,
    OrderMismatchError,
    UnknownSemigroupError,
    UnsupportedOrderError,
)
from src.schemas import TableFile

MAX_ENUMERATION_ORDER = 3
CLASSIFY_MODES = ("iso", "iso_and_anti")


@dataclass(frozen=True)
class CayleyTable:
    """Multiplication table of a finite magma on e_1..e_n."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ClosureViolationError(f"Cayley table must be square and nonempty, got {[len(r) for r in rows]}")
        for k, row in enumerate(rows, start=1):
            for ell, m in enumerate(row, start=1):
                if not 1 <= m <= n:
                    raise ClosureViolationError(f"e_{k}*e_{ell} = e_{m} is outside 1..{n}")
        object.__setattr__(self, "entries", rows)

    @property
    def order(self) -> int:
        return len(self.entries)

    def mul(self, k: int, ell: int) -> int:
        """Index of e_k * e_l."""
        return self.entries[k - 1][ell - 1]

    def flat(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.entries))

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class StructureConstants:
    """0/1 array r with r[k][l][m] = 1 iff e_k * e_l = e_m (stored 0-based)."""

    array: np.ndarray = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return int(self.array.shape[0])

    def __call__(self, k: int, ell: int, m: int) -> int:
        """1-based lookup of r^m_{k l}."""
        return int(self.array[k - 1, ell - 1, m - 1])


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    table: CayleyTable
    commutative: bool


def as_table(t: "CayleyTable | Sequence[Sequence[int]]") -> CayleyTable:
    if isinstance(t, CayleyTable):
        return t
    return CayleyTable(tuple(tuple(row) for row in t))


def check_associativity(t: CayleyTable | Sequence[Sequence[int]]) -> bool:
    """True iff (e_a e_b) e_c = e_a (e_b e_c) for all n^3 triples."""
    t = as_table(t)
    n = t.order
    for a, b, c in itertools.product(range(1, n + 1), repeat=3):
        if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)):
            return False
    return True


def is_commutative(t: CayleyTable | Sequence[Sequence[int]]) -> bool:
    t = as_table(t)
    n = t.order
    return all(t.mul(k, ell) == t.mul(ell, k) for k in range(1, n + 1) for ell in range(k + 1, n + 1))


def structure_constants(t: CayleyTable | Sequence[Sequence[int]]) -> StructureConstants:
    """Expand the table into r^m_{k l}: exactly one 1 per (k, l) slice."""
    t = as_table(t)
    n = t.order
    r = np.zeros((n, n, n), dtype=np.int8)
    for k in range(n):
        for ell in range(n):
            r[k, ell, t.entries[k][ell] - 1] = 1
    return StructureConstants(r)


def opposite(t: CayleyTable | Sequence[Sequence[int]]) -> CayleyTable:
    """Opposite semigroup: x o y = y x."""
    t = as_table(t)
    n = t.order
    return CayleyTable(tuple(tuple(t.entries[ell][k] for ell in range(n)) for k in range(n)))


def find_isomorphism(t1, t2) -> tuple[int, ...] | None:
    """Search all n! bijections for pi with pi(x y) = pi(x) pi(y).

    Args:
        t1: Source table.
        t2: Target table of the same order.

    Returns:
        Tuple of 1-based images (pi(1), ..., pi(n)), or None when no isomorphism exists.
    """
    t1, t2 = as_table(t1), as_table(t2)
    if t1.order != t2.order:
        raise OrderMismatchError(f"orders {t1.order} and {t2.order}")
    n = t1.order
    pairs = list(itertools.product(range(1, n + 1), repeat=2))
    for perm in itertools.permutations(range(1, n + 1)):
        if all(perm[t1.mul(x, y) - 1] == t2.mul(perm[x - 1], perm[y - 1]) for x, y in pairs):
            return perm
    return None


def find_anti_isomorphism(t1, t2) -> tuple[int, ...] | None:
    """pi with pi(x y) = pi(y) pi(x), i.e. an isomorphism onto the opposite of t2."""
    return find_isomorphism(t1, opposite(as_table(t2)))


def enumerate_semigroups(n: int) -> list[CayleyTable]:
    """All associative tables on n <= 3 elements, lexicographic on flattened entries."""
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise UnsupportedOrderError(f"enumeration supports orders 1..{MAX_ENUMERATION_ORDER}, got {n}")
    found = []
    for flat in itertools.product(range(1, n + 1), repeat=n * n):
        table = CayleyTable(tuple(tuple(flat[k * n : (k + 1) * n]) for k in range(n)))
        if check_associativity(table):
            found.append(table)
    logger.debug(f"Order {n}: {len(found)} associative tables out of {n ** (n * n)}")
    return found


def _equivalent(t1: CayleyTable, t2: CayleyTable, mode: str) -> bool:
    if find_isomorphism(t1, t2) is not None:
        return True
    return mode == "iso_and_anti" and find_anti_isomorphism(t1, t2) is not None


def classify(tables: Iterable[CayleyTable], mode: str = "iso") -> list[CayleyTable]:
    """Partition tables into classes and return the lexicographically minimal member of each.

    Args:
        tables: Associative tables of one order.
        mode: "iso" or "iso_and_anti".

    Returns:
        Canonical representatives, sorted.
    """
    if mode not in CLASSIFY_MODES:
        raise ValueError(f"mode must be one of {CLASSIFY_MODES}, got {mode}")
    ordered = sorted({as_table(t) for t in tables}, key=CayleyTable.flat)
    representatives: list[CayleyTable] = []
    for table in ordered:
        if not any(_equivalent(table, rep, mode) for rep in representatives):
            representatives.append(table)
    return representatives


# Row k is the left factor.
_CATALOG_TABLES: dict[str, list[list[int]]] = {
    "N2": [[1, 1], [1, 1]],
    "Y2": [[1, 1], [1, 2]],
    "Z2": [[1, 2], [2, 1]],
    "L2": [[1, 1], [2, 2]],
    "CS(1)": [[1, 1, 1], [1, 1, 1], [1, 1, 1]],
    "CS(2)": [[1, 1, 1], [1, 1, 1], [1, 1, 2]],
    "CS(3)": [[1, 1, 1], [1, 2, 1], [1, 1, 1]],
    "CS(4)": [[1, 1, 1], [1, 2, 1], [1, 1, 3]],
    "CS(5)": [[1, 1, 1], [1, 2, 2], [1, 2, 2]],
    "CS(6)": [[1, 1, 1], [1, 2, 2], [1, 2, 3]],
    "CS(7)": [[1, 1, 1], [1, 2, 3], [1, 3, 1]],
    "CS(8)": [[1, 1, 1], [1, 2, 3], [1, 3, 2]],
    "CS(9)": [[1, 1, 3], [1, 1, 3], [3, 3, 1]],
    "CS(10)": [[1, 1, 3], [1, 2, 3], [3, 3, 1]],
    "CS(11)": [[1, 2, 2], [2, 1, 1], [2, 1, 1]],
    "CS(12)": [[1, 2, 3], [2, 3, 1], [3, 1, 2]],
    "NCS(1)": [[1, 1, 1], [1, 2, 1], [1, 3, 1]],
    "NCS(2)": [[1, 1, 1], [1, 2, 1], [3, 3, 3]],
    "NCS(3)": [[1, 1, 1], [1, 2, 2], [1, 3, 3]],
    "NCS(4)": [[1, 1, 1], [2, 2, 2], [1, 1, 1]],
    "NCS(5)": [[1, 1, 1], [2, 2, 2], [3, 3, 3]],
    "NCS(6)": [[1, 1, 1], [1, 2, 3], [3, 3, 3]],
}


def catalog() -> list[CatalogEntry]:
    """The 22 semigroups of orders 2 and 3, in table order."""
    entries = []
    for sg_id, rows in _CATALOG_TABLES.items():
        table = CayleyTable(tuple(tuple(r) for r in rows))
        entries.append(CatalogEntry(id=sg_id, table=table, commutative=is_commutative(table)))
    return entries


def catalog_ids() -> list[str]:
    return list(_CATALOG_TABLES)


def catalog_entry(sg_id: str) -> CatalogEntry:
    for entry in catalog():
        if entry.id == sg_id:
            return entry
    raise UnknownSemigroupError(f"Unknown semigroup id: {sg_id!r}")


def right_zero_table() -> CayleyTable:
    """R2, the opposite of the left-zero semigroup L2."""
    return opposite(catalog_entry("L2").table)


def match_catalog(t: CayleyTable | Sequence[Sequence[int]]) -> tuple[str, str] | None:
    """Catalog id and relation ("iso" or "anti") for an order-2 or order-3 semigroup."""
    t = as_table(t)
    for entry in catalog():
        if entry.table.order != t.order:
            continue
        if find_isomorphism(t, entry.table) is not None:
            return entry.id, "iso"
        if find_anti_isomorphism(t, entry.table) is not None:
            return entry.id, "anti"
    return None


@dataclass
class Census:
    """Counts printed by the enumerate command."""

    order: int
    total: int = 0
    iso_classes: int = 0
    iso_anti_classes: int = 0
    matches: dict[str, str] = field(default_factory=dict)


def census(n: int) -> Census:
    """Enumerate order-n semigroups and count classes in both modes."""
    tables = enumerate_semigroups(n)
    result = Census(order=n, total=len(tables))
    result.iso_classes = len(classify(tables, "iso"))
    reps = classify(tables, "iso_and_anti")
    result.iso_anti_classes = len(reps)
    if n >= 2:
        for rep in reps:
            match = match_catalog(rep)
            result.matches[json.dumps(rep.to_lists())] = match[0] if match else "unmatched"
    logger.info(
        f"Order {n}: {result.total} tables, {result.iso_classes} iso classes, "
        f"{result.iso_anti_classes} iso+anti classes"
    )
    return result


def table_from_json(text: str | bytes) -> CayleyTable:
    """Parse {"n": 3, "table": [[...], ...]} into a CayleyTable."""
    try:
        record = TableFile.model_validate_json(text)
    except ValidationError as e:
        raise BadInputError(f"Invalid Cayley table JSON: {e}") from e
    return CayleyTable(tuple(tuple(row) for row in record.table))


def table_to_json(t: CayleyTable) -> str:
    return TableFile(n=t.order, table=t.to_lists()).model_dump_json()
