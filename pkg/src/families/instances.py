"""F_p instances of parametric families.

Every assignment of params and aux in F_p is evaluated in one numpy pass
per value of the first variable. Assignments are kept when every
nonvanishing polynomial is nonzero and every aux squares to its radicand,
so both roots s and -s of a relation are enumerated. Matrices are encoded
as base-p integers (row-major, first entry most significant), the same
codes the oracle produces.

Architecture boundary: bridges the family catalog to the oracle; no
brute-force search here.
"""

import numpy as np
from loguru import logger

from src.algebra.field import require_oracle_prime
from src.algebra.poly import evaluate_array
from src.algebra.semigroup import catalog_entry
from src.families.catalog import ParametricFamily, families_for
from src.rbsystem.generator import OperatorMatrix


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


def _grid(k: int, p: int) -> np.ndarray:
    """All p^k points of F_p^k as a (k, p^k) array, last coordinate fastest."""
    if k == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.indices((p,) * k, dtype=np.int64).reshape(k, -1)


def _codes_for_block(fam: ParametricFamily, columns: dict[str, np.ndarray], size: int, p: int) -> np.ndarray:
    inv = _inverse_table(p)
    mask = np.ones(size, dtype=bool)
    for g in fam.nonvanishing:
        mask &= evaluate_array(g, columns, p, size) != 0
    for rel in fam.relations:
        s = columns[rel.aux.symbol_name]
        mask &= (s * s - evaluate_array(rel.radicand, columns, p, size)) % p == 0
    if not mask.any():
        return np.empty(0, dtype=np.int64)

    kept = {name: col[mask] for name, col in columns.items()}
    count = int(mask.sum())
    codes = np.zeros(count, dtype=np.int64)
    valid = np.ones(count, dtype=bool)
    for row in fam.entries:
        for entry in row:
            num = evaluate_array(entry.num, kept, p, count)
            den = evaluate_array(entry.den, kept, p, count)
            valid &= den != 0
            codes = codes * p + (num * inv[den]) % p
    return codes[valid]


def instance_codes_modp(fam: ParametricFamily, p: int) -> np.ndarray:
    """Sorted, deduplicated base-p codes of the family's F_p instances."""
    require_oracle_prime(p)
    names = fam.variable_names()
    if not names:
        codes = _codes_for_block(fam, {}, 1, p)
        return np.unique(codes)

    rest = _grid(len(names) - 1, p)
    size = rest.shape[1]
    blocks = []
    for first in range(p):
        columns = {names[0]: np.full(size, first, dtype=np.int64)}
        for k, name in enumerate(names[1:]):
            columns[name] = rest[k]
        blocks.append(_codes_for_block(fam, columns, size, p))
    codes = np.unique(np.concatenate(blocks))
    logger.debug(f"{fam.id}: {len(codes)} instances over F_{p}")
    return codes


def instances_modp(fam: ParametricFamily, p: int) -> set[OperatorMatrix]:
    """Every F_p matrix the family produces under its constraints."""
    return {OperatorMatrix.from_code(int(code), fam.order, p) for code in instance_codes_modp(fam, p)}


def union_instance_codes(sg_id: str, p: int, families: list[ParametricFamily] | None = None) -> np.ndarray:
    """Codes of the union of all families of one semigroup; erratum records are left out."""
    require_oracle_prime(p)
    selected = families_for(sg_id, families, include_errata=False)
    if not selected:
        logger.warning(f"No families for {sg_id}")
        return np.empty(0, dtype=np.int64)
    return np.unique(np.concatenate([instance_codes_modp(fam, p) for fam in selected]))


def union_instances(sg_id: str, p: int, families: list[ParametricFamily] | None = None) -> set[OperatorMatrix]:
    n = catalog_entry(sg_id).table.order
    return {OperatorMatrix.from_code(int(code), n, p) for code in union_instance_codes(sg_id, p, families)}
