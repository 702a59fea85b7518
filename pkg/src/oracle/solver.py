"""Exhaustive search for Rota-Baxter operators over F_p.

Every matrix in F_p^{n x n} is tested against the generated system with
early exit on the first nonzero equation. The search space is split on the
two leading matrix entries, p^2 independent blocks that can run in worker
processes; results are merged and sorted.

Architecture boundary: search only. Family comparison lives in report.py.
"""

import itertools
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from loguru import logger

from src.algebra.field import ORACLE_PRIMES, PrimeFieldElement, reduce_rational, require_oracle_prime
from src.algebra.semigroup import CayleyTable, as_table
from src.errors import UnsupportedOrderError
from src.oracle.kernels import CompiledSystem, compile_system, scan_block
from src.rbsystem.generator import EquationIndex, OperatorMatrix, generate_system

MAX_ORACLE_ORDER = 3
PREFIX_LENGTH = 2


@dataclass
class SolutionSet:
    """Sorted base-p codes of every solution, decoded on demand."""

    n: int
    p: int
    codes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.codes)

    def __contains__(self, C: OperatorMatrix) -> bool:
        code = C.code()
        k = int(np.searchsorted(self.codes, code))
        return k < len(self.codes) and int(self.codes[k]) == code

    def matrices(self) -> list[OperatorMatrix]:
        return [OperatorMatrix.from_code(int(code), self.n, self.p) for code in self.codes]

    def as_set(self) -> set[OperatorMatrix]:
        return set(self.matrices())


def _weight_representative(weight, p: int) -> int:
    if isinstance(weight, PrimeFieldElement):
        return weight.value
    return reduce_rational(Fraction(weight), p).value


def _prefixes(n: int, p: int) -> list[tuple[int, ...]]:
    length = min(PREFIX_LENGTH, n * n)
    return list(itertools.product(range(p), repeat=length))


def _scan_all(compiled: CompiledSystem, jobs: int) -> np.ndarray:
    prefixes = _prefixes(compiled.n, compiled.p)
    if jobs <= 1:
        blocks = [scan_block(compiled, prefix) for prefix in prefixes]
    else:
        blocks = []
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {executor.submit(scan_block, compiled, prefix): prefix for prefix in prefixes}
            for future in as_completed(futures):
                blocks.append(future.result())
    if not blocks:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(blocks))


def brute_force_modp(
    t: CayleyTable,
    p: int,
    weight: Fraction | int | PrimeFieldElement = 0,
    jobs: int = 1,
    equation_order: Sequence[EquationIndex] | None = None,
    allowed_primes: Sequence[int] = ORACLE_PRIMES,
) -> SolutionSet:
    """All C in F_p^{n x n} satisfying the weight-lambda identity on t.

    Args:
        t: Associative table of order at most 3.
        p: Prime from allowed_primes.
        weight: lambda, reduced into F_p.
        jobs: Worker processes; 1 runs in-process.
        equation_order: Order in which equations are tried per candidate.
        allowed_primes: Primes accepted by the oracle.

    Returns:
        SolutionSet in lexicographic order of the row-major entries.
    """
    require_oracle_prime(p, allowed_primes)
    t = as_table(t)
    if t.order > MAX_ORACLE_ORDER:
        raise UnsupportedOrderError(f"exhaustive search supports orders up to {MAX_ORACLE_ORDER}, got {t.order}")
    w = _weight_representative(weight, p)
    system = generate_system(t, w)
    compiled = compile_system(system, p, equation_order)
    codes = _scan_all(compiled, jobs)
    logger.info(
        f"F_{p} search on {t.to_lists()}: {len(codes)} solutions out of {p ** (t.order ** 2)} candidates, "
        f"{compiled.equation_count} equations"
    )
    return SolutionSet(n=t.order, p=p, codes=codes)
