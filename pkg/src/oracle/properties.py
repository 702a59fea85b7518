"""Structural properties of F_p solution sets.

For random solutions C drawn from the exhaustive search:
    - scaling: s*C is again a solution (weight zero only)
    - opposite: C also solves the opposite semigroup, and both solution sets agree
    - transport: conjugating C by a permutation solves the permuted table
    - cross-check: rb_defect and the generated system agree on random matrices
"""

import random
from dataclasses import dataclass, field

from loguru import logger

from src.algebra.field import PrimeFieldElement
from src.algebra.semigroup import CayleyTable, as_table, opposite
from src.oracle.solver import SolutionSet, brute_force_modp
from src.rbsystem.generator import OperatorMatrix, generate_system, is_rbo, system_vanishes


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class PropertyReport:
    table: CayleyTable
    p: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary(self) -> str:
        return ", ".join(f"{r.name}={'ok' if r.passed else 'FAIL'}({r.checked})" for r in self.results)


def permute_table(t: CayleyTable, perm: tuple[int, ...]) -> CayleyTable:
    """Table of the isomorphic copy with e_x renamed e_perm(x)."""
    n = t.order
    rows = [[0] * n for _ in range(n)]
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            rows[perm[x - 1] - 1][perm[y - 1] - 1] = perm[t.mul(x, y) - 1]
    return CayleyTable(tuple(tuple(r) for r in rows))


def _sample(solutions: SolutionSet, k: int, rng: random.Random) -> list[OperatorMatrix]:
    matrices = solutions.matrices()
    return rng.sample(matrices, min(k, len(matrices)))


def check_scaling(solutions: SolutionSet, samples: list[OperatorMatrix], rng: random.Random) -> PropertyResult:
    result = PropertyResult("scaling")
    for C in samples:
        s = PrimeFieldElement(rng.randrange(solutions.p), solutions.p)
        result.checked += 1
        if C.scale(s) not in solutions:
            result.failures.append(f"{s} * {C}")
    return result


def check_opposite(t: CayleyTable, solutions: SolutionSet) -> PropertyResult:
    result = PropertyResult("opposite", checked=len(solutions))
    other = brute_force_modp(opposite(t), solutions.p)
    if not (len(other) == len(solutions) and (other.codes == solutions.codes).all()):
        result.failures.append(f"{len(solutions)} solutions vs {len(other)} on the opposite semigroup")
    return result


def check_transport(
    t: CayleyTable, solutions: SolutionSet, samples: list[OperatorMatrix], perm: tuple[int, ...]
) -> PropertyResult:
    result = PropertyResult("transport")
    permuted = permute_table(t, perm)
    image = brute_force_modp(permuted, solutions.p)
    if len(image) != len(solutions):
        result.failures.append(f"{len(solutions)} solutions vs {len(image)} under {perm}")
    for C in samples:
        result.checked += 1
        if C.conjugate(perm) not in image:
            result.failures.append(f"{C} under {perm}")
    return result


def check_cross(t: CayleyTable, p: int, count: int, rng: random.Random, weight: int = 0) -> PropertyResult:
    """rb_defect and the polynomial system must agree on random matrices."""
    result = PropertyResult("cross_check")
    system = generate_system(t, weight)
    n = t.order
    for _ in range(count):
        code = rng.randrange(p ** (n * n))
        C = OperatorMatrix.from_code(code, n, p)
        result.checked += 1
        if is_rbo(t, C, weight) != system_vanishes(system, C):
            result.failures.append(str(C))
    return result


def property_suite(
    t: CayleyTable,
    p: int,
    samples: int = 10,
    seed: int = 2024,
    cross_check_samples: int = 0,
) -> PropertyReport:
    """Run every property on `samples` random solutions of t over F_p.

    Args:
        t: Associative table.
        p: Oracle prime.
        samples: Solutions drawn for scaling and transport.
        seed: RNG seed; the suite is deterministic for a fixed seed.
        cross_check_samples: Random matrices for the rb_defect agreement check; 0 skips it.

    Returns:
        PropertyReport with one result per property.
    """
    t = as_table(t)
    rng = random.Random(seed)
    solutions = brute_force_modp(t, p)
    chosen = _sample(solutions, samples, rng)
    perm = tuple(rng.sample(range(1, t.order + 1), t.order))

    report = PropertyReport(table=t, p=p)
    report.results.append(check_scaling(solutions, chosen, rng))
    report.results.append(check_opposite(t, solutions))
    report.results.append(check_transport(t, solutions, chosen, perm))
    if cross_check_samples:
        report.results.append(check_cross(t, p, cross_check_samples, rng))
    log = logger.info if report.passed else logger.warning
    log(f"Property suite on {t.to_lists()} over F_{p}: {report.summary()}")
    return report
