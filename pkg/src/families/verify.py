"""Symbolic verification: substitute a family into its semigroup's system.

Residual of E[i,j,m] = numerator of the substituted equation, reduced by the
aux relations. A family is a solution iff every residual is the zero
polynomial.
"""

from dataclasses import dataclass, field

from loguru import logger
from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.poly import AlgebraicRelation, RationalFunction, clear_denominators, reduce_mod_relations, substitute
from src.algebra.semigroup import catalog_entry
from src.families.catalog import ParametricFamily
from src.rbsystem.generator import EquationIndex, RboSystem, generate_system


@dataclass
class VerificationReport:
    family_id: str
    residuals: dict[EquationIndex, PolyElement] = field(default_factory=dict, repr=False)
    error: str = ""
    erratum: bool = False

    @property
    def passed(self) -> bool:
        return not self.error and all(not r for r in self.residuals.values())

    def failures(self) -> dict[EquationIndex, PolyElement]:
        return {index: r for index, r in sorted(self.residuals.items()) if r}


def system_residuals(
    system: RboSystem,
    bindings: dict,
    ring: PolyRing,
    relations: tuple[AlgebraicRelation, ...] | list[AlgebraicRelation] = (),
) -> dict[EquationIndex, PolyElement]:
    """Residual polynomial of every equation under a Coeff -> RationalFunction substitution."""
    residuals = {}
    for index, poly in system.items():
        value: RationalFunction = substitute(poly, bindings, ring)
        num, _ = clear_denominators(value)
        residuals[index] = reduce_mod_relations(num, list(relations))
    return residuals


def verify_family(fam: ParametricFamily, system: RboSystem | None = None) -> VerificationReport:
    """Check that a family solves the weight-zero system of its semigroup.

    Args:
        fam: Well-formed family.
        system: Pre-generated system to reuse across families of one semigroup.

    Returns:
        VerificationReport with one residual per equation.
    """
    if system is None:
        system = generate_system(catalog_entry(fam.semigroup).table, 0, fam.semigroup)
    report = VerificationReport(family_id=fam.id, erratum=fam.erratum)
    report.residuals = system_residuals(system, fam.bindings(), fam.ring, fam.relations)
    if report.passed:
        logger.debug(f"{fam.id}: all {len(system)} residuals vanish")
    elif fam.erratum:
        logger.info(f"{fam.id}: erratum record, {len(report.failures())} nonzero residuals")
    else:
        logger.warning(f"{fam.id}: {len(report.failures())} nonzero residuals")
    return report


def verify_families(families: list[ParametricFamily]) -> list[VerificationReport]:
    """Verify many families, generating each semigroup's system once; failures are logged, not raised."""
    systems: dict[str, RboSystem] = {}
    reports = []
    for fam in families:
        try:
            if fam.semigroup not in systems:
                systems[fam.semigroup] = generate_system(catalog_entry(fam.semigroup).table, 0, fam.semigroup)
            reports.append(verify_family(fam, systems[fam.semigroup]))
        except Exception as e:
            logger.error(f"Verification failed for {fam.id}: {e}")
            reports.append(VerificationReport(family_id=fam.id, error=str(e), erratum=fam.erratum))
    return reports
