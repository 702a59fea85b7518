"""Completeness and soundness of the family catalog against the F_p oracle.

missing  = brute-force solutions in no family
spurious = family instances that are not solutions

A nonempty witness list is a finding, reported in full; it never aborts
a run over several semigroups.
"""

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger

from src.algebra.field import ORACLE_PRIMES
from src.algebra.semigroup import catalog_entry
from src.families.catalog import ParametricFamily
from src.families.instances import union_instance_codes
from src.oracle.solver import brute_force_modp
from src.rbsystem.generator import OperatorMatrix


@dataclass
class ClassificationReport:
    """Outcome of one completeness check."""

    semigroup: str
    p: int
    bruteforce_count: int = 0
    family_union_count: int = 0
    missing: list[OperatorMatrix] = field(default_factory=list)
    spurious: list[OperatorMatrix] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.missing and not self.spurious

    def to_dict(self) -> dict:
        return {
            "semigroup": self.semigroup,
            "p": self.p,
            "bruteforce_count": self.bruteforce_count,
            "family_union_count": self.family_union_count,
            "pass": self.passed,
            "missing": [C.to_lists() for C in self.missing],
            "spurious": [C.to_lists() for C in self.spurious],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.semigroup:<8} p={self.p} bruteforce={self.bruteforce_count} families={self.family_union_count} "
            f"missing={len(self.missing)} spurious={len(self.spurious)} {status}"
        )


def completeness_check(
    sg_id: str,
    p: int,
    jobs: int = 1,
    families: list[ParametricFamily] | None = None,
    allowed_primes=ORACLE_PRIMES,
) -> ClassificationReport:
    """Compare the exhaustive solution set of a catalog semigroup with its family union.

    Args:
        sg_id: Catalog id.
        p: Oracle prime.
        jobs: Worker processes for the search.
        families: Family pool; defaults to the shipped catalog.
        allowed_primes: Primes accepted by the oracle.

    Returns:
        ClassificationReport with full witness lists.
    """
    entry = catalog_entry(sg_id)
    start = time.perf_counter()
    solutions = brute_force_modp(entry.table, p, jobs=jobs, allowed_primes=allowed_primes)
    union = union_instance_codes(sg_id, p, families)
    n = entry.table.order
    report = ClassificationReport(
        semigroup=sg_id,
        p=p,
        bruteforce_count=len(solutions),
        family_union_count=len(union),
        missing=[OperatorMatrix.from_code(int(c), n, p) for c in np.setdiff1d(solutions.codes, union)],
        spurious=[OperatorMatrix.from_code(int(c), n, p) for c in np.setdiff1d(union, solutions.codes)],
    )
    report.elapsed_seconds = time.perf_counter() - start
    if report.passed:
        logger.info(f"{sg_id} over F_{p}: {report.bruteforce_count} solutions, all covered by families")
    else:
        logger.warning(
            f"{sg_id} over F_{p}: {len(report.missing)} missing, {len(report.spurious)} spurious "
            f"({report.bruteforce_count} vs {report.family_union_count})"
        )
    return report


def reports_frame(reports: list[ClassificationReport]) -> pd.DataFrame:
    """One summary row per report."""
    columns = ["semigroup", "p", "bruteforce_count", "family_union_count", "missing", "spurious", "pass", "elapsed_seconds"]
    if not reports:
        return pd.DataFrame(columns=columns)
    return pd.DataFrame(
        {
            "semigroup": [r.semigroup for r in reports],
            "p": [r.p for r in reports],
            "bruteforce_count": [r.bruteforce_count for r in reports],
            "family_union_count": [r.family_union_count for r in reports],
            "missing": [len(r.missing) for r in reports],
            "spurious": [len(r.spurious) for r in reports],
            "pass": [r.passed for r in reports],
            "elapsed_seconds": [round(r.elapsed_seconds, 3) for r in reports],
        },
        columns=columns,
    )


def export_reports(reports: list[ClassificationReport], out_dir: str | Path) -> Path:
    """Write <semigroup>.json per report and summary.csv with timings; returns the summary path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for report in reports:
        (out_dir / f"{report.semigroup}.json").write_text(report.to_json(), encoding="utf-8")
    summary = out_dir / "summary.csv"
    reports_frame(reports).to_csv(summary, index=False)
    logger.info(f"Classification reports exported: {out_dir} ({len(reports)} semigroups)")
    return summary
