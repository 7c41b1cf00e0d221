"""
Six-Dimensional Catalog

The 34 six-dimensional nilpotent Lie algebras with their published
invariants, and the batch verification that recomputes every column.
"""

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cohomology import cohomology, euler_check
from .config import Budget
from .flexibility import (
    FlexibilityCertificate,
    ValueSetReport,
    find_certificate,
    genericity_report,
    value_sets,
)
from .harmonic import chain_level_h, harmonic_engine, theorem_iso_check
from .liespec import LieAlgebraSpec, lower_central_series, parse_salamon
from .symplectic import moduli_dimension, operator_checks, symplectic_cone, symplectic_existence

CATALOG_PATH = Path(__file__).parent / "data" / "catalog.txt"
CATALOG_SIZE = 34
NON_SYMPLECTIC_ROWS = 8
FLEXIBLE_ROWS = 10
OPERATOR_STREAM = 4

PASS = "pass"
FAIL = "fail"
INSUFFICIENT = "insufficient budget"
NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class CatalogEntry:
    """
    One row of the table.

    ``expected_h3``, ``expected_h4``, ``expected_h5`` and
    ``expected_moduli_dim`` are None for algebras without symplectic forms.
    """

    index: int
    structure: str
    b1: int
    b2: int
    six_minus_s: int
    direct_sum: Optional[str]
    expected_h3: Optional[Tuple[int, ...]]
    expected_h4: Optional[Tuple[int, ...]]
    expected_h5: Optional[Tuple[int, ...]]
    expected_moduli_dim: Optional[int]
    expected_flexible: bool

    @property
    def symplectic(self) -> bool:
        return self.expected_h3 is not None

    @property
    def expected_values(self) -> Dict[int, Optional[Tuple[int, ...]]]:
        return {3: self.expected_h3, 4: self.expected_h4, 5: self.expected_h5}

    def spec(self) -> LieAlgebraSpec:
        return parse_salamon(self.structure)


def _values(cell: str, line_number: int) -> Optional[Tuple[int, ...]]:
    if cell == "-":
        return None
    try:
        return tuple(sorted(int(part) for part in cell.split(",")))
    except ValueError:
        raise ValueError(f"catalog line {line_number}: bad value cell {cell!r}")


def _parse_row(line: str, line_number: int, index: int) -> CatalogEntry:
    cells = [cell.strip() for cell in line.split("|")]
    if len(cells) != 10:
        raise ValueError(f"catalog line {line_number}: expected 10 fields, got {len(cells)}")
    structure, b1, b2, six_minus_s, direct_sum, h3, h4, h5, moduli, flexible = cells
    if flexible not in ("yes", "no"):
        raise ValueError(f"catalog line {line_number}: flexible must be yes or no, got {flexible!r}")
    try:
        numbers = int(b1), int(b2), int(six_minus_s)
    except ValueError:
        raise ValueError(f"catalog line {line_number}: b1, b2 and 6-s must be integers")
    moduli_values = _values(moduli, line_number)
    return CatalogEntry(
        index=index,
        structure=structure,
        b1=numbers[0],
        b2=numbers[1],
        six_minus_s=numbers[2],
        direct_sum=direct_sum or None,
        expected_h3=_values(h3, line_number),
        expected_h4=_values(h4, line_number),
        expected_h5=_values(h5, line_number),
        expected_moduli_dim=moduli_values[0] if moduli_values else None,
        expected_flexible=flexible == "yes",
    )


def load_catalog(path: Optional[Union[str, Path]] = None) -> List[CatalogEntry]:
    """
    Read the catalog data file.

    Args:
        path: Optional alternative file in the same format

    Returns:
        Entries in file order, numbered from 1

    Raises:
        ValueError: if a row is malformed
    """
    source = Path(path) if path is not None else CATALOG_PATH
    entries = []
    for line_number, line in enumerate(source.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        entries.append(_parse_row(line, line_number, len(entries) + 1))
    return entries


def catalog_invariants(entries: Sequence[CatalogEntry]) -> Dict[str, bool]:
    """Row counts and the relations the table satisfies on its own."""
    return {
        "size": len(entries) == CATALOG_SIZE,
        "non_symplectic_rows": sum(not e.symplectic for e in entries) == NON_SYMPLECTIC_ROWS,
        "flexible_rows": sum(e.expected_flexible for e in entries) == FLEXIBLE_ROWS,
        "ordered": [(e.b1, e.b2, e.six_minus_s) for e in entries]
        == sorted((e.b1, e.b2, e.six_minus_s) for e in entries),
        "self_consistent": all(_table_consistent(e) for e in entries),
    }


def _table_consistent(entry: CatalogEntry) -> bool:
    if not entry.symplectic:
        return entry.expected_moduli_dim is None and not entry.expected_flexible
    if entry.expected_moduli_dim != entry.b2 + (6 - entry.b1):
        return False
    if entry.six_minus_s == 4 and entry.expected_h5 != (2 * (entry.b1 - 3),):
        return False
    varying = any(len(values) > 1 for values in entry.expected_values.values())
    return varying == entry.expected_flexible


@dataclass(frozen=True)
class ColumnResult:
    status: str
    expected: object = None
    computed: object = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "expected": self.expected,
            "computed": self.computed,
            "detail": self.detail,
        }


@dataclass
class EntryReport:
    """Verification of one catalog row, column by column."""

    entry: CatalogEntry
    budget: Budget
    seed: int
    columns: Dict[str, ColumnResult] = field(default_factory=dict)
    value_report: Optional[ValueSetReport] = None
    certificate: Optional[FlexibilityCertificate] = None
    genericity: Optional[dict] = None
    elapsed: Optional[float] = None

    @property
    def status(self) -> str:
        statuses = {result.status for result in self.columns.values()}
        if FAIL in statuses:
            return FAIL
        if INSUFFICIENT in statuses:
            return INSUFFICIENT
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def computed(self, name: str):
        result = self.columns.get(name)
        return result.computed if result is not None else None

    def as_dict(self) -> dict:
        data = {
            "index": self.entry.index,
            "structure": self.entry.structure,
            "direct_sum": self.entry.direct_sum,
            "status": self.status,
            "columns": {name: result.as_dict() for name, result in self.columns.items()},
            "value_sets": self.value_report.as_dict() if self.value_report is not None else None,
            "certificate": (
                self.certificate.as_dict(self.entry.spec()) if self.certificate is not None else None
            ),
        }
        if self.genericity is not None:
            data["genericity"] = self.genericity
        if self.elapsed is not None:
            data["elapsed_seconds"] = round(self.elapsed, 3)
        return data


def _compare(expected, computed) -> ColumnResult:
    return ColumnResult(PASS if expected == computed else FAIL, expected, computed)


def _value_column(expected: Tuple[int, ...], attained: Tuple[int, ...], budget: Budget) -> ColumnResult:
    if budget.is_zero:
        return ColumnResult(INSUFFICIENT, list(expected), list(attained), "no cone points sampled")
    if attained == expected:
        return ColumnResult(PASS, list(expected), list(attained))
    if set(attained) < set(expected) and not budget.covers(Budget.default()):
        missing = sorted(set(expected) - set(attained))
        return ColumnResult(INSUFFICIENT, list(expected), list(attained), f"not attained: {missing}")
    return ColumnResult(FAIL, list(expected), list(attained))


def _flexible_column(entry: CatalogEntry, spec: LieAlgebraSpec, report: Optional[ValueSetReport],
                     budget: Budget, seed: int) -> Tuple[ColumnResult, Optional[FlexibilityCertificate]]:
    expected = entry.expected_flexible
    if report is None:
        status = PASS if not expected else INSUFFICIENT
        return ColumnResult(status, expected, False, "no cone points sampled"), None
    varying = report.varying_degrees()
    if not expected:
        if varying:
            return ColumnResult(FAIL, False, True, f"h varies in degrees {varying}"), None
        return ColumnResult(PASS, False, False), None
    if not varying:
        status = INSUFFICIENT if not budget.covers(Budget.default()) else FAIL
        return ColumnResult(status, True, False, "no variation observed"), None
    outcome = find_certificate(spec, report)
    if isinstance(outcome, FlexibilityCertificate):
        if outcome.revalidate(spec, seed):
            return ColumnResult(PASS, True, True, f"certified in degree {outcome.k}"), outcome
        return ColumnResult(FAIL, True, False, "certificate failed revalidation"), outcome
    reason = outcome.reason if outcome is not None else "no certificate attempted"
    return ColumnResult(FAIL, True, False, reason), None


def _chain_column(spec: LieAlgebraSpec, points: Sequence[Tuple[Fraction, ...]]) -> ColumnResult:
    cone = symplectic_cone(spec)
    engine = harmonic_engine(spec)
    for number, point in enumerate(points):
        omega = cone.symplectic_form(point)
        expected = engine.h_numbers(point[: cone.class_dimension])
        chain = tuple(chain_level_h(spec, omega, k) for k in range(spec.n + 1))
        if chain != expected:
            witness = [str(c) for c in point]
            return ColumnResult(FAIL, list(expected), list(chain), f"disagreement at {witness}")
        if number == 0 and not theorem_iso_check(spec, omega):
            return ColumnResult(FAIL, None, None, f"harmonic isomorphism fails at {[str(c) for c in point]}")
    return ColumnResult(PASS, len(points), len(points), "harmonic numbers agree on forms")


def verify_entry(entry: CatalogEntry, budget: Budget, seed: int = 0, chain_samples: int = 2,
                 jobs: int = 1, verbose: bool = False, timing: bool = False,
                 genericity: bool = False) -> EntryReport:
    """
    Recompute every column of a catalog row and compare with the table.

    Value-set columns that fall short of the table under a budget smaller
    than the default are reported as insufficient rather than failed.

    Args:
        entry: Catalog row
        budget: Search budget for the symplectic cone
        seed: Seed for every randomized step
        chain_samples: Attained h-vectors re-checked on forms
        jobs: Worker processes for the value-set search
        verbose: Print progress to standard error
        timing: Record elapsed seconds in the report
        genericity: Also run the genericity report

    Returns:
        EntryReport; failures are report content, never exceptions
    """
    started = time.perf_counter()
    if verbose:
        print(f"🚀 Row {entry.index}: {entry.structure}", file=sys.stderr)
    spec = entry.spec()
    space = cohomology(spec)
    report = EntryReport(entry, budget, seed)
    columns = report.columns

    columns["b1"] = _compare(entry.b1, space.betti(1))
    columns["b2"] = _compare(entry.b2, space.betti(2))
    expected_b3 = 2 * (entry.b2 - entry.b1 + 1)
    columns["b3"] = ColumnResult(
        PASS if euler_check(spec) and space.betti(3) == expected_b3 else FAIL, expected_b3, space.betti(3)
    )
    columns["six_minus_s"] = _compare(entry.six_minus_s, 6 - lower_central_series(spec).step_length)
    columns["table"] = ColumnResult(PASS if _table_consistent(entry) else FAIL, detail="row self-consistency")

    existence = symplectic_existence(spec)
    columns["symplectic"] = _compare(entry.symplectic, existence.admits)
    if not existence.admits:
        for name in ("moduli", "h3", "h4", "h5"):
            status = PASS if not entry.symplectic else FAIL
            columns[name] = ColumnResult(status, None, None, "no symplectic form")
        columns["flexible"] = _compare(entry.expected_flexible, False)
        for name in ("structural", "operators", "chain_level"):
            columns[name] = ColumnResult(NOT_APPLICABLE)
        return _finish(report, started, timing, verbose)

    columns["moduli"] = _compare(entry.expected_moduli_dim, moduli_dimension(spec))
    cone = symplectic_cone(spec)
    rng = np.random.default_rng([seed, OPERATOR_STREAM, entry.index])
    failed = sorted(name for name, ok in operator_checks(cone.symplectic_form(existence.witness), rng).items()
                    if not ok)
    columns["operators"] = ColumnResult(FAIL if failed else PASS, detail=", ".join(failed))

    values_report = None
    if not budget.is_zero:
        values_report = value_sets(spec, budget, seed, jobs=jobs, verbose=verbose)
        report.value_report = values_report
    for k, expected in entry.expected_values.items():
        attained = values_report.values[k] if values_report is not None else ()
        columns[f"h{k}"] = (
            _value_column(expected, attained, budget) if expected is not None
            else ColumnResult(FAIL, None, list(attained), "table lists no symplectic form")
        )

    if values_report is None:
        columns["structural"] = ColumnResult(INSUFFICIENT, detail="no cone points sampled")
    else:
        failing = sorted(name for name, (p, t) in values_report.checks.items() if p != t)
        columns["structural"] = ColumnResult(
            FAIL if failing else PASS, detail=", ".join(failing) or f"{values_report.symplectic} points"
        )

    columns["flexible"], report.certificate = _flexible_column(entry, spec, values_report, budget, seed)

    points = [existence.witness]
    if values_report is not None:
        points.extend(list(values_report.profiles.values())[:chain_samples])
    columns["chain_level"] = _chain_column(spec, points)

    if genericity and values_report is not None:
        generic = genericity_report(spec, budget, seed, values_report)
        report.genericity = generic.as_dict()
        if generic.insufficient:
            columns["genericity"] = ColumnResult(INSUFFICIENT, detail="no symplectic sample")
        else:
            columns["genericity"] = ColumnResult(PASS if generic.passed else FAIL)
    return _finish(report, started, timing, verbose)


def _finish(report: EntryReport, started: float, timing: bool, verbose: bool) -> EntryReport:
    if timing:
        report.elapsed = time.perf_counter() - started
    if verbose:
        marker = {PASS: "✅", FAIL: "❌", INSUFFICIENT: "💡"}[report.status]
        print(f"{marker} Row {report.entry.index}: {report.status}", file=sys.stderr)
    return report


def _verify_arguments(arguments) -> EntryReport:
    entry, budget, seed, chain_samples, verbose, timing, genericity = arguments
    return verify_entry(entry, budget, seed, chain_samples, 1, verbose, timing, genericity)


def _cell(values) -> str:
    if values is None:
        return "-"
    if isinstance(values, (list, tuple)):
        return ",".join(str(v) for v in values) if values else "?"
    return str(values)


@dataclass
class SweepReport:
    """Verification of the whole catalog, in table order."""

    budget: Budget
    seed: int
    entries: List[EntryReport]
    invariants: Dict[str, bool]

    @property
    def counts(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, INSUFFICIENT: 0}
        for report in self.entries:
            counts[report.status] += 1
        return counts

    @property
    def passed(self) -> bool:
        return self.counts[FAIL] == 0 and all(self.invariants.values())

    def summary(self) -> str:
        return f"{self.counts[PASS]}/{len(self.entries)} rows verified"

    def as_dict(self) -> dict:
        return {
            "budget": self.budget.as_text(),
            "seed": self.seed,
            "summary": self.summary(),
            "counts": self.counts,
            "invariants": self.invariants,
            "entries": [report.as_dict() for report in self.entries],
        }

    def render_table(self) -> str:
        """Computed values in the table's column order, with a status column."""
        header = ("#", "Structure", "b1", "b2", "6-s", "⊕", "h3", "h4", "h5", "dim S", "flex", "status")
        rows = []
        for report in self.entries:
            entry = report.entry
            flexible = report.computed("flexible")
            rows.append((
                str(entry.index),
                entry.structure,
                _cell(report.computed("b1")),
                _cell(report.computed("b2")),
                _cell(report.computed("six_minus_s")),
                entry.direct_sum or "",
                _cell(report.computed("h3")),
                _cell(report.computed("h4")),
                _cell(report.computed("h5")),
                _cell(report.computed("moduli")),
                "yes" if flexible else "no",
                report.status,
            ))
        widths = [max(len(row[i]) for row in rows + [header]) for i in range(len(header))]
        lines = [" | ".join(cell.ljust(width) for cell, width in zip(header, widths)).rstrip()]
        lines.append("-+-".join("-" * width for width in widths))
        for row in rows:
            lines.append(" | ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        return "\n".join(lines)


def sweep(budget: Budget, seed: int = 0, jobs: int = 1, verbose: bool = False, timing: bool = False,
          genericity: bool = False, entries: Optional[Sequence[CatalogEntry]] = None,
          chain_samples: int = 2) -> SweepReport:
    """
    Verify every catalog row. Rows run in parallel when ``jobs > 1`` and
    are reported in table order either way.
    """
    catalog = list(entries) if entries is not None else load_catalog()
    if verbose:
        print("=" * 40, file=sys.stderr)
        print(f"🚀 Verifying {len(catalog)} rows (budget {budget.as_text()}, seed {seed}, jobs {jobs})",
              file=sys.stderr)
        print("=" * 40, file=sys.stderr)
    arguments = [(entry, budget, seed, chain_samples, verbose, timing, genericity) for entry in catalog]
    if jobs > 1 and len(catalog) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            reports = list(executor.map(_verify_arguments, arguments))
    else:
        reports = [_verify_arguments(item) for item in arguments]
    invariants = catalog_invariants(catalog) if entries is None else {}
    result = SweepReport(budget, seed, reports, invariants)
    if verbose:
        marker = "✅" if result.passed else "❌"
        print(f"{marker} {result.summary()}", file=sys.stderr)
    return result
