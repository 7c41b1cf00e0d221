#!/usr/bin/env python3
"""
Command-Line Interface

Subcommands ``info``, ``h``, ``valuesets``, ``flexible``, ``catalog`` and
``starcheck``. Text goes to standard output, progress to standard error,
and ``--json`` replaces the text with a single report document.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .catalog import OPERATOR_STREAM, sweep
from .cohomology import cohomology, euler_check
from .config import Budget, Settings, load_settings
from .flexibility import FlexibilityCertificate, find_certificate, genericity_report, value_sets
from .harmonic import (
    chain_level_h,
    harmonic_engine,
    lemma_ker_terms,
    primitive_inclusion,
    structural_checks,
    theorem_iso_check,
    yamada_check,
)
from .liespec import LieAlgebraSpec, SalamonParseError, lower_central_series, parse_salamon
from .symplectic import (
    DegenerateFormError,
    SymplecticForm,
    operator_checks,
    product_star_check,
    symplectic_cone,
    symplectic_existence,
    two_dimensional_star_check,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2


@dataclass
class ReportDocument:
    """The machine-readable outcome of one command."""

    command: str
    inputs: Dict[str, object]
    results: Dict[str, object]
    passed: bool = True
    schema_version: int = SCHEMA_VERSION

    def as_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        return cls(
            command=data["command"],
            inputs=data["inputs"],
            results=data["results"],
            passed=data["passed"],
            schema_version=data["schema_version"],
        )

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_FAILURE


@dataclass
class TextReport:
    """Lines printed in text mode, between the header and the summary line."""

    title: str
    lines: List[str] = field(default_factory=list)

    def add(self, line: str = ""):
        self.lines.append(line)

    def render(self, passed: bool, summary: str) -> str:
        marker = "✅" if passed else "❌"
        parts = [f"🚀 {self.title}", "=" * 40, *self.lines, "=" * 40, f"{marker} {summary}"]
        return "\n".join(parts)


def parse_coordinates(text: str) -> Tuple[Fraction, ...]:
    """
    Parse comma-separated rationals such as ``1,0,-1/2,3``.

    Raises:
        ValueError: naming the offending coordinate
    """
    values = []
    for position, token in enumerate(text.split(","), start=1):
        token = token.strip()
        try:
            values.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"coordinate {position} is not a rational number: {token!r}")
    return tuple(values)


def _symplectic_point(spec: LieAlgebraSpec, omega_text: Optional[str]) -> Tuple[Tuple[Fraction, ...], str]:
    existence = symplectic_existence(spec)
    if not existence.admits:
        raise ValueError(f"{spec} admits no symplectic form")
    if omega_text is None:
        return existence.witness, "witness"
    coordinates = parse_coordinates(omega_text)
    cone = symplectic_cone(spec)
    if len(coordinates) != cone.dimension:
        raise ValueError(f"--omega needs {cone.dimension} coordinates over the Z^2 basis, got {len(coordinates)}")
    if cone.pfaffian(coordinates) == 0:
        raise DegenerateFormError(
            f"the form with coordinates {','.join(str(c) for c in coordinates)} is degenerate", coordinates
        )
    return coordinates, "given"


def _strings(values) -> List[str]:
    return [str(v) for v in values]


def cmd_info(spec: LieAlgebraSpec, settings: Settings, args) -> Tuple[ReportDocument, TextReport]:
    space = cohomology(spec)
    series = lower_central_series(spec)
    existence = symplectic_existence(spec)
    cone = symplectic_cone(spec) if spec.n % 2 == 0 else None
    results = {
        "betti_numbers": list(space.betti_numbers),
        "euler_check": euler_check(spec),
        "lower_central_series": list(series.dimensions),
        "step_length": series.step_length,
        "symplectic": existence.admits,
        "symplectic_reason": existence.reason,
        "witness": _strings(existence.witness) if existence.witness else None,
        "moduli_dimension": cone.dimension if existence.admits else None,
        "z2_basis": [form.render() for form in cone.basis] if cone else [],
        "class_dimension": cone.class_dimension if cone else None,
        "pfaffian": cone.render_pfaffian() if cone else None,
    }
    document = ReportDocument("info", {"structure": str(spec)}, results, passed=results["euler_check"])

    text = TextReport(f"info {spec}")
    text.add(f"Betti numbers: {', '.join(str(b) for b in space.betti_numbers)}")
    text.add(f"Step length: {series.step_length} (lower central series {list(series.dimensions)})")
    text.add(f"Symplectic: {'yes' if existence.admits else 'no'} ({existence.reason})")
    if existence.admits:
        text.add(f"Witness: {','.join(_strings(existence.witness))}")
        text.add(f"Moduli dimension: {cone.dimension}")
    if cone is None:
        return document, text
    text.add(f"Z^2 basis (the first {cone.class_dimension} span H^2):")
    for number, form in enumerate(cone.basis, start=1):
        text.add(f"  c{number} = {form.render()}")
    text.add(f"Pfaffian: {cone.render_pfaffian()}")
    return document, text


def cmd_h(spec: LieAlgebraSpec, settings: Settings, args) -> Tuple[ReportDocument, TextReport]:
    coordinates, origin = _symplectic_point(spec, args.omega)
    cone = symplectic_cone(spec)
    space = cohomology(spec)
    form = cone.symplectic_form(coordinates)
    engine = harmonic_engine(spec)
    class_coordinates = coordinates[: cone.class_dimension]
    profile = engine.profile(class_coordinates)
    m = spec.n // 2
    checks = structural_checks(space, profile.h, engine.kernel_dimension(class_coordinates, m))
    yamada = yamada_check(spec, form)
    results = {
        "omega": form.omega.render(),
        "omega_origin": origin,
        "pfaffian": str(form.pfaffian),
        "profile": profile.as_dict(include_subspaces=True),
        "betti_numbers": list(space.betti_numbers),
        "checks": checks,
        "yamada": yamada.as_dict(),
    }
    if m >= 2:
        results["lemma_ker"] = lemma_ker_terms(space, form)
    passed = all(checks.values()) and yamada.passed
    inputs = {"structure": str(spec), "omega": _strings(coordinates)}
    document = ReportDocument("h", inputs, results, passed=passed)

    text = TextReport(f"h {spec}")
    text.add(f"omega = {form.omega.render()} ({origin})")
    text.add(f"Betti numbers: {tuple(space.betti_numbers)}")
    text.add(f"h = {tuple(profile.h)}")
    for name, ok in checks.items():
        text.add(f"  {name}: {'ok' if ok else 'FAILED'}")
    if yamada.applies:
        text.add(f"  yamada: {'ok' if yamada.passed else 'FAILED'}")
    return document, text


def cmd_valuesets(spec: LieAlgebraSpec, settings: Settings, args) -> Tuple[ReportDocument, TextReport]:
    budget = _budget(args, settings)
    report = value_sets(spec, budget, args.seed, jobs=args.jobs, verbose=args.verbose)
    results = report.as_dict()
    passed = report.checks_passed()
    if args.genericity:
        generic = genericity_report(spec, budget, args.seed, report)
        results["genericity"] = generic.as_dict()
        passed = passed and (generic.passed or generic.insufficient)
    inputs = {"structure": str(spec), "budget": budget.as_text(), "seed": args.seed}
    document = ReportDocument("valuesets", inputs, results, passed=passed)

    text = TextReport(f"valuesets {spec}")
    text.add(f"Budget {budget.as_text()}, seed {args.seed}: {report.symplectic}/{report.evaluated} symplectic")
    for k, values in report.values.items():
        text.add(f"  h{k} in {{{', '.join(str(v) for v in values)}}}")
    for name, (p, t) in sorted(report.checks.items()):
        text.add(f"  {name}: {p}/{t}")
    if args.genericity:
        text.add(f"  genericity: {generic.status}")
    return document, text


def cmd_flexible(spec: LieAlgebraSpec, settings: Settings, args) -> Tuple[ReportDocument, TextReport]:
    budget = _budget(args, settings)
    if args.k is not None and not 0 <= args.k <= spec.n:
        raise ValueError(f"--k must be between 0 and {spec.n}, got {args.k}")
    report = value_sets(spec, budget, args.seed, jobs=args.jobs, verbose=args.verbose)
    outcome = find_certificate(spec, report, args.k)
    inputs = {"structure": str(spec), "budget": budget.as_text(), "seed": args.seed, "k": args.k}
    text = TextReport(f"flexible {spec}")
    if isinstance(outcome, FlexibilityCertificate):
        revalidated = outcome.revalidate(spec, args.seed)
        results = {"found": True, "revalidated": revalidated, "certificate": outcome.as_dict(spec)}
        text.add(f"h{outcome.k}: {outcome.h_at_0[outcome.k]} -> {outcome.h_at_1[outcome.k]} ({outcome.criterion})")
        text.add(f"omega0 = {symplectic_cone(spec).form(outcome.omega0).render()}")
        text.add(f"omega1 = {symplectic_cone(spec).form(outcome.omega1).render()}")
        text.add(f"Pfaffian on the segment: {outcome.pfaffian.render()}")
        text.add(f"Sturm roots in [0, 1]: {outcome.proof.root_count}")
        return ReportDocument("flexible", inputs, results, passed=revalidated), text
    results = {
        "found": False,
        "reason": outcome.reason if outcome is not None else "no h-number varies over the samples",
        "values": {f"h{k}": list(v) for k, v in report.values.items()},
    }
    text.add(f"not found: {results['reason']}")
    return ReportDocument("flexible", inputs, results), text


def cmd_catalog(settings: Settings, args) -> Tuple[ReportDocument, TextReport]:
    budget = _budget(args, settings)
    report = sweep(budget, args.seed, jobs=args.jobs, verbose=args.verbose, timing=args.timing,
                   genericity=args.genericity)
    inputs = {"budget": budget.as_text(), "seed": args.seed}
    document = ReportDocument("catalog", inputs, report.as_dict(), passed=report.passed)
    text = TextReport("catalog")
    text.add(report.render_table())
    failing = [name for name, ok in report.invariants.items() if not ok]
    if failing:
        text.add(f"Table invariants failing: {', '.join(failing)}")
    for entry in report.entries:
        for name, column in entry.columns.items():
            if column.status == "fail":
                text.add(f"  row {entry.entry.index} {name}: expected {column.expected}, "
                         f"computed {column.computed} {column.detail}".rstrip())
    return document, text


def cmd_starcheck(spec: LieAlgebraSpec, settings: Settings, args) -> Tuple[ReportDocument, TextReport]:
    coordinates, origin = _symplectic_point(spec, args.omega)
    cone = symplectic_cone(spec)
    form: SymplecticForm = cone.symplectic_form(coordinates)
    rng = np.random.default_rng([args.seed, OPERATOR_STREAM])
    checks = operator_checks(form, rng)
    checks["two_dimensional_star"] = two_dimensional_star_check()
    checks["product_star"] = product_star_check(rng)
    checks["harmonic_isomorphism"] = theorem_iso_check(spec, form)
    checks["primitive_inclusion"] = primitive_inclusion(cohomology(spec), form)
    expected = harmonic_engine(spec).h_numbers(coordinates[: cone.class_dimension])
    chain = tuple(chain_level_h(spec, form, k) for k in range(spec.n + 1))
    checks["chain_level"] = chain == expected
    results = {"omega": form.omega.render(), "omega_origin": origin, "checks": checks,
               "h": list(expected), "chain_level_h": list(chain)}
    inputs = {"structure": str(spec), "omega": _strings(coordinates), "seed": args.seed}
    document = ReportDocument("starcheck", inputs, results, passed=all(checks.values()))

    text = TextReport(f"starcheck {spec}")
    text.add(f"omega = {form.omega.render()} ({origin})")
    for name, ok in checks.items():
        text.add(f"  {name}: {'ok' if ok else 'FAILED'}")
    return document, text


def _budget(args, settings: Settings) -> Budget:
    return Budget.parse(args.budget) if args.budget else settings.budget


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the JSON report instead of text")
    common.add_argument("--seed", type=int, default=settings.seed,
                        help=f"Seed for all randomized steps (default: {settings.seed})")
    common.add_argument("--jobs", type=int, default=settings.jobs,
                        help="Worker processes (default: machine parallelism)")
    common.add_argument("--timing", action="store_true", help="Add elapsed seconds to the report")
    common.add_argument("--verbose", action="store_true", default=settings.verbose,
                        help="Progress lines on standard error")

    budgeted = argparse.ArgumentParser(add_help=False)
    budgeted.add_argument("--budget", default=None,
                          help=f"grid-bound,support,samples, 'default' or 'zero' (default: {settings.budget.as_text()})")
    budgeted.add_argument("--genericity", action="store_true", help="Also run the genericity report")

    parser = argparse.ArgumentParser(
        prog="nilharmonic",
        description="Symplectically harmonic cohomology of nilmanifolds in Salamon notation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    info = commands.add_parser("info", parents=[common], help="Betti numbers, step length, symplectic existence")
    info.add_argument("structure", help='Salamon string, e.g. "(0,0,0,12,13,23)"')

    h = commands.add_parser("h", parents=[common], help="Harmonic numbers for one symplectic form")
    h.add_argument("structure")
    h.add_argument("--omega", default=None, help="Coordinates over the Z^2 basis printed by info")

    valuesets = commands.add_parser("valuesets", parents=[common, budgeted],
                                    help="Attained harmonic numbers over the symplectic cone")
    valuesets.add_argument("structure")

    flexible = commands.add_parser("flexible", parents=[common, budgeted], help="Search for a flexibility certificate")
    flexible.add_argument("structure")
    flexible.add_argument("--k", type=int, default=None, help="Degree to certify (default: any varying degree)")

    commands.add_parser("catalog", parents=[common, budgeted], help="Verify the six-dimensional catalog")

    starcheck = commands.add_parser("starcheck", parents=[common], help="Exact operator identities at one form")
    starcheck.add_argument("structure")
    starcheck.add_argument("--omega", default=None, help="Coordinates over the Z^2 basis printed by info")
    return parser


HANDLERS = {
    "info": cmd_info,
    "h": cmd_h,
    "valuesets": cmd_valuesets,
    "flexible": cmd_flexible,
    "starcheck": cmd_starcheck,
}


def _error(message: str, hint: str) -> int:
    print(f"❌ Error: {message}", file=sys.stderr)
    print(f"💡 {hint}", file=sys.stderr)
    return EXIT_INPUT


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line and return its exit code."""
    try:
        settings = load_settings()
    except ValueError as e:
        return _error(str(e), "Check the NILHARMONIC_* variables in the environment or .env")

    args = build_parser(settings).parse_args(argv)
    if args.seed < 0:
        return _error(f"--seed must be non-negative, got {args.seed}", "Use a seed such as 0")
    if args.jobs < 1:
        return _error(f"--jobs must be at least 1, got {args.jobs}", "Use --jobs 1 for a sequential run")

    started = time.perf_counter()
    try:
        if args.command == "catalog":
            document, text = cmd_catalog(settings, args)
        else:
            spec = parse_salamon(args.structure)
            document, text = HANDLERS[args.command](spec, settings, args)
    except SalamonParseError as e:
        hint = f"Offending token: {e.token!r}" if e.token else 'Structures look like "(0,0,12,13,23,14-25)"'
        return _error(str(e), hint)
    except DegenerateFormError as e:
        return _error(str(e), "Run 'nilharmonic info' to see the Z^2 basis and a symplectic witness")
    except ValueError as e:
        return _error(str(e), "Run 'nilharmonic <command> --help' for the expected arguments")

    if args.timing:
        document.results["elapsed_seconds"] = round(time.perf_counter() - started, 3)
    if args.json:
        print(document.to_json())
    else:
        summary = document.results.get("summary") if args.command == "catalog" else None
        summary = summary or ("all checks passed" if document.passed else "verification failed")
        print(text.render(document.passed, summary))
    return document.exit_code


if __name__ == "__main__":
    sys.exit(main())
