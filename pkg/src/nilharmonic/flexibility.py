"""
Exploring the Symplectic Cone

Value sets of the harmonic numbers over sampled symplectic forms,
flexibility certificates (two symplectic forms joined by a segment on
which the Pfaffian provably never vanishes, with different h_k at the
ends), rank perturbation and genericity reports.
"""

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, QQ, Rational, sturm, symbols

from . import linalg
from .cohomology import cohomology
from .config import Budget
from .exterior import Form, basis_indices
from .harmonic import class_invariance, harmonic_engine, structural_checks, yamada_from_numbers
from .liespec import LieAlgebraSpec
from .symplectic import SymplecticForm, symplectic_cone, symplectic_existence

RANDOM_NUMERATOR = 1000
RANDOM_DENOMINATOR = 16
RANDOM_STREAM = 1
GENERICITY_STREAM = 2
PENCIL_STREAM = 3
CLASS_INVARIANCE_BETAS = 5
CLASS_INVARIANCE_STRIDE = 25
CHAIN_LEVEL_STRIDE = 500
RANDOM_CHUNK = 500

SHRINK_DEPTH = 12
PERTURBATION_DEPTH = 64
CERTIFICATE_PAIRS = 24
GENERIC_FRACTION = Fraction(99, 100)


class PerturbationError(RuntimeError):
    """Raised when no perturbation parameter is found within the search depth."""


def _t():
    return symbols("t")


class UnivariatePolynomial:
    """Polynomial in t with Fraction coefficients, lowest degree first."""

    def __init__(self, coefficients: Sequence = ()):
        values = [Fraction(c) for c in coefficients]
        while values and values[-1] == 0:
            values.pop()
        self.coefficients: Tuple[Fraction, ...] = tuple(values)

    @classmethod
    def from_poly(cls, poly: Poly) -> "UnivariatePolynomial":
        return cls(reversed([linalg.to_fraction(QQ.from_sympy(c)) for c in poly.all_coeffs()]))

    def to_poly(self) -> Poly:
        if not self.coefficients:
            return Poly(0, _t(), domain=QQ)
        return Poly(
            [Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)], _t(), domain=QQ
        )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def evaluate(self, t) -> Fraction:
        t = Fraction(t)
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * t + c
        return total

    def __eq__(self, other):
        if not isinstance(other, UnivariatePolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def render(self) -> str:
        return str(self.to_poly().as_expr())

    def __repr__(self):
        return f"UnivariatePolynomial({self.render()!r})"


def _variations(values: Iterable[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class SturmProof:
    """
    Sturm chain of a polynomial with its sign variations at both ends of
    an interval. The number of distinct roots in ``(start, end]`` is the
    drop in variations; the endpoints are evaluated directly.
    """

    start: Fraction
    end: Fraction
    chain: Tuple[UnivariatePolynomial, ...]
    value_at_start: Fraction
    value_at_end: Fraction
    variations_at_start: int
    variations_at_end: int

    @property
    def root_count(self) -> int:
        return self.variations_at_start - self.variations_at_end

    @property
    def nonvanishing(self) -> bool:
        return self.value_at_start != 0 and self.value_at_end != 0 and self.root_count == 0

    def verify(self) -> bool:
        """Recompute the chain and the variation counts from the first polynomial."""
        again = sturm_proof(self.chain[0], self.start, self.end)
        return again == self

    def as_dict(self) -> dict:
        return {
            "interval": [str(self.start), str(self.end)],
            "chain": [[str(c) for c in p.coefficients] for p in self.chain],
            "value_at_start": str(self.value_at_start),
            "value_at_end": str(self.value_at_end),
            "variations_at_start": self.variations_at_start,
            "variations_at_end": self.variations_at_end,
            "root_count": self.root_count,
        }


def sturm_chain(p: UnivariatePolynomial) -> List[UnivariatePolynomial]:
    return [UnivariatePolynomial.from_poly(q) for q in sturm(p.to_poly())]


def sturm_proof(p: UnivariatePolynomial, start=0, end=1) -> SturmProof:
    """
    Raises:
        ValueError: for the zero polynomial or an empty interval
    """
    if p.is_zero():
        raise ValueError("Sturm sequences need a non-zero polynomial")
    start, end = Fraction(start), Fraction(end)
    if start > end:
        raise ValueError(f"empty interval [{start}, {end}]")
    chain = tuple(sturm_chain(p))
    return SturmProof(
        start,
        end,
        chain,
        p.evaluate(start),
        p.evaluate(end),
        _variations(q.evaluate(start) for q in chain),
        _variations(q.evaluate(end) for q in chain),
    )


def sturm_nonvanishing(p: UnivariatePolynomial, start=0, end=1) -> bool:
    """True iff ``p`` has no real root in ``[start, end]``."""
    return sturm_proof(p, start, end).nonvanishing


@dataclass(frozen=True)
class GridStrategy:
    """Integer points with entries in ``[-bound, bound]`` and at most ``support`` non-zeros."""

    bound: int
    support: int


@dataclass(frozen=True)
class RandomStrategy:
    """Seeded rational points with small denominators."""

    seed: int
    count: int


def grid_points(class_dimension: int, total: int, bound: int, support: int,
                combos: Optional[Iterable[Tuple[int, ...]]] = None) -> Iterator[Tuple[int, ...]]:
    """
    Grid over the class coordinates, padded with zeros to length ``total``.

    Only one point per line through the origin is produced: the first
    non-zero entry is positive and the entries are coprime.
    """
    values = [v for magnitude in range(1, bound + 1) for v in (magnitude, -magnitude)]
    if combos is None:
        combos = (
            combo
            for size in range(1, min(support, class_dimension) + 1)
            for combo in combinations(range(class_dimension), size)
        )
    for combo in combos:
        for entries in product(values, repeat=len(combo)):
            if entries[0] < 0 or reduce(gcd, entries) != 1:
                continue
            point = [0] * total
            for position, value in zip(combo, entries):
                point[position] = value
            yield tuple(point)


def random_point(total: int, seed: int, stream: int, index: int) -> Tuple[Fraction, ...]:
    """The ``index``-th seeded random point; independent of how samples are chunked."""
    rng = np.random.default_rng([seed, stream, index])
    numerators = rng.integers(-RANDOM_NUMERATOR, RANDOM_NUMERATOR + 1, size=total)
    denominators = rng.integers(1, RANDOM_DENOMINATOR + 1, size=total)
    return tuple(Fraction(int(a), int(b)) for a, b in zip(numerators, denominators))


def sample_cone(spec: LieAlgebraSpec, strategy: Union[GridStrategy, RandomStrategy]) -> Iterator[SymplecticForm]:
    """
    Symplectic forms from a grid or seeded random strategy.

    Raises:
        ValueError: if ``spec`` admits no symplectic form
    """
    if not symplectic_existence(spec).admits:
        raise ValueError(f"{spec} admits no symplectic form")
    cone = symplectic_cone(spec)
    if isinstance(strategy, GridStrategy):
        points = grid_points(cone.class_dimension, cone.dimension, strategy.bound, strategy.support)
    else:
        points = (random_point(cone.dimension, strategy.seed, RANDOM_STREAM, i) for i in range(strategy.count))
    for point in points:
        if cone.pfaffian(point) != 0:
            yield cone.symplectic_form(point)


def _random_one_form(n: int, rng: np.random.Generator) -> Form:
    values = rng.integers(-5, 6, size=n)
    return Form(n, 1, {index: int(v) for index, v in zip(basis_indices(n, 1), values)})


@dataclass
class TaskResult:
    """Outcome of one block of cone points, merged in block order."""

    first_seen: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)
    evaluated: int = 0
    symplectic: int = 0
    checks: Dict[str, List[int]] = field(default_factory=dict)
    corrections: int = 0

    def record(self, name: str, passed: bool):
        counts = self.checks.setdefault(name, [0, 0])
        counts[0] += int(bool(passed))
        counts[1] += 1


def primitive_integer(point: Sequence) -> Tuple[int, ...]:
    """
    The point with coprime integer entries on the line through ``point``,
    first non-zero entry keeping its sign.

    The Pfaffian is homogeneous and h only depends on the class up to
    scale, so this is a witness for the same h-vector.
    """
    fractions = [Fraction(c) for c in point]
    scale = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in fractions), 1)
    integers = [int(c * scale) for c in fractions]
    common = reduce(gcd, integers, 0) or 1
    return tuple(c // common for c in integers)


def _class_key(class_coordinates: Sequence) -> Tuple[int, ...]:
    key = primitive_integer(class_coordinates)
    if next((c for c in key if c), 0) < 0:
        key = tuple(-c for c in key)
    return key


class ExactNumbers:
    """
    Exact h-vectors and ``dim ker(L : H^m -> H^{m+2})`` cached per class
    line. The modular recursion is run alongside and its disagreements
    are counted in ``corrections``.
    """

    def __init__(self, spec: LieAlgebraSpec):
        self.engine = harmonic_engine(spec)
        self.m = spec.n // 2
        self.corrections = 0
        self._cache: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], int]] = {}

    def __call__(self, class_coordinates: Sequence) -> Tuple[Tuple[int, ...], int]:
        key = _class_key(class_coordinates)
        if key not in self._cache:
            exact = (self.engine.h_numbers(key), self.engine.kernel_dimension(key, self.m))
            if self.engine.modular_numbers(key) != exact:
                self.corrections += 1
            self._cache[key] = exact
        return self._cache[key]


def _evaluate_points(spec: LieAlgebraSpec, points: Iterable[Tuple[Optional[int], Tuple]], seed: int) -> TaskResult:
    """
    Evaluate labelled points. The Pfaffian is screened modulo a prime and
    every recorded number is exact. Every ``CLASS_INVARIANCE_STRIDE``-th
    random point (index label) also gets the class invariance check, at
    chain level every ``CHAIN_LEVEL_STRIDE``-th.
    """
    cone = symplectic_cone(spec)
    space = cohomology(spec)
    numbers = ExactNumbers(spec)
    result = TaskResult()
    seen = set()
    for label, point in points:
        result.evaluated += 1
        if not cone.pfaffian_is_nonzero(point):
            continue
        result.symplectic += 1
        h, kernel_middle = numbers(point[: cone.class_dimension])
        if h not in seen:
            seen.add(h)
            result.first_seen.append((h, primitive_integer(point)))
        for name, passed in structural_checks(space, h, kernel_middle).items():
            result.record(name, passed)
        yamada = yamada_from_numbers(spec, h)
        if yamada.inequality is not None:
            result.record("yamada", yamada.passed)
        if label is not None and label % CLASS_INVARIANCE_STRIDE == 0:
            rng = np.random.default_rng([seed, RANDOM_STREAM, label, CLASS_INVARIANCE_BETAS])
            betas = [_random_one_form(spec.n, rng) for _ in range(CLASS_INVARIANCE_BETAS)]
            chain_level = label % CHAIN_LEVEL_STRIDE == 0
            result.record("class_invariance", class_invariance(spec, point, betas, chain_level=chain_level))
    result.corrections = numbers.corrections
    return result


def _run_task(arguments) -> TaskResult:
    spec, kind, payload, bound, seed = arguments
    cone = symplectic_cone(spec)
    if kind == "grid":
        points = grid_points(cone.class_dimension, cone.dimension, bound, len(payload), combos=[payload])
        return _evaluate_points(spec, ((None, point) for point in points), seed)
    start, stop = payload
    points = ((i, random_point(cone.dimension, seed, RANDOM_STREAM, i)) for i in range(start, stop))
    return _evaluate_points(spec, points, seed)


def _tasks(spec: LieAlgebraSpec, budget: Budget, seed: int) -> Iterator[tuple]:
    cone = symplectic_cone(spec)
    if budget.grid_bound > 0:
        for size in range(1, min(budget.support, cone.class_dimension) + 1):
            for combo in combinations(range(cone.class_dimension), size):
                yield (spec, "grid", combo, budget.grid_bound, seed)
    for start in range(0, budget.samples, RANDOM_CHUNK):
        yield (spec, "random", (start, min(start + RANDOM_CHUNK, budget.samples)), 0, seed)


@dataclass
class ValueSetReport:
    """
    Harmonic numbers attained over the sampled symplectic cone.

    ``profiles`` maps each attained h-vector to the first point (Z^2
    coordinates, scaled to coprime integers) attaining it. Grid points come
    first, so small witnesses are preferred. ``values`` and ``witnesses`` restrict this to the degrees
    ``m .. n-1``.
    """

    structure: str
    budget: Budget
    seed: int
    degrees: Tuple[int, ...]
    profiles: Dict[Tuple[int, ...], Tuple[int, ...]]
    evaluated: int
    symplectic: int
    checks: Dict[str, Tuple[int, int]]
    corrections: int = 0

    @property
    def values(self) -> Dict[int, Tuple[int, ...]]:
        return {k: tuple(sorted({h[k] for h in self.profiles})) for k in self.degrees}

    @property
    def witnesses(self) -> Dict[int, Dict[int, Tuple[int, ...]]]:
        result: Dict[int, Dict[int, Tuple[int, ...]]] = {k: {} for k in self.degrees}
        for h, point in self.profiles.items():
            for k in self.degrees:
                result[k].setdefault(h[k], point)
        return result

    def varying_degrees(self) -> List[int]:
        return [k for k in self.degrees if len(self.values[k]) > 1]

    def checks_passed(self) -> bool:
        return all(passed == total for passed, total in self.checks.values())

    def as_dict(self) -> dict:
        witnesses = self.witnesses
        return {
            "structure": self.structure,
            "budget": self.budget.as_text(),
            "seed": self.seed,
            "evaluated": self.evaluated,
            "symplectic": self.symplectic,
            "values": {f"h{k}": list(v) for k, v in self.values.items()},
            "witnesses": {
                f"h{k}": {str(value): [str(c) for c in point] for value, point in sorted(witnesses[k].items())}
                for k in self.degrees
            },
            "profiles": [
                {"h": list(h), "witness": [str(c) for c in point]} for h, point in self.profiles.items()
            ],
            "checks": {name: {"passed": p, "total": t} for name, (p, t) in sorted(self.checks.items())},
            "corrections": self.corrections,
        }


def value_sets(spec: LieAlgebraSpec, budget: Budget, seed: int = 0, jobs: int = 1,
               verbose: bool = False) -> ValueSetReport:
    """
    Attained h-vectors over the grid and the seeded random samples.

    Blocks of points are evaluated in parallel when ``jobs > 1`` and merged
    in block order so the report does not depend on ``jobs``. Only the
    Pfaffian screen is modular: h-vectors, checks and witnesses are exact.
    ``corrections`` counts classes on which the modular recursion would
    have given a different answer.

    Raises:
        ValueError: if ``spec`` admits no symplectic form
    """
    if not symplectic_existence(spec).admits:
        raise ValueError(f"{spec} admits no symplectic form")
    if verbose:
        print(f"🔎 {spec}: sampling the cone with budget {budget.as_text()} (seed {seed})", file=sys.stderr)
    tasks = _tasks(spec, budget, seed)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_run_task, tasks, chunksize=8))
    else:
        results = [_run_task(task) for task in tasks]

    profiles: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    checks: Dict[str, List[int]] = {}
    evaluated = symplectic = corrections = 0
    for result in results:
        evaluated += result.evaluated
        symplectic += result.symplectic
        corrections += result.corrections
        for name, (passed, total) in result.checks.items():
            counts = checks.setdefault(name, [0, 0])
            counts[0] += passed
            counts[1] += total
        for h, point in result.first_seen:
            profiles.setdefault(h, point)

    if verbose:
        print(f"✅ {spec}: {symplectic}/{evaluated} symplectic points, {len(profiles)} distinct h-vectors",
              file=sys.stderr)
        if corrections:
            print(f"💡 modular recursion disagreed with exact ranks on {corrections} class(es)",
                  file=sys.stderr)

    m = spec.n // 2
    return ValueSetReport(
        structure=str(spec),
        budget=budget,
        seed=seed,
        degrees=tuple(range(m, spec.n)),
        profiles=profiles,
        evaluated=evaluated,
        symplectic=symplectic,
        checks={name: (p, t) for name, (p, t) in checks.items()},
        corrections=corrections,
    )


def rank_perturbation(D, A, B, k: int, depth: int = PERTURBATION_DEPTH) -> Fraction:
    """
    A rational ``lam`` with ``rank D (A + lam B)^k > rank D A^k``.

    Tries ``lam = 1/2, 1/4, ...``; the set of good values is open and
    dense, so a short search suffices unless the precondition fails.

    Raises:
        ValueError: unless ``rank D A^k < rank D B^k``
        PerturbationError: if no value is found within ``depth`` halvings
    """
    base = linalg.rank(linalg.matmul(D, linalg.power(A, k)))
    if not base < linalg.rank(linalg.matmul(D, linalg.power(B, k))):
        raise ValueError("rank_perturbation needs rank(D A^k) < rank(D B^k)")
    rows_a, rows_b = linalg.raw_rows(A), linalg.raw_rows(B)
    for j in range(1, depth + 1):
        lam = Fraction(1, 2 ** j)
        mixed = linalg.linear_combination([1, lam], [rows_a, rows_b], A.shape)
        if linalg.rank(linalg.matmul(D, linalg.power(mixed, k))) > base:
            return lam
    raise PerturbationError(f"no perturbation found within {depth} halvings")


@dataclass(frozen=True)
class FlexibilityCertificate:
    """
    Segment ``omega_t = omega0 + t (omega1 - omega0)``, ``t`` in [0, 1], of
    symplectic forms with ``h_k(omega0) != h_k(omega1)``.

    Coordinates are over the Z^2 basis of ``symplectic_cone(spec)``.
    """

    structure: str
    k: int
    omega0: Tuple[Fraction, ...]
    omega1: Tuple[Fraction, ...]
    pfaffian: UnivariatePolynomial
    proof: SturmProof
    h_at_0: Tuple[int, ...]
    h_at_1: Tuple[int, ...]
    criterion: str
    kernel_dimensions: Optional[Tuple[int, int]] = None

    def as_dict(self, spec: Optional[LieAlgebraSpec] = None) -> dict:
        data = {
            "structure": self.structure,
            "k": self.k,
            "omega0": [str(c) for c in self.omega0],
            "omega1": [str(c) for c in self.omega1],
            "pfaffian": [str(c) for c in self.pfaffian.coefficients],
            "proof": self.proof.as_dict(),
            "h_at_0": list(self.h_at_0),
            "h_at_1": list(self.h_at_1),
            "criterion": self.criterion,
        }
        if self.kernel_dimensions is not None:
            data["kernel_dimensions"] = list(self.kernel_dimensions)
        if spec is not None:
            cone = symplectic_cone(spec)
            data["omega0_form"] = cone.form(self.omega0).render()
            data["omega1_form"] = cone.form(self.omega1).render()
        return data

    def revalidate(self, spec: LieAlgebraSpec, seed: int = 0, samples: int = 10) -> bool:
        """
        Independent re-check: the Sturm data, the Pfaffian along the path at
        random rational times, the endpoint h-vectors and ``h_0..h_2``
        agreeing at both ends.
        """
        cone = symplectic_cone(spec)
        engine = harmonic_engine(spec)
        if UnivariatePolynomial.from_poly(cone.pfaffian_along(self.omega0, self.omega1)) != self.pfaffian:
            return False
        if not (self.proof.nonvanishing and self.proof.verify()):
            return False
        rng = np.random.default_rng([seed, PENCIL_STREAM])
        for _ in range(samples):
            denominator = int(rng.integers(1, 1000))
            t = Fraction(int(rng.integers(0, denominator + 1)), denominator)
            point = [a + t * (b - a) for a, b in zip(self.omega0, self.omega1)]
            if cone.pfaffian(point) == 0:
                return False
        h0 = engine.h_numbers(self.omega0[: cone.class_dimension])
        h1 = engine.h_numbers(self.omega1[: cone.class_dimension])
        return (h0, h1) == (self.h_at_0, self.h_at_1) and h0[: 3] == h1[: 3] and h0[self.k] != h1[self.k]


@dataclass(frozen=True)
class CertificationFailure:
    """Two forms for which no certified segment was found, and why."""

    structure: str
    k: int
    omega0: Tuple[Fraction, ...]
    omega1: Tuple[Fraction, ...]
    reason: str

    def as_dict(self) -> dict:
        return {
            "structure": self.structure,
            "k": self.k,
            "omega0": [str(c) for c in self.omega0],
            "omega1": [str(c) for c in self.omega1],
            "reason": self.reason,
        }


def _coordinates(spec: LieAlgebraSpec, omega: Union[SymplecticForm, Sequence]) -> Tuple[Fraction, ...]:
    if isinstance(omega, SymplecticForm):
        return tuple(symplectic_cone(spec).coordinates(omega.omega))
    return tuple(Fraction(c) for c in omega)


def _criterion(spec: LieAlgebraSpec, k: int, h0: Tuple[int, ...], h1: Tuple[int, ...]) -> str:
    m = spec.n // 2
    if k > m:
        return "lefschetz_rank"
    if k == m and m + 2 <= spec.n and h0[m + 2] == h1[m + 2]:
        return "kernel_drop"
    return "direct"


def certify_flexible(spec: LieAlgebraSpec, k: int, omega0, omega1, depth: int = SHRINK_DEPTH):
    """
    Look for a certified segment between symplectic forms with different h_k.

    Both orientations are tried. From an anchor, the far end is pulled in
    as ``anchor + s (other - anchor)`` and pushed as ``anchor + s other``
    for ``s = 1, 1/2, 1/4, ...``; the first candidate whose far end keeps
    a different h_k and whose Pfaffian has no root on [0, 1] wins.

    Args:
        spec: Lie algebra
        k: Degree of the harmonic number
        omega0, omega1: SymplecticForm objects or Z^2 coordinates
        depth: Number of halvings per family

    Returns:
        FlexibilityCertificate, or CertificationFailure when the
        endpoints share h_k or the search is exhausted
    """
    cone = symplectic_cone(spec)
    engine = harmonic_engine(spec)
    c0, c1 = _coordinates(spec, omega0), _coordinates(spec, omega1)
    if not 0 <= k <= spec.n:
        raise ValueError(f"degree {k} out of range 0..{spec.n}")
    for point in (c0, c1):
        if cone.pfaffian(point) == 0:
            return CertificationFailure(str(spec), k, c0, c1, "an endpoint is degenerate")
    h0 = engine.h_numbers(c0[: cone.class_dimension])
    h1 = engine.h_numbers(c1[: cone.class_dimension])
    if h0[k] == h1[k]:
        return CertificationFailure(str(spec), k, c0, c1, f"h{k} is {h0[k]} at both ends")

    for anchor, other in ((c0, c1), (c1, c0)):
        h_anchor = h0 if anchor is c0 else h1
        families = (
            lambda s: tuple(a + s * (b - a) for a, b in zip(anchor, other)),
            lambda s: tuple(a + s * b for a, b in zip(anchor, other)),
        )
        for family in families:
            for j in range(depth + 1):
                end = family(Fraction(1, 2 ** j))
                if cone.pfaffian(end) == 0:
                    continue
                h_end = engine.h_numbers(end[: cone.class_dimension])
                if h_end[k] == h_anchor[k]:
                    continue
                polynomial = UnivariatePolynomial.from_poly(cone.pfaffian_along(anchor, end))
                proof = sturm_proof(polynomial, 0, 1)
                if not proof.nonvanishing:
                    continue
                kernels = None
                criterion = _criterion(spec, k, h_anchor, h_end)
                if criterion == "kernel_drop":
                    m = spec.n // 2
                    kernels = (
                        engine.kernel_dimension(anchor[: cone.class_dimension], m),
                        engine.kernel_dimension(end[: cone.class_dimension], m),
                    )
                return FlexibilityCertificate(
                    str(spec), k, anchor, end, polynomial, proof, h_anchor, h_end, criterion, kernels
                )
    return CertificationFailure(str(spec), k, c0, c1, f"no certified segment within {depth} halvings")


def find_certificate(spec: LieAlgebraSpec, report: ValueSetReport, k: Optional[int] = None):
    """
    Try pairs of witnesses from a value-set report, highest degree first.

    Returns:
        The first certificate found, the last failure, or None when no
        degree varies
    """
    degrees = [k] if k is not None else sorted(report.varying_degrees(), reverse=True)
    failure = None
    for degree in degrees:
        profiles = list(report.profiles.items())
        attempts = 0
        for (ha, pa), (hb, pb) in combinations(profiles, 2):
            if ha[degree] == hb[degree]:
                continue
            outcome = certify_flexible(spec, degree, pa, pb)
            if isinstance(outcome, FlexibilityCertificate):
                return outcome
            failure = outcome
            attempts += 1
            if attempts >= CERTIFICATE_PAIRS:
                break
    return failure


def flex2_criterion(spec: LieAlgebraSpec, k: int, omega0, x: Form) -> bool:
    """
    Sufficient condition for flexibility: the rank of ``L_x^k`` from
    ``H^{m-k}`` to ``H^{m+k}`` exceeds ``h_{m+k}(omega0)`` for a closed
    2-form ``x``.
    """
    space = cohomology(spec)
    engine = harmonic_engine(spec)
    m = spec.n // 2
    if not 1 <= k <= m:
        raise ValueError(f"k must be in 1..{m}, got {k}")
    cone = symplectic_cone(spec)
    base = _coordinates(spec, omega0)
    h = engine.h_numbers(base[: cone.class_dimension])
    x_class = space.reduce(x)
    return linalg.rank(engine.power(x_class, m - k, k)) > h[m + k]


@dataclass
class GenericityReport:
    """
    Fractions of random samples with generic harmonic numbers, and pencil
    checks. ``insufficient`` is set when the budget reached no symplectic
    point, in which case nothing was measured.
    """

    structure: str
    samples: int
    symplectic: int
    generic_values: Dict[int, int]
    generic_counts: Dict[int, int]
    middle_minimal: Optional[int]
    pencils: List[Dict[str, object]]
    insufficient: bool = False

    @property
    def fractions(self) -> Dict[int, Fraction]:
        if not self.symplectic:
            return {}
        return {k: Fraction(c, self.symplectic) for k, c in self.generic_counts.items()}

    @property
    def passed(self) -> bool:
        if self.insufficient:
            return False
        dense = all(p["generic"] > p["non_generic"] for p in self.pencils)
        return dense and all(f >= GENERIC_FRACTION for f in self.fractions.values())

    @property
    def status(self) -> str:
        if self.insufficient:
            return "insufficient budget"
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {
            "structure": self.structure,
            "samples": self.samples,
            "symplectic": self.symplectic,
            "generic_values": {f"h{k}": v for k, v in self.generic_values.items()},
            "generic_fractions": {f"h{k}": f"{c}/{self.symplectic}" for k, c in self.generic_counts.items()},
            "middle_minimal_checked": self.middle_minimal is not None,
            "pencils": self.pencils,
            "passed": self.passed,
            "status": self.status,
        }


def genericity_report(spec: LieAlgebraSpec, budget: Budget, seed: int = 0,
                      report: Optional[ValueSetReport] = None) -> GenericityReport:
    """
    Empirical genericity: above the middle degree the maximal value should
    be attained almost everywhere, and when ``h_{n-1}`` is constant the
    minimal ``h_m`` as well. Lines through non-generic witnesses are
    sampled at ``t = 1, 1/2, ..., 1/budget.pencil_points``. All h-vectors
    are exact.

    Returns an ``insufficient`` report when the value sets are empty or no
    genericity sample is symplectic.
    """
    if report is None:
        report = value_sets(spec, budget, seed)
    if not report.profiles:
        return GenericityReport(str(spec), budget.samples, 0, {}, {}, None, [], insufficient=True)
    cone = symplectic_cone(spec)
    numbers = ExactNumbers(spec)
    m = spec.n // 2
    values = report.values
    generic = {k: max(values[k]) for k in range(m + 1, spec.n)}
    middle_minimal = None
    if len(values[spec.n - 1]) == 1:
        middle_minimal = min(values[m])
        generic[m] = middle_minimal

    def is_generic(h: Tuple[int, ...]) -> Dict[int, bool]:
        return {k: h[k] == v for k, v in generic.items()}

    counts = {k: 0 for k in generic}
    symplectic = 0
    for index in range(budget.samples):
        point = random_point(cone.dimension, seed, GENERICITY_STREAM, index)
        if not cone.pfaffian_is_nonzero(point):
            continue
        symplectic += 1
        h, _ = numbers(point[: cone.class_dimension])
        for k, ok in is_generic(h).items():
            counts[k] += int(ok)

    pencils = []
    special = [(h, p) for h, p in report.profiles.items() if not all(is_generic(h).values())]
    for number, (h, base) in enumerate(special[: budget.pencils]):
        direction = random_point(cone.dimension, seed, PENCIL_STREAM, number)
        good = bad = degenerate = 0
        for j in range(1, budget.pencil_points + 1):
            point = tuple(b + Fraction(1, j) * v for b, v in zip(base, direction))
            if cone.pfaffian(point) == 0:
                degenerate += 1
                continue
            if all(is_generic(numbers(point[: cone.class_dimension])[0]).values()):
                good += 1
            else:
                bad += 1
        pencils.append({
            "base_h": list(h),
            "generic": good,
            "non_generic": bad,
            "degenerate": degenerate,
        })

    return GenericityReport(str(spec), budget.samples, symplectic, generic, counts, middle_minimal, pencils,
                            insufficient=symplectic == 0)
