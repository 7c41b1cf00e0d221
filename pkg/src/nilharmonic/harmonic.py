"""
Symplectically Harmonic Cohomology

H_hr^k is the subspace of H^k of classes with a representative that is
both closed and co-closed for the symplectic codifferential. It is built
from the cup-product recursion

    H_hr^{m-k} = P^{m-k} + L H_hr^{m-k-2},    H_hr^{m+k} = L^k H_hr^{m-k}

where P^{m-k} is the kernel of L^{k+1} on H^{m-k}. A chain-level
computation of the same numbers is kept as an independent cross-check.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from . import linalg
from .cohomology import CohomologySpace, CupTable, cohomology
from .exterior import Form
from .liespec import LieAlgebraSpec, differential, lower_central_series
from .symplectic import SymplecticForm, pfaffian_coeff, symplectic_cone


def _vectors(matrix: DomainMatrix) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(column) for column in linalg.columns(matrix))


@dataclass(frozen=True)
class PrimitiveSubspace:
    """Primitive classes ``P^degree``, as coordinate vectors in H^degree."""

    degree: int
    basis: Tuple[Tuple[Fraction, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class HarmonicProfile:
    """
    Dimensions ``h_0..h_n`` and bases of the harmonic subspaces for one
    cohomology class of symplectic forms.
    """

    omega_class: Tuple[Fraction, ...]
    h: Tuple[int, ...]
    subspaces: Dict[int, Tuple[Tuple[Fraction, ...], ...]] = field(compare=False, hash=False)

    def as_dict(self, include_subspaces: bool = False) -> dict:
        data = {"omega_class": [str(c) for c in self.omega_class], "h": list(self.h)}
        if include_subspaces:
            data["subspaces"] = {
                str(k): [[str(c) for c in vector] for vector in basis]
                for k, basis in sorted(self.subspaces.items())
            }
        return data


class HarmonicEngine:
    """
    Evaluates the recursion for many classes of one Lie algebra.

    Cup products are taken from a precomputed ``CupTable`` so each class
    costs only small rank computations.
    """

    def __init__(self, space: CohomologySpace):
        if space.n % 2:
            raise ValueError(f"symplectic structures need even dimension, got {space.n}")
        self.space = space
        self.n = space.n
        self.m = space.n // 2
        self.table = CupTable(space)
        self._modular_units = {
            k: np.array(
                [[[linalg.to_modular(e) for e in row] for row in unit] for unit in self.table.unit_rows(k)],
                dtype=np.int64,
            ).reshape(len(self.table.classes), space.betti(k + 2), space.betti(k))
            for k in range(self.n + 1)
        }

    def power(self, omega_class: Sequence, degree: int, exponent: int) -> DomainMatrix:
        return self.table.power(omega_class, degree, exponent)

    def primitive(self, omega_class: Sequence, k: int) -> DomainMatrix:
        """Kernel of ``L^{k+1}`` on ``H^{m-k}``."""
        if not 0 <= k <= self.m:
            raise ValueError(f"k must be in 0..{self.m}, got {k}")
        return linalg.kernel(self.power(omega_class, self.m - k, k + 1))

    def subspaces(self, omega_class: Sequence) -> Dict[int, DomainMatrix]:
        """Bases of H_hr^j for every degree j, as column matrices."""
        result: Dict[int, DomainMatrix] = {}
        for j in range(self.m + 1):
            spanning = self.primitive(omega_class, self.m - j)
            if j >= 2:
                lifted = linalg.matmul(self.table.lefschetz(omega_class, j - 2), result[j - 2])
                spanning = linalg.hstack(spanning, lifted)
            result[j] = linalg.column_basis(spanning)
        for k in range(1, self.m + 1):
            image = linalg.matmul(self.power(omega_class, self.m - k, k), result[self.m - k])
            result[self.m + k] = linalg.column_basis(image)
        return result

    def profile(self, omega_class: Sequence) -> HarmonicProfile:
        omega_class = tuple(Fraction(c) for c in omega_class)
        spaces = self.subspaces(omega_class)
        h = tuple(spaces[k].shape[1] for k in range(self.n + 1))
        return HarmonicProfile(omega_class, h, {k: _vectors(v) for k, v in spaces.items()})

    def h_numbers(self, omega_class: Sequence) -> Tuple[int, ...]:
        spaces = self.subspaces(omega_class)
        return tuple(spaces[k].shape[1] for k in range(self.n + 1))

    def kernel_dimension(self, omega_class: Sequence, degree: int, exponent: int = 1) -> int:
        """``dim ker(L^exponent : H^degree -> H^{degree + 2 exponent})``."""
        return linalg.kernel(self.power(omega_class, degree, exponent)).shape[1]

    def modular_lefschetz(self, residues: np.ndarray, k: int) -> np.ndarray:
        units = self._modular_units.get(k)
        if units is None or 0 in units.shape[1:]:
            return np.zeros((self.space.betti(k + 2), self.space.betti(k)), dtype=np.int64)
        return np.tensordot(residues, units, axes=1) % linalg.PRIME

    def modular_numbers(self, omega_class: Sequence) -> Tuple[Tuple[int, ...], int]:
        """
        h-vector from the same recursion with ranks taken modulo
        ``linalg.PRIME``, and the dimension of the kernel of L on H^m.

        Agrees with ``h_numbers`` unless the prime divides one of the
        minors involved, so callers confirm new values exactly.
        """
        residues = np.array([linalg.to_modular(c) for c in omega_class], dtype=np.int64)
        lefschetz = {k: self.modular_lefschetz(residues, k) for k in range(self.n + 1)}

        def power(degree: int, exponent: int) -> np.ndarray:
            result = np.eye(self.space.betti(degree), dtype=np.int64)
            for step in range(exponent):
                target = degree + 2 * step
                if target > self.n:
                    return np.zeros((0, result.shape[1]), dtype=np.int64)
                result = linalg.mod_matmul(lefschetz[target], result)
            return result

        spaces = {}
        for j in range(self.m + 1):
            spanning = linalg.mod_kernel(power(j, self.m - j + 1))
            if j >= 2:
                lifted = linalg.mod_matmul(lefschetz[j - 2], spaces[j - 2])
                spanning = np.hstack([spanning, lifted])
            spaces[j] = linalg.mod_column_basis(spanning)
        h = [spaces[j].shape[1] for j in range(self.m + 1)]
        for k in range(1, self.m + 1):
            h.append(linalg.mod_rank(linalg.mod_matmul(power(self.m - k, k), spaces[self.m - k])))
        middle = lefschetz[self.m]
        return tuple(h), middle.shape[1] - linalg.mod_rank(middle)


@lru_cache(maxsize=64)
def harmonic_engine(spec: LieAlgebraSpec) -> HarmonicEngine:
    return HarmonicEngine(cohomology(spec))


def omega_class(space: CohomologySpace, omega: SymplecticForm) -> List[Fraction]:
    return space.reduce(omega.omega)


def primitive(space: CohomologySpace, omega: SymplecticForm, k: int) -> PrimitiveSubspace:
    """
    Primitive classes ``P^{m-k} = ker(L^{k+1} : H^{m-k} -> H^{m+k+2})``.

    On the 6-torus with k=0 this is the 14-dimensional kernel of L on H^3.
    """
    engine = harmonic_engine(space.spec)
    kernel = engine.primitive(omega_class(space, omega), k)
    return PrimitiveSubspace(engine.m - k, _vectors(kernel))


def harmonic_subspaces(space: CohomologySpace, omega: SymplecticForm) -> HarmonicProfile:
    """
    Harmonic subspaces of H^* for a symplectic form.

    Only the class of ``omega`` matters, so ``omega + d beta`` gives the
    same result.
    """
    return harmonic_engine(space.spec).profile(omega_class(space, omega))


def h3_via_kernel(space: CohomologySpace, omega: SymplecticForm) -> int:
    """``h_3 = h_5 + dim ker(L : H^3 -> H^5)`` in dimension 6."""
    if space.n != 6:
        raise ValueError(f"h3_via_kernel is stated for dimension 6, got {space.n}")
    engine = harmonic_engine(space.spec)
    coordinates = omega_class(space, omega)
    return engine.h_numbers(coordinates)[5] + engine.kernel_dimension(coordinates, 3)


def lemma_ker_terms(space: CohomologySpace, omega: SymplecticForm) -> Dict[str, int]:
    """
    Terms of the identity ``dim(P^m ∩ L H^{m-2}) = dim L H^{m-2} - dim L^2 H^{m-2}``
    together with ``h_m`` and ``h_{m+2} + dim ker(L : H^m -> H^{m+2})``.
    """
    engine = harmonic_engine(space.spec)
    coordinates = omega_class(space, omega)
    m = engine.m
    if m < 2:
        raise ValueError(f"lemma_ker_terms needs dimension at least 4, got {space.n}")
    h = engine.h_numbers(coordinates)
    once = linalg.column_basis(engine.power(coordinates, m - 2, 1))
    twice = linalg.column_basis(engine.power(coordinates, m - 2, 2))
    intersection = linalg.subspace_intersection(engine.primitive(coordinates, 0), once)
    kernel = engine.kernel_dimension(coordinates, m)
    return {
        "h_middle": h[m],
        "h_middle_via_kernel": h[m + 2] + kernel,
        "kernel_dimension": kernel,
        "primitive_meets_image": intersection.shape[1],
        "image_dimension": once.shape[1],
        "square_image_dimension": twice.shape[1],
    }


def chain_level_harmonic_forms(spec: LieAlgebraSpec, omega: SymplecticForm, k: int) -> DomainMatrix:
    """Basis of the k-forms with ``d x = 0`` and ``delta x = 0``, one per column."""
    stacked = linalg.vstack(differential(spec).matrix(k), omega.operator("delta", k))
    return linalg.kernel(stacked)


def chain_level_h(spec: LieAlgebraSpec, omega: SymplecticForm, k: int) -> int:
    """
    ``h_k`` computed on forms: the rank of the map sending closed and
    co-closed k-forms to their cohomology classes.
    """
    space = cohomology(spec)
    forms = chain_level_harmonic_forms(spec, omega, k)
    if forms.shape[1] == 0 or space.betti(k) == 0:
        return 0
    classes = [space.reduce(Form.from_vector(spec.n, k, vector)) for vector in linalg.columns(forms)]
    return linalg.rank(linalg.from_columns(classes, space.betti(k)))


@dataclass(frozen=True)
class YamadaReport:
    """
    Lower central series against ``h_1 - h_{n-1}``.

    ``equality`` and ``corollary`` only apply to step length 2 and are
    None otherwise. Nothing is checked for abelian algebras.
    """

    step_length: int
    h1: int
    h_top_minus_one: int
    b1: int
    last_term_dimension: int
    derived_dimension: int
    inequality: Optional[bool]
    equality: Optional[bool]
    corollary: Optional[bool]

    @property
    def applies(self) -> bool:
        return self.step_length >= 2

    @property
    def passed(self) -> bool:
        return all(check is not False for check in (self.inequality, self.equality, self.corollary))

    def as_dict(self) -> dict:
        return {
            "step_length": self.step_length,
            "h1": self.h1,
            "h_top_minus_one": self.h_top_minus_one,
            "inequality": self.inequality,
            "equality": self.equality,
            "corollary": self.corollary,
        }


def yamada_from_numbers(spec: LieAlgebraSpec, h: Sequence[int]) -> YamadaReport:
    """Yamada checks for a given h-vector."""
    series = lower_central_series(spec)
    step = series.step_length
    n = spec.n
    h1, top = h[1], h[n - 1]
    b1 = cohomology(spec).betti(1)
    last = series.dimensions[step - 1] if step >= 1 else 0
    if step < 2:
        return YamadaReport(step, h1, top, b1, last, series.derived_dimension, None, None, None)
    inequality = h1 - top >= last
    equality = corollary = None
    if step == 2:
        equality = h1 - top == series.derived_dimension
        corollary = top == 2 * (b1 - n // 2)
    return YamadaReport(step, h1, top, b1, last, series.derived_dimension, inequality, equality, corollary)


def yamada_check(spec: LieAlgebraSpec, omega: SymplecticForm) -> YamadaReport:
    """
    ``h_1 - h_{2m-1} >= dim g^r`` for step length ``r + 1 >= 2``; for step
    length 2 also ``h_1 - h_{2m-1} = dim [g, g]`` and ``h_{2m-1} = 2(b_1 - m)``.
    """
    profile = harmonic_subspaces(cohomology(spec), omega)
    return yamada_from_numbers(spec, profile.h)


def structural_checks(space: CohomologySpace, h: Sequence[int], kernel_middle: int) -> Dict[str, bool]:
    """
    Identities every symplectic class satisfies: ``h_k <= b_k``, equality
    for ``k <= 2``, ``h_{m-k} >= h_{m+k}`` and ``h_m = h_{m+2} + dim ker L``.
    """
    n = space.n
    m = n // 2
    return {
        "bounded_by_betti": all(h[k] <= space.betti(k) for k in range(n + 1)),
        "low_degrees": all(h[k] == space.betti(k) for k in range(min(2, n) + 1)),
        "epi": all(h[m - k] >= h[m + k] for k in range(m + 1)),
        "kernel_identity": h[m] == (h[m + 2] if m + 2 <= n else 0) + kernel_middle,
    }


def primitive_inclusion(space: CohomologySpace, omega: SymplecticForm) -> bool:
    """``P^{m-k}`` lies inside ``H_hr^{m-k}`` for every k."""
    engine = harmonic_engine(space.spec)
    coordinates = omega_class(space, omega)
    spaces = engine.subspaces(coordinates)
    return all(
        linalg.contains(spaces[engine.m - k], engine.primitive(coordinates, k))
        for k in range(engine.m + 1)
    )


def theorem_iso_check(spec: LieAlgebraSpec, omega: SymplecticForm) -> bool:
    """
    ``L^k`` maps closed and co-closed (m-k)-forms bijectively onto closed
    and co-closed (m+k)-forms.
    """
    m = spec.n // 2
    for k in range(m + 1):
        source = chain_level_harmonic_forms(spec, omega, m - k)
        target = chain_level_harmonic_forms(spec, omega, m + k)
        image = source
        for step in range(k):
            image = linalg.matmul(omega.operator("lefschetz", m - k + 2 * step), image)
        if image.shape[1] != target.shape[1] or linalg.rank(image) != source.shape[1]:
            return False
        if not linalg.contains(target, image):
            return False
    return True


def class_invariance(spec: LieAlgebraSpec, coordinates: Sequence, betas: Sequence[Form],
                     chain_level: bool = False) -> bool:
    """
    Harmonic numbers only depend on the class: for every 1-form beta with
    ``omega + d beta`` non-degenerate, the h-vector of ``omega + d beta``
    equals that of ``omega``, where ``omega`` has the given Z^2 coordinates.

    With ``chain_level`` the shifted forms are also measured on forms with
    ``chain_level_h``, which does not pass through the class reduction.
    """
    cone = symplectic_cone(spec)
    space = cohomology(spec)
    d = differential(spec)
    omega = cone.form(coordinates)
    expected = harmonic_engine(spec).h_numbers(cone.class_coordinates(coordinates))
    for beta in betas:
        shifted = omega + d.apply(beta)
        if pfaffian_coeff(shifted) == 0:
            continue
        form = SymplecticForm(spec, shifted)
        if harmonic_subspaces(space, form).h != expected:
            return False
        if chain_level and tuple(chain_level_h(spec, form, k) for k in range(spec.n + 1)) != expected:
            return False
    return True
