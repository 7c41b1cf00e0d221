"""
Symplectic Forms and Their Operators

A symplectic form on g is a closed non-degenerate 2-form. From it we build
the symplectic star, the Lefschetz operator L and its dual L*, the
counting operator A and the symplectic codifferential delta. The set of
symplectic forms is an open subset of the closed 2-forms Z^2 cut out by
the Pfaffian, which is described in coordinates by
``SymplecticConeDescription``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, product
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, QQ, Rational, symbols

from . import linalg
from .cohomology import CohomologySpace, cohomology
from .exterior import (
    Form,
    MixedForm,
    MultiIndex,
    Multivector,
    basis_indices,
    contract,
    operator_matrix,
    wedge,
    wedge_all,
)
from .liespec import LieAlgebraSpec, differential


class DegenerateFormError(ValueError):
    """Raised for 2-forms that are not closed and non-degenerate."""

    def __init__(self, message: str, coordinates: Optional[Sequence] = None):
        super().__init__(message)
        self.coordinates = tuple(coordinates) if coordinates is not None else None


def flat_matrix(omega: Form) -> List[List[Fraction]]:
    """Skew matrix W with ``W[i][j] = omega(e_i, e_j)`` (0-based)."""
    if omega.grade != 2:
        raise ValueError(f"expected a 2-form, got grade {omega.grade}")
    n = omega.n
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), value in omega.terms():
        matrix[i - 1][j - 1] = value
        matrix[j - 1][i - 1] = -value
    return matrix


def flat_determinant(omega: Form) -> Fraction:
    """Determinant of the flat map; equals the square of ``pfaffian_coeff``."""
    return linalg.determinant(linalg.qmatrix(flat_matrix(omega), (omega.n, omega.n)))


def pfaffian_coeff(omega: Form) -> Fraction:
    """
    Coefficient of ``alpha_1...n`` in ``omega^m / m!``.

    Raises:
        ValueError: if ``n`` is odd or ``omega`` is not a 2-form
    """
    if omega.grade != 2:
        raise ValueError(f"expected a 2-form, got grade {omega.grade}")
    if omega.n % 2:
        raise ValueError(f"the Pfaffian needs even dimension, got {omega.n}")
    m = omega.n // 2
    top = wedge_all([omega] * m, omega.n)
    return top.coefficient(tuple(range(1, omega.n + 1))) / factorial(m)


class SymplecticForm:
    """
    Closed non-degenerate 2-form on a nilpotent Lie algebra.

    Operator images of basis forms are cached on the instance.

    Raises:
        DegenerateFormError: if the form is not closed or degenerate
    """

    def __init__(self, spec: LieAlgebraSpec, omega: Form):
        if spec.n % 2:
            raise ValueError(f"symplectic forms need even dimension, got {spec.n}")
        if omega.grade != 2 or omega.n != spec.n:
            raise ValueError(f"expected a 2-form in dimension {spec.n}")
        if not differential(spec).apply(omega).is_zero():
            raise DegenerateFormError(f"{omega.render()} is not closed")
        self.pfaffian = pfaffian_coeff(omega)
        if self.pfaffian == 0:
            raise DegenerateFormError(f"{omega.render()} is degenerate")
        self.spec = spec
        self.n = spec.n
        self.m = spec.n // 2
        self.omega = omega
        self._mu_inverse: Dict[MultiIndex, Multivector] = {}
        self._star: Dict[MultiIndex, Form] = {}
        self._matrices: Dict[Tuple[str, int], object] = {}

    @cached_property
    def volume(self) -> Form:
        """``omega^m / m!``."""
        return Form.basis(self.n, range(1, self.n + 1), self.pfaffian)

    @cached_property
    def inverse_flat(self) -> List[List[Fraction]]:
        return linalg.to_rows(linalg.inverse(linalg.qmatrix(flat_matrix(self.omega), (self.n, self.n))))

    @cached_property
    def dual_bivector(self) -> Multivector:
        """Poisson bivector ``sum_{i<j} (W^-1)_ij e_i ^ e_j``."""
        inverse = self.inverse_flat
        coeffs = {
            (i + 1, j + 1): inverse[i][j] for i in range(self.n) for j in range(i + 1, self.n)
        }
        return Multivector(self.n, 2, coeffs)

    def mu_inverse(self, index: MultiIndex) -> Multivector:
        """Image of ``alpha_index`` under the inverse of the flat map, extended multiplicatively."""
        image = self._mu_inverse.get(index)
        if image is None:
            inverse = self.inverse_flat
            vectors = [
                Multivector(self.n, 1, {(i + 1,): inverse[i][j - 1] for i in range(self.n)})
                for j in index
            ]
            image = wedge_all(vectors, self.n, kind=Multivector)
            self._mu_inverse[index] = image
        return image

    def star_basis(self, index: MultiIndex) -> Form:
        image = self._star.get(index)
        if image is None:
            image = contract(self.mu_inverse(index), self.volume)
            self._star[index] = image
        return image

    def operator(self, name: str, k: int):
        """Cached matrix of ``star``/``delta``/``lefschetz``/``lefschetz_dual`` on k-forms."""
        key = (name, k)
        if key not in self._matrices:
            function, target = {
                "star": (lambda f: star(self, f), self.n - k),
                "delta": (lambda f: delta(self, f), k - 1),
                "lefschetz": (lambda f: lefschetz(self, f), k + 2),
                "lefschetz_dual": (lambda f: lefschetz_dual_via_bivector(self, f), k - 2),
            }[name]
            self._matrices[key] = operator_matrix(function, self.n, k, target)
        return self._matrices[key]

    def __repr__(self):
        return f"SymplecticForm({self.spec}, {self.omega.render()!r})"


def dual_bivector(form: SymplecticForm) -> Multivector:
    return form.dual_bivector


def star(form: SymplecticForm, alpha: Form) -> Form:
    """
    Symplectic star ``*alpha = i(mu^-1 alpha)(omega^m/m!)``.

    Zero forms of any grade map to zero forms of grade ``n - k``.
    """
    total: Dict[MultiIndex, Fraction] = {}
    for index, value in alpha.terms():
        for target, c in form.star_basis(index).terms():
            total[target] = total.get(target, 0) + c * value
    return Form._raw(form.n, form.n - alpha.grade, total)


def lefschetz(form: SymplecticForm, alpha: Form) -> Form:
    return wedge(alpha, form.omega)


def lefschetz_dual(form: SymplecticForm, alpha: Form) -> Form:
    """``L* = -*L*``."""
    return -star(form, lefschetz(form, star(form, alpha)))


def lefschetz_dual_via_bivector(form: SymplecticForm, alpha: Form) -> Form:
    """``L*`` as contraction with the Poisson bivector."""
    return contract(form.dual_bivector, alpha)


def operator_A(form: SymplecticForm, alpha: MixedForm) -> MixedForm:
    """Counting operator: multiplies the degree k part by ``m - k``."""
    return MixedForm(form.n, [component * (form.m - component.grade) for component in alpha.components()])


def delta(form: SymplecticForm, alpha: Form) -> Form:
    """Symplectic codifferential ``(-1)^(k+1) * d *`` on k-forms."""
    d = differential(form.spec)
    result = star(form, d.apply(star(form, alpha)))
    return -result if alpha.grade % 2 == 0 else result


def koszul_bracket(form: SymplecticForm, alpha: Form) -> Form:
    """``[i(Pi), d] = i(Pi) d - d i(Pi)``; agrees with ``delta``."""
    d = differential(form.spec)
    first = contract(form.dual_bivector, d.apply(alpha))
    second = d.apply(contract(form.dual_bivector, alpha))
    return first - second


def poisson_pairing(form: SymplecticForm, beta: Form, alpha: Form) -> Fraction:
    """
    Pairing ``sum beta_I alpha_J det(Pi[I, J])`` of two k-forms.

    With it ``beta ^ *alpha = pairing * omega^m/m!``.
    """
    if beta.grade != alpha.grade:
        raise ValueError("poisson_pairing needs forms of equal degree")
    inverse = form.inverse_flat
    total = Fraction(0)
    for I, b in beta.terms():
        for J, a in alpha.terms():
            minor = [[inverse[i - 1][j - 1] for j in J] for i in I]
            total += b * a * linalg.determinant(linalg.qmatrix(minor, (len(I), len(J))))
    return total


def _mixed(form: SymplecticForm, alpha: MixedForm, operator) -> MixedForm:
    return MixedForm(form.n, [operator(form, component) for component in alpha.components()])


def bracket(form: SymplecticForm, first, second, alpha: MixedForm) -> MixedForm:
    """Commutator ``[X, Y] alpha = X Y alpha - Y X alpha`` of mixed-form operators."""
    return first(form, second(form, alpha)) - second(form, first(form, alpha))


def mixed_lefschetz(form: SymplecticForm, alpha: MixedForm) -> MixedForm:
    return _mixed(form, alpha, lefschetz)


def mixed_lefschetz_dual(form: SymplecticForm, alpha: MixedForm) -> MixedForm:
    return _mixed(form, alpha, lefschetz_dual_via_bivector)


def random_form(n: int, k: int, rng: np.random.Generator, bound: int = 5) -> Form:
    """Form with independent integer coefficients in ``[-bound, bound]``."""
    indices = basis_indices(n, k)
    values = rng.integers(-bound, bound + 1, size=len(indices))
    return Form(n, k, {index: int(v) for index, v in zip(indices, values)})


def operator_checks(form: SymplecticForm, rng: np.random.Generator, trials: int = 2) -> Dict[str, bool]:
    """
    Exact operator identities on random forms of every degree.

    Returns:
        Mapping of check name to outcome
    """
    n = form.n
    d = differential(form.spec)
    results = {
        "star_involution": True,
        "lefschetz_dual_bivector": True,
        "codifferential_bracket": True,
        "codifferential_square": True,
        "codifferential_anticommutes": True,
        "poisson_pairing": True,
        "sl2_relations": True,
    }
    for _ in range(trials):
        for k in range(n + 1):
            alpha = random_form(n, k, rng)
            beta = random_form(n, k, rng)
            if star(form, star(form, alpha)) != alpha:
                results["star_involution"] = False
            if lefschetz_dual(form, alpha) != lefschetz_dual_via_bivector(form, alpha):
                results["lefschetz_dual_bivector"] = False
            if delta(form, alpha) != koszul_bracket(form, alpha):
                results["codifferential_bracket"] = False
            if not delta(form, delta(form, alpha)).is_zero():
                results["codifferential_square"] = False
            if not (d.apply(delta(form, alpha)) + delta(form, d.apply(alpha))).is_zero():
                results["codifferential_anticommutes"] = False
            pairing = poisson_pairing(form, beta, alpha)
            if wedge(beta, star(form, alpha)) != form.volume * pairing:
                results["poisson_pairing"] = False

        mixed = MixedForm(n, [random_form(n, k, rng) for k in range(n + 1)])
        L, Lstar = mixed_lefschetz, mixed_lefschetz_dual
        if bracket(form, L, Lstar, mixed) != operator_A(form, mixed):
            results["sl2_relations"] = False
        if bracket(form, operator_A, L, mixed) != L(form, mixed) * -2:
            results["sl2_relations"] = False
        if bracket(form, operator_A, Lstar, mixed) != Lstar(form, mixed) * 2:
            results["sl2_relations"] = False
    results["lefschetz_isomorphisms"] = lefschetz_isomorphisms(form)
    return results


def lefschetz_isomorphisms(form: SymplecticForm) -> bool:
    """``L^k`` maps the (m-k)-forms isomorphically onto the (m+k)-forms for every k."""
    m = form.m
    for k in range(m + 1):
        size = comb(form.n, m - k)
        image = linalg.identity(size)
        for step in range(k):
            image = linalg.matmul(form.operator("lefschetz", m - k + 2 * step), image)
        if image.shape != (size, size) or linalg.rank(image) != size:
            return False
    return True


def two_dimensional_star_check() -> bool:
    """On the abelian plane with ``omega = a12``: ``*1 = a12``, ``*a12 = 1`` and ``*a = -a`` on 1-forms."""
    from .liespec import parse_salamon

    form = SymplecticForm(parse_salamon("(0,0)"), Form.basis(2, (1, 2)))
    one = Form.scalar(2, 1)
    checks = [star(form, one) == form.volume, star(form, form.volume) == one]
    for index in basis_indices(2, 1):
        alpha = Form.basis(2, index)
        checks.append(star(form, alpha) == -alpha)
    return all(checks)


def product_star_check(rng: np.random.Generator) -> bool:
    """
    Star of a split form on the product of abelian 2- and 4-dimensional
    factors: ``*(a1 ^ a2) = (-1)^(k1 k2) *a1 ^ *a2``.
    """
    from .liespec import parse_salamon

    first = SymplecticForm(parse_salamon("(0,0)"), Form.basis(2, (1, 2), 2))
    second_omega = Form(4, 2, {(1, 2): 1, (3, 4): 3, (1, 3): int(rng.integers(-3, 4))})
    second = SymplecticForm(parse_salamon("(0,0,0,0)"), second_omega)

    def shift(alpha: Form, offset: int, n: int) -> Form:
        return Form(n, alpha.grade, {tuple(i + offset for i in idx): v for idx, v in alpha.terms()})

    def lift(alpha: Form) -> Form:
        return shift(alpha, 0, 6)

    total_omega = lift(first.omega) + shift(second.omega, 2, 6)
    total = SymplecticForm(parse_salamon("(0,0,0,0,0,0)"), total_omega)
    for k1 in range(3):
        for k2 in range(5):
            a1 = random_form(2, k1, rng)
            a2 = random_form(4, k2, rng)
            lhs = star(total, wedge(lift(a1), shift(a2, 2, 6)))
            rhs = wedge(lift(star(first, a1)), shift(star(second, a2), 2, 6))
            if (k1 * k2) % 2:
                rhs = -rhs
            if lhs != rhs:
                return False
    return True


def _rational(value) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


class SymplecticConeDescription:
    """
    Closed 2-forms in coordinates, with the Pfaffian as a polynomial.

    The Z^2 basis lists the H^2 representatives first and then a basis of
    B^2, so the first ``class_dimension`` coordinates are the cohomology
    class. The symplectic forms are the points where the Pfaffian is
    non-zero.
    """

    def __init__(self, spec: LieAlgebraSpec):
        if spec.n % 2:
            raise ValueError(f"symplectic forms need even dimension, got {spec.n}")
        self.spec = spec
        self.space: CohomologySpace = cohomology(spec)
        self.basis: List[Form] = self.space.cocycle_basis(2)
        self.class_dimension = self.space.betti(2)
        self.dimension = len(self.basis)
        self.terms = self._expand_pfaffian()
        self._exponents = np.array(list(self.terms), dtype=np.int64).reshape(len(self.terms), self.dimension)
        self._residues = np.array([linalg.to_modular(c) for c in self.terms.values()], dtype=np.int64)

    def _expand_pfaffian(self) -> Dict[Tuple[int, ...], Fraction]:
        n, m = self.spec.n, self.spec.n // 2
        top = tuple(range(1, n + 1))
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for chosen in combinations_with_replacement(range(self.dimension), m):
            value = wedge_all([self.basis[a] for a in chosen], n).coefficient(top)
            if not value:
                continue
            exponent = [0] * self.dimension
            for a in chosen:
                exponent[a] += 1
            weight = 1
            for e in exponent:
                weight *= factorial(e)
            terms[tuple(exponent)] = Fraction(value) / weight
        return terms

    @property
    def is_empty(self) -> bool:
        """True when no closed 2-form is non-degenerate."""
        return not self.terms

    def form(self, coordinates: Sequence) -> Form:
        if len(coordinates) != self.dimension:
            raise ValueError(f"Z^2 has dimension {self.dimension}, got {len(coordinates)} coordinates")
        total = Form.zero(self.spec.n, 2)
        for value, basis_form in zip(coordinates, self.basis):
            if value:
                total = total + basis_form * Fraction(value)
        return total

    def coordinates(self, omega: Form) -> List[Fraction]:
        """
        Coordinates of a closed 2-form in the Z^2 basis.

        Raises:
            NotClosedError: if ``omega`` is not closed
        """
        return self.space.cocycle_coordinates(omega)

    def class_coordinates(self, coordinates: Sequence) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in coordinates[: self.class_dimension])

    def pfaffian(self, coordinates: Sequence) -> Fraction:
        """Value of the Pfaffian polynomial at a point of Z^2."""
        if len(coordinates) != self.dimension:
            raise ValueError(f"Z^2 has dimension {self.dimension}, got {len(coordinates)} coordinates")
        total = Fraction(0)
        for exponent, coefficient in self.terms.items():
            value = coefficient
            for x, e in zip(coordinates, exponent):
                if e:
                    value *= Fraction(x) ** e
                    if not value:
                        break
            total += value
        return total

    def pfaffian_is_nonzero(self, coordinates: Sequence) -> bool:
        """
        Fast non-vanishing test modulo ``linalg.PRIME``.

        A True answer is exact. A False answer means the Pfaffian vanishes or
        is divisible by the prime.
        """
        if not self.terms:
            return False
        prime = linalg.PRIME
        residues = [linalg.to_modular(c) for c in coordinates]
        m = self.spec.n // 2
        powers = np.ones((m + 1, self.dimension), dtype=np.int64)
        base = np.array(residues, dtype=np.int64)
        for e in range(1, m + 1):
            powers[e] = powers[e - 1] * base % prime
        values = np.ones(len(self.terms), dtype=np.int64)
        for i in range(self.dimension):
            values = values * powers[self._exponents[:, i], i] % prime
        return int((values * self._residues % prime).sum() % prime) != 0

    def symbols(self):
        return symbols(f"c1:{self.dimension + 1}")

    def pfaffian_poly(self) -> Poly:
        generators = self.symbols()
        if not self.terms:
            return Poly(0, *generators, domain=QQ)
        data = {exponent: QQ(c.numerator, c.denominator) for exponent, c in self.terms.items()}
        return Poly.from_dict(data, *generators, domain=QQ)

    def render_pfaffian(self) -> str:
        return str(self.pfaffian_poly().as_expr())

    def pfaffian_along(self, start: Sequence, end: Sequence) -> Poly:
        """Univariate Pfaffian of ``start + t (end - start)`` as a Poly in ``t``."""
        t = symbols("t")
        if not self.terms:
            return Poly(0, t, domain=QQ)
        lines = [
            Poly(_rational(a) + _rational(Fraction(b) - Fraction(a)) * t, t, domain=QQ)
            for a, b in zip(start, end)
        ]
        total = Poly(0, t, domain=QQ)
        for exponent, coefficient in self.terms.items():
            term = Poly(_rational(coefficient), t, domain=QQ)
            for line, e in zip(lines, exponent):
                if e:
                    term = term * line ** e
            total = total + term
        return total

    def symplectic_form(self, coordinates: Sequence) -> SymplecticForm:
        """
        Raises:
            DegenerateFormError: when the Pfaffian vanishes at ``coordinates``
        """
        if self.pfaffian(coordinates) == 0:
            raise DegenerateFormError("Pfaffian vanishes at these coordinates", coordinates)
        return SymplecticForm(self.spec, self.form(coordinates))


@lru_cache(maxsize=128)
def symplectic_cone(spec: LieAlgebraSpec) -> SymplecticConeDescription:
    return SymplecticConeDescription(spec)


@dataclass(frozen=True)
class ExistenceDecision:
    """Whether a symplectic form exists, with a witness when it does."""

    admits: bool
    witness: Optional[Tuple[Fraction, ...]]
    reason: str


WITNESS_VALUES = (1, -1, 2, -2, 3, -3, 4, -4)


def symplectic_existence(spec: LieAlgebraSpec) -> ExistenceDecision:
    """
    Decide whether the Pfaffian polynomial on Z^2 is non-zero.

    The witness is found deterministically: monomial supports are tried by
    size and then lexicographically, with values from ``WITNESS_VALUES``.
    A non-zero polynomial of degree m in s variables cannot vanish on the
    grid ``{values}^s`` when there are more than m values.
    """
    if spec.n % 2:
        return ExistenceDecision(False, None, "odd dimension")
    cone = symplectic_cone(spec)
    if cone.is_empty:
        return ExistenceDecision(False, None, "the Pfaffian vanishes identically on Z^2")
    supports = sorted({tuple(a for a, e in enumerate(exponent) if e) for exponent in cone.terms},
                      key=lambda support: (len(support), support))
    for support in supports:
        for values in product(WITNESS_VALUES, repeat=len(support)):
            point = [Fraction(0)] * cone.dimension
            for a, v in zip(support, values):
                point[a] = Fraction(v)
            if cone.pfaffian(point):
                return ExistenceDecision(True, tuple(point), "non-zero Pfaffian at the witness")
    raise RuntimeError(f"no witness found for {spec} although its Pfaffian is non-zero")


def moduli_dimension(spec: LieAlgebraSpec) -> int:
    """
    Dimension of the space of symplectic forms, i.e. ``dim Z^2``.

    Raises:
        ValueError: if ``spec`` admits no symplectic form
    """
    if not symplectic_existence(spec).admits:
        raise ValueError(f"{spec} admits no symplectic form")
    return symplectic_cone(spec).dimension
