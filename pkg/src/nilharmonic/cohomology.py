"""
Chevalley-Eilenberg Cohomology

By Nomizu's theorem the de Rham cohomology of a nilmanifold is the
cohomology of the exterior algebra of g* under the Chevalley-Eilenberg
differential, so everything here is finite exact linear algebra.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from . import linalg
from .exterior import Form, wedge
from .liespec import CEDifferential, LieAlgebraSpec, differential


class NotClosedError(ValueError):
    """Raised when a form that should be closed is not."""


class CohomologySpace:
    """
    Cohomology H^k of a nilpotent Lie algebra, degree by degree.

    For each degree the space keeps representatives of a basis of H^k,
    a basis of the exact forms B^k and the left inverse of ``[reps | B]``,
    whose rows give the coordinates of a closed form in that basis.
    """

    def __init__(self, spec: LieAlgebraSpec):
        self.spec = spec
        self.n = spec.n
        self.differential: CEDifferential = differential(spec)
        self._representatives: Dict[int, List[Form]] = {}
        self._exact: Dict[int, List[Form]] = {}
        self._coordinates: Dict[int, DomainMatrix] = {}
        for k in range(self.n + 1):
            self._build_degree(k)

    def _build_degree(self, k: int):
        size = comb(self.n, k)
        cocycles = linalg.kernel(self.differential.matrix(k))
        if k == 0:
            exact = linalg.zeros(size, 0)
        else:
            exact = linalg.column_basis(self.differential.matrix(k - 1))

        # greedy complement of B^k inside Z^k
        chosen = exact
        chosen_rank = exact.shape[1]
        representatives = []
        for column in linalg.columns(cocycles):
            candidate = linalg.hstack(chosen, linalg.from_columns([column], size))
            candidate_rank = linalg.rank(candidate)
            if candidate_rank > chosen_rank:
                chosen, chosen_rank = candidate, candidate_rank
                representatives.append(column)

        reps = linalg.from_columns(representatives, size)
        self._representatives[k] = [Form.from_vector(self.n, k, v) for v in representatives]
        self._exact[k] = [Form.from_vector(self.n, k, v) for v in linalg.columns(exact)]
        self._coordinates[k] = linalg.left_inverse(linalg.hstack(reps, exact))

    def betti(self, k: int) -> int:
        if not 0 <= k <= self.n:
            return 0
        return len(self._representatives[k])

    @property
    def betti_numbers(self) -> Tuple[int, ...]:
        return tuple(self.betti(k) for k in range(self.n + 1))

    def representatives(self, k: int) -> List[Form]:
        """Closed forms whose classes are the chosen basis of H^k."""
        if not 0 <= k <= self.n:
            return []
        return list(self._representatives[k])

    def exact_basis(self, k: int) -> List[Form]:
        """Basis of the exact k-forms d(Lambda^{k-1})."""
        if not 0 <= k <= self.n:
            return []
        return list(self._exact[k])

    def cocycle_basis(self, k: int) -> List[Form]:
        """Basis of Z^k: the H^k representatives followed by the B^k basis."""
        return self.representatives(k) + self.exact_basis(k)

    def is_closed(self, form: Form) -> bool:
        return self.differential.apply(form).is_zero()

    def cocycle_coordinates(self, form: Form) -> List[Fraction]:
        """
        Coordinates of a closed form in ``cocycle_basis(form.grade)``.

        Raises:
            NotClosedError: if ``d form != 0``
        """
        if form.n != self.n:
            raise ValueError(f"form lives in dimension {form.n}, not {self.n}")
        if not 0 <= form.grade <= self.n:
            raise ValueError(f"grade {form.grade} out of range 0..{self.n}")
        if not self.is_closed(form):
            raise NotClosedError(f"{form.render()} is not closed")
        return linalg.apply(self._coordinates[form.grade], form.to_vector())

    def reduce(self, form: Form) -> List[Fraction]:
        """
        Cohomology class of a closed form in the representative basis.

        Raises:
            NotClosedError: if ``d form != 0``
        """
        return self.cocycle_coordinates(form)[: self.betti(form.grade)]

    def class_form(self, k: int, coordinates: Sequence) -> Form:
        """The closed form ``sum coordinates[i] * representatives(k)[i]``."""
        reps = self.representatives(k)
        if len(coordinates) != len(reps):
            raise ValueError(f"H^{k} has dimension {len(reps)}, got {len(coordinates)} coordinates")
        total = Form.zero(self.n, k)
        for value, rep in zip(coordinates, reps):
            if value:
                total = total + rep * Fraction(value)
        return total

    def render_class(self, form: Form) -> str:
        return f"[{form.render()}]"


@lru_cache(maxsize=128)
def cohomology(spec: LieAlgebraSpec) -> CohomologySpace:
    return CohomologySpace(spec)


def euler_check(spec: LieAlgebraSpec) -> bool:
    """
    Alternating sum of Betti numbers vanishes, and in dimension 6
    ``b3 = 2(b2 - b1 + 1)``.
    """
    b = cohomology(spec).betti_numbers
    alternating = sum((-1) ** k * value for k, value in enumerate(b))
    if alternating != 0:
        return False
    if spec.n == 6:
        return b[3] == 2 * (b[2] - b[1] + 1)
    return True


@dataclass(frozen=True)
class CupMatrix:
    """Matrix of ``[x] -> [x ^ c^power]`` from H^source to H^target."""

    source: int
    target: int
    power: int
    matrix: DomainMatrix

    def rows(self) -> List[List[Fraction]]:
        return linalg.to_rows(self.matrix)


def cup_matrix(space: CohomologySpace, c: Form, k: int, power: int = 1) -> CupMatrix:
    """
    Cup product with ``c^power`` for a closed 2-form ``c``.

    Column i is the class of ``representatives(k)[i] ^ c^power``.

    Raises:
        NotClosedError: if ``c`` is not closed
    """
    if c.grade != 2:
        raise ValueError(f"cup_matrix needs a 2-form, got grade {c.grade}")
    if not space.is_closed(c):
        raise NotClosedError(f"{c.render()} is not closed")
    target = k + 2 * power
    multiplier = Form.scalar(space.n, 1)
    for _ in range(power):
        multiplier = wedge(multiplier, c)
    height = space.betti(target)
    cols = [space.reduce(wedge(rep, multiplier)) if height else [] for rep in space.representatives(k)]
    return CupMatrix(k, target, power, linalg.from_columns(cols, height))


class CupTable:
    """
    Cup-product matrices of the H^2 basis classes in every degree.

    Multiplication by the class ``sum c_a [z_a]`` is then the combination
    ``sum c_a L_a``, which avoids wedging forms for every sample.
    """

    def __init__(self, space: CohomologySpace):
        self.space = space
        self.n = space.n
        self.classes = space.representatives(2)
        self._units: Dict[int, List[List[List]]] = {}
        for k in range(self.n + 1):
            self._units[k] = [linalg.raw_rows(cup_matrix(space, z, k).matrix) for z in self.classes]

    def unit_rows(self, k: int) -> List[List[List]]:
        """Raw QQ rows of the cup matrices H^k -> H^{k+2}, one per basis class."""
        return self._units.get(k, [])

    def lefschetz(self, class_coordinates: Sequence, k: int) -> DomainMatrix:
        """Matrix of cup with the given H^2 class, H^k -> H^{k+2}."""
        if len(class_coordinates) != len(self.classes):
            raise ValueError(f"H^2 has dimension {len(self.classes)}, got {len(class_coordinates)}")
        shape = (self.space.betti(k + 2), self.space.betti(k))
        if 0 in shape:
            return linalg.zeros(*shape)
        return linalg.linear_combination(class_coordinates, self._units[k], shape)

    def power(self, class_coordinates: Sequence, k: int, exponent: int) -> DomainMatrix:
        """Matrix of cup with the ``exponent``-th power, H^k -> H^{k+2*exponent}."""
        result = linalg.identity(self.space.betti(k))
        degree = k
        for _ in range(exponent):
            result = linalg.matmul(self.lefschetz(class_coordinates, degree), result)
            degree += 2
        return result
