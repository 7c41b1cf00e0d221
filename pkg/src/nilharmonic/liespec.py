"""
Nilpotent Lie Algebras in Salamon Notation

A structure such as ``(0,0,12,13,14+23,34+52)`` lists d(alpha_k) for each
generator: entry k is a signed sum of two-digit terms, term ``ij`` meaning
alpha_i ^ alpha_j. The triangular shape (every term ij in entry k has
i, j < k) makes the algebra nilpotent.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .exterior import Form, MultiIndex, basis_indices, wedge
from .linalg import column_basis, columns, from_columns, qmatrix, zeros

MAX_DIMENSION = 9

_ENTRY = re.compile(r"[1-9]{2}(?:[+-][1-9]{2})*")
_TERM = re.compile(r"([+-]?)([1-9])([1-9])")

Constant = Tuple[int, int, int]


class SalamonParseError(ValueError):
    """Raised for malformed Salamon notation; ``token`` names the offending piece."""

    def __init__(self, message: str, token: Optional[str] = None):
        super().__init__(message)
        self.token = token


def _differential_of_generators(n: int, constants: Dict[Constant, Fraction]) -> Dict[int, Form]:
    images: Dict[int, Dict[MultiIndex, Fraction]] = {k: {} for k in range(1, n + 1)}
    for (i, j, k), value in constants.items():
        images[k][(i, j)] = images[k].get((i, j), 0) + value
    return {k: Form(n, 2, coeffs) for k, coeffs in images.items()}


def _apply_derivation(generators: Dict[int, Form], form: Form) -> Form:
    """Extend d from generators to ``form`` by the graded Leibniz rule."""
    n = form.n
    total = Form.zero(n, form.grade + 1)
    for index, value in form.terms():
        for position, generator in enumerate(index):
            image = generators[generator]
            if image.is_zero():
                continue
            before = Form.basis(n, index[:position])
            after = Form.basis(n, index[position + 1:])
            piece = wedge(wedge(before, image), after)
            if position % 2:
                piece = -piece
            total = total + piece * value
    return total


def _jacobi_failure(n: int, constants: Dict[Constant, Fraction]) -> Optional[int]:
    """First generator k with d(d alpha_k) != 0, or None."""
    generators = _differential_of_generators(n, constants)
    for k in range(1, n + 1):
        if not _apply_derivation(generators, generators[k]).is_zero():
            return k
    return None


@dataclass(frozen=True)
class LieAlgebraSpec:
    """
    Nilpotent Lie algebra given by its structure constants.

    ``constants`` holds sorted ``((i, j, k), c)`` pairs with i < j < k
    meaning that d(alpha_k) contains ``c * alpha_i ^ alpha_j``. Two specs
    are equal when their constants are equal, whatever their names.
    """

    n: int
    constants: Tuple[Tuple[Constant, Fraction], ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_constants(cls, n: int, constants: Dict[Constant, int], name: Optional[str] = None):
        """
        Build a spec from a constants mapping.

        Raises:
            ValueError: if the dimension, indices or Jacobi identity fail
        """
        if not 1 <= n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in 1..{MAX_DIMENSION}, got {n}")
        clean: Dict[Constant, Fraction] = {}
        for (i, j, k), value in constants.items():
            if not 1 <= i < j < k <= n:
                raise ValueError(f"constant ({i},{j},{k}) is not triangular in dimension {n}")
            value = Fraction(value)
            if value:
                clean[(i, j, k)] = value
        failure = _jacobi_failure(n, clean)
        if failure is not None:
            raise ValueError(f"d(d a{failure}) != 0: the constants violate the Jacobi identity")
        ordered = sorted(clean.items(), key=lambda item: (item[0][2], item[0][0], item[0][1]))
        return cls(n=n, constants=tuple(ordered), name=name or "")

    @property
    def structure(self) -> Dict[Constant, Fraction]:
        return dict(self.constants)

    @property
    def is_abelian(self) -> bool:
        return not self.constants

    def d_generator(self, k: int) -> Form:
        """d(alpha_k) as a 2-form."""
        if not 1 <= k <= self.n:
            raise ValueError(f"generator {k} out of range 1..{self.n}")
        return Form(self.n, 2, {(i, j): c for (i, j, target), c in self.constants if target == k})

    def render(self) -> str:
        """
        Canonical Salamon string; parsing it gives back an equal spec.

        A leading negative term ``-ij`` is written ``ji``.
        """
        entries = []
        for k in range(1, self.n + 1):
            terms = sorted((i, j, c) for (i, j, target), c in self.constants if target == k)
            if not terms:
                entries.append("0")
                continue
            pieces = []
            for position, (i, j, c) in enumerate(terms):
                if abs(c) != 1:
                    raise ValueError(f"coefficient {c} cannot be written in Salamon notation")
                if position == 0:
                    pieces.append(f"{i}{j}" if c > 0 else f"{j}{i}")
                else:
                    pieces.append(f"+{i}{j}" if c > 0 else f"-{i}{j}")
            entries.append("".join(pieces))
        return "(" + ",".join(entries) + ")"

    def __str__(self):
        return self.name or self.render()


def parse_salamon(text: str) -> LieAlgebraSpec:
    """
    Parse Salamon notation into a nilpotent Lie algebra.

    Whitespace is ignored. Term ``ji`` with j > i stands for
    ``-alpha_i ^ alpha_j``.

    Args:
        text: Structure string such as ``(0,0,0,12,14,15+23+24)``

    Returns:
        LieAlgebraSpec named by the literal input

    Raises:
        SalamonParseError: on malformed entries, out-of-range or repeated
            digits, triangularity violations or a failed Jacobi identity
    """
    compact = "".join(text.split())
    if len(compact) < 2 or compact[0] != "(" or compact[-1] != ")":
        raise SalamonParseError(f"structure must be enclosed in parentheses: {text!r}", token=text)
    body = compact[1:-1]
    if not body:
        raise SalamonParseError("structure has no entries", token=text)
    entries = body.split(",")
    n = len(entries)
    if n > MAX_DIMENSION:
        raise SalamonParseError(f"dimension {n} exceeds {MAX_DIMENSION}", token=text)

    constants: Dict[Constant, Fraction] = {}
    for k, entry in enumerate(entries, start=1):
        if entry == "0":
            continue
        if not _ENTRY.fullmatch(entry):
            raise SalamonParseError(f"malformed entry {entry!r} at position {k}", token=entry)
        for sign, first, second in _TERM.findall(entry):
            token = f"{sign}{first}{second}"
            i, j = int(first), int(second)
            if i > n or j > n:
                raise SalamonParseError(f"term {token!r} names a generator beyond {n}", token=token)
            if i == j:
                raise SalamonParseError(f"term {token!r} repeats a generator", token=token)
            coefficient = -1 if sign == "-" else 1
            if i > j:
                i, j = j, i
                coefficient = -coefficient
            if j >= k:
                raise SalamonParseError(
                    f"term {token!r} in entry {k} is not triangular", token=token
                )
            constants[(i, j, k)] = constants.get((i, j, k), 0) + coefficient

    failure = _jacobi_failure(n, constants)
    if failure is not None:
        raise SalamonParseError(
            f"d(d a{failure}) != 0 for {text!r}", token=entries[failure - 1]
        )
    return LieAlgebraSpec.from_constants(n, constants, name=text.strip())


class CEDifferential:
    """
    Chevalley-Eilenberg differential of a nilpotent Lie algebra.

    Images of basis forms and the degree-wise matrices are cached.
    """

    def __init__(self, spec: LieAlgebraSpec):
        self.spec = spec
        self.n = spec.n
        self._generators = _differential_of_generators(spec.n, spec.structure)
        self._monomials: Dict[MultiIndex, Form] = {}
        self._matrices = {}

    def monomial(self, index: MultiIndex) -> Form:
        image = self._monomials.get(index)
        if image is None:
            image = _apply_derivation(self._generators, Form.basis(self.n, index))
            self._monomials[index] = image
        return image

    def apply(self, form: Form) -> Form:
        """d(form); zero forms of any grade map to zero forms one grade up."""
        if form.n != self.n:
            raise ValueError(f"form lives in dimension {form.n}, not {self.n}")
        total: Dict[MultiIndex, Fraction] = {}
        for index, value in form.terms():
            for target, c in self.monomial(index).terms():
                total[target] = total.get(target, 0) + c * value
        return Form._raw(self.n, form.grade + 1, total)

    def matrix(self, k: int):
        """Matrix of d from k-forms to (k+1)-forms in lexicographic bases."""
        if k not in self._matrices:
            rows = len(basis_indices(self.n, k + 1))
            cols = [self.monomial(index).to_vector() for index in basis_indices(self.n, k)]
            self._matrices[k] = from_columns(cols, rows)
        return self._matrices[k]

    def is_square_zero(self) -> bool:
        return all(self.apply(self.monomial(index)).is_zero()
                   for k in range(self.n + 1) for index in basis_indices(self.n, k))


@lru_cache(maxsize=128)
def differential(spec: LieAlgebraSpec) -> CEDifferential:
    return CEDifferential(spec)


@dataclass(frozen=True)
class LowerCentralSeries:
    """
    Dimensions of g = g^0 > g^1 = [g, g] > ... ending with 0.

    ``step_length`` is the number of non-zero terms.
    """

    dimensions: Tuple[int, ...]

    @property
    def step_length(self) -> int:
        return sum(1 for d in self.dimensions if d > 0)

    @property
    def derived_dimension(self) -> int:
        return self.dimensions[1] if len(self.dimensions) > 1 else 0


def bracket_vector(spec: LieAlgebraSpec, i: int, j: int) -> List[Fraction]:
    """Coordinates of [e_i, e_j]; with the dual convention it is -sum c_ij^k e_k."""
    result = [Fraction(0)] * spec.n
    if i == j:
        return result
    sign = -1
    if i > j:
        i, j = j, i
        sign = 1
    for (a, b, k), c in spec.constants:
        if (a, b) == (i, j):
            result[k - 1] += sign * c
    return result


@lru_cache(maxsize=128)
def lower_central_series(spec: LieAlgebraSpec) -> LowerCentralSeries:
    """
    Dimensions of the lower central series ``g^{r+1} = [g, g^r]``.

    Raises:
        ValueError: if the series stalls above zero (not nilpotent)
    """
    n = spec.n
    brackets = {(i, j): bracket_vector(spec, i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    current = qmatrix([[1 if r == c else 0 for c in range(n)] for r in range(n)])
    dimensions = [n]
    for _ in range(n + 1):
        if current.shape[1] == 0:
            break
        spanning = []
        for x in columns(current):
            for i in range(1, n + 1):
                image = [Fraction(0)] * n
                for j, coefficient in enumerate(x, start=1):
                    if coefficient:
                        for t, v in enumerate(brackets[(i, j)]):
                            image[t] += coefficient * v
                if any(image):
                    spanning.append(image)
        if spanning:
            current = column_basis(from_columns(spanning, n))
        else:
            current = zeros(n, 0)
        if current.shape[1] == dimensions[-1]:
            raise ValueError(f"{spec} is not nilpotent")
        dimensions.append(current.shape[1])
    return LowerCentralSeries(tuple(dimensions))
