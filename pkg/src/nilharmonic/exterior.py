"""
Exterior Algebra with Exact Coefficients

Forms live in the exterior algebra of g* with basis alpha_I, multivectors
in the exterior algebra of g with basis e_I. A multi-index I is a strictly
increasing tuple of 1-based generator numbers. Coefficients are Fractions
and zero coefficients are never stored.
"""

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

from .linalg import from_columns

MultiIndex = Tuple[int, ...]
Number = Union[int, Fraction]


@lru_cache(maxsize=None)
def basis_indices(n: int, k: int) -> Tuple[MultiIndex, ...]:
    """Lexicographically ordered multi-indices of length ``k`` in ``1..n``."""
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def index_positions(n: int, k: int) -> Dict[MultiIndex, int]:
    return {index: position for position, index in enumerate(basis_indices(n, k))}


@lru_cache(maxsize=65536)
def merge_sign(left: MultiIndex, right: MultiIndex) -> Tuple[int, Optional[MultiIndex]]:
    """
    Sign and index of ``alpha_left ^ alpha_right``.

    Returns ``(0, None)`` when the indices overlap.
    """
    if set(left) & set(right):
        return 0, None
    inversions = sum(1 for a in left for b in right if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(left + right))


@lru_cache(maxsize=65536)
def contract_sign(vector_index: MultiIndex, form_index: MultiIndex) -> Tuple[int, Optional[MultiIndex]]:
    """
    Sign and index of ``i(e_vector_index) alpha_form_index``.

    ``i(v1 ^ ... ^ vp)`` acts as ``i(vp) ... i(v1)``, so the first vector is
    contracted first. Removing the entry at 0-based position p contributes
    ``(-1)^p``.
    """
    remaining = list(form_index)
    sign = 1
    for x in vector_index:
        if x not in remaining:
            return 0, None
        position = remaining.index(x)
        if position % 2:
            sign = -sign
        remaining.pop(position)
    return sign, tuple(remaining)


def _check_index(n: int, grade: int, index: MultiIndex):
    if len(index) != grade:
        raise ValueError(f"index {index} does not have grade {grade}")
    if any(not 1 <= i <= n for i in index):
        raise ValueError(f"index {index} out of range 1..{n}")
    if any(a >= b for a, b in zip(index, index[1:])):
        raise ValueError(f"index {index} is not strictly increasing")


class GradedElement:
    """
    Homogeneous element of an exterior algebra over a based space of
    dimension ``n``.

    Grades outside ``0..n`` are allowed only for the zero element, which
    keeps operators such as contraction total.
    """

    prefix = "?"

    __slots__ = ("n", "grade", "_coeffs")

    def __init__(self, n: int, grade: int, coeffs: Optional[Dict[MultiIndex, Number]] = None):
        if n < 0:
            raise ValueError(f"dimension must be non-negative, got {n}")
        clean = {}
        for index, value in (coeffs or {}).items():
            index = tuple(index)
            value = Fraction(value)
            if value == 0:
                continue
            _check_index(n, grade, index)
            clean[index] = clean.get(index, 0) + value
        self.n = n
        self.grade = grade
        self._coeffs = {index: value for index, value in clean.items() if value != 0}

    @classmethod
    def _raw(cls, n: int, grade: int, coeffs: Dict[MultiIndex, Fraction]):
        element = cls.__new__(cls)
        element.n = n
        element.grade = grade
        element._coeffs = {index: value for index, value in coeffs.items() if value != 0}
        return element

    @classmethod
    def zero(cls, n: int, grade: int):
        return cls._raw(n, grade, {})

    @classmethod
    def basis(cls, n: int, index: Iterable[int], coefficient: Number = 1):
        index = tuple(index)
        return cls(n, len(index), {index: coefficient})

    @classmethod
    def scalar(cls, n: int, value: Number):
        return cls(n, 0, {(): value})

    @classmethod
    def from_vector(cls, n: int, grade: int, vector: Iterable[Number]):
        """Element whose coefficients in the lexicographic basis are ``vector``."""
        indices = basis_indices(n, grade)
        vector = list(vector)
        if len(vector) != len(indices):
            raise ValueError(f"expected {len(indices)} coefficients, got {len(vector)}")
        return cls._raw(n, grade, {index: Fraction(v) for index, v in zip(indices, vector)})

    @property
    def coeffs(self) -> Dict[MultiIndex, Fraction]:
        return dict(self._coeffs)

    def coefficient(self, index: Iterable[int]) -> Fraction:
        return self._coeffs.get(tuple(index), Fraction(0))

    def terms(self) -> List[Tuple[MultiIndex, Fraction]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def to_vector(self) -> List[Fraction]:
        return [self._coeffs.get(index, Fraction(0)) for index in basis_indices(self.n, self.grade)]

    def _check_compatible(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} and {other.n}")
        if other.grade != self.grade:
            raise ValueError(f"grade mismatch: {self.grade} and {other.grade}")

    def __add__(self, other):
        self._check_compatible(other)
        total = dict(self._coeffs)
        for index, value in other._coeffs.items():
            total[index] = total.get(index, 0) + value
        return self._raw(self.n, self.grade, total)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._raw(self.n, self.grade, {index: -value for index, value in self._coeffs.items()})

    def __mul__(self, scalar: Number):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = Fraction(scalar)
        return self._raw(self.n, self.grade, {index: scalar * value for index, value in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.grade == other.grade and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.grade, frozenset(self._coeffs.items())))

    def render(self) -> str:
        """
        Human readable form such as ``a136 + a146`` or ``-1/2*e12``.

        The zero element renders as ``0``.
        """
        if not self._coeffs:
            return "0"
        pieces = []
        for position, (index, value) in enumerate(self.terms()):
            magnitude = abs(value)
            if index:
                body = self.prefix + "".join(str(i) for i in index)
                if magnitude != 1:
                    body = f"{magnitude}*{body}"
            else:
                body = str(magnitude)
            if position == 0:
                pieces.append(f"-{body}" if value < 0 else body)
            else:
                pieces.append(f" - {body}" if value < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, grade={self.grade}, {self.render()!r})"


class Form(GradedElement):
    """Element of the exterior algebra of g* (basis alpha_I, rendered ``a``)."""

    prefix = "a"
    __slots__ = ()


class Multivector(GradedElement):
    """Element of the exterior algebra of g (basis e_I, rendered ``e``)."""

    prefix = "e"
    __slots__ = ()


def wedge(left: GradedElement, right: GradedElement) -> GradedElement:
    """
    Exterior product of two forms or of two multivectors.

    Raises:
        TypeError: if a form is wedged with a multivector
        ValueError: on dimension mismatch
    """
    if type(left) is not type(right):
        raise TypeError(f"cannot wedge {type(left).__name__} with {type(right).__name__}")
    if left.n != right.n:
        raise ValueError(f"dimension mismatch: {left.n} and {right.n}")
    grade = left.grade + right.grade
    result: Dict[MultiIndex, Fraction] = {}
    if grade <= left.n:
        for a, x in left._coeffs.items():
            for b, y in right._coeffs.items():
                sign, merged = merge_sign(a, b)
                if sign:
                    result[merged] = result.get(merged, 0) + (x * y if sign > 0 else -x * y)
    return type(left)._raw(left.n, grade, result)


def wedge_all(elements: Iterable[GradedElement], n: int, kind=Form) -> GradedElement:
    """Exterior product of a sequence, the unit scalar for an empty one."""
    result = kind.scalar(n, 1)
    for element in elements:
        result = wedge(result, element)
    return result


def contract(vector: Multivector, form: Form) -> Form:
    """
    Interior product ``i(vector) form``.

    The result has grade ``form.grade - vector.grade``, which is negative
    (and the result zero) when the multivector has the larger grade.
    """
    if not isinstance(vector, Multivector) or not isinstance(form, Form):
        raise TypeError("contract takes a Multivector and a Form")
    if vector.n != form.n:
        raise ValueError(f"dimension mismatch: {vector.n} and {form.n}")
    result: Dict[MultiIndex, Fraction] = {}
    grade = form.grade - vector.grade
    if grade >= 0:
        for v, x in vector._coeffs.items():
            for f, y in form._coeffs.items():
                sign, rest = contract_sign(v, f)
                if sign:
                    result[rest] = result.get(rest, 0) + (x * y if sign > 0 else -x * y)
    return Form._raw(form.n, grade, result)


class MixedForm:
    """Non-homogeneous form stored as its non-zero graded components."""

    def __init__(self, n: int, components: Iterable[Form] = ()):
        self.n = n
        self._components: Dict[int, Form] = {}
        for form in components:
            if form.n != n:
                raise ValueError(f"dimension mismatch: {n} and {form.n}")
            if form.grade in self._components:
                self._components[form.grade] = self._components[form.grade] + form
            else:
                self._components[form.grade] = form
        self._components = {k: f for k, f in self._components.items() if not f.is_zero()}

    @property
    def grades(self) -> List[int]:
        return sorted(self._components)

    def component(self, k: int) -> Form:
        return self._components.get(k, Form.zero(self.n, k))

    def components(self) -> List[Form]:
        return [self._components[k] for k in self.grades]

    def map(self, function: Callable[[Form], Form]) -> "MixedForm":
        return MixedForm(self.n, [function(form) for form in self.components()])

    def __add__(self, other: "MixedForm") -> "MixedForm":
        return MixedForm(self.n, self.components() + other.components())

    def __sub__(self, other: "MixedForm") -> "MixedForm":
        return self + other * -1

    def __mul__(self, scalar: Number) -> "MixedForm":
        return MixedForm(self.n, [form * scalar for form in self.components()])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MixedForm):
            return NotImplemented
        return self.n == other.n and self._components == other._components

    def is_zero(self) -> bool:
        return not self._components

    def render(self) -> str:
        if not self._components:
            return "0"
        return " + ".join(f"({form.render()})" for form in self.components())


def grade_project(form: MixedForm, k: int) -> Form:
    """Degree ``k`` component of a mixed form."""
    if not 0 <= k <= form.n:
        raise ValueError(f"grade {k} out of range 0..{form.n}")
    return form.component(k)


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(?:([ae])(\d+))?$")


def parse_element(text: str, n: int) -> GradedElement:
    """
    Parse a rendered form or multivector, e.g. ``a136 + a146 - 2*a12``.

    Raises:
        ValueError: on malformed input or mixed grades
    """
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty expression")
    if compact == "0":
        raise ValueError("the grade of '0' is ambiguous")
    pieces = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(pieces) != compact:
        raise ValueError(f"malformed expression {text!r}")
    kind = None
    grade = None
    coeffs: Dict[MultiIndex, Fraction] = {}
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        match = _TERM.match(body)
        if not match or body == "":
            raise ValueError(f"malformed term {piece!r}")
        number, letter, digits = match.groups()
        value = Fraction(number) if number else Fraction(1)
        index = tuple(int(c) for c in digits) if digits else ()
        if letter:
            term_kind = Form if letter == "a" else Multivector
            if kind is not None and kind is not term_kind:
                raise ValueError(f"mixed forms and multivectors in {text!r}")
            kind = term_kind
        elif number is None:
            raise ValueError(f"malformed term {piece!r}")
        if grade is not None and len(index) != grade:
            raise ValueError(f"mixed grades in {text!r}")
        grade = len(index)
        if tuple(sorted(set(index))) != index:
            raise ValueError(f"index {digits} must be strictly increasing")
        coeffs[index] = coeffs.get(index, 0) + sign * value
    return (kind or Form)(n, grade, coeffs)


def parse_form(text: str, n: int) -> Form:
    element = parse_element(text, n)
    if not isinstance(element, Form):
        raise ValueError(f"{text!r} is not a form")
    return element


def operator_matrix(operator: Callable[[Form], Form], n: int, source: int, target: int):
    """
    Matrix of a linear operator from k-forms to l-forms in the lexicographic
    bases, one column per source basis form.
    """
    length = len(basis_indices(n, target))
    cols = []
    for index in basis_indices(n, source):
        image = operator(Form.basis(n, index))
        if image.is_zero():
            cols.append([0] * length)
            continue
        if image.grade != target:
            raise ValueError(f"operator sent grade {source} to {image.grade}, expected {target}")
        cols.append(image.to_vector())
    return from_columns(cols, length)
