"""
Exact Linear Algebra over the Rationals

Thin helpers around sympy's ``DomainMatrix`` over ``QQ``. Subspaces are
represented by matrices whose columns span them. Every helper accepts
matrices with a zero dimension, which the underlying library does not
always handle.

The ``mod_*`` helpers repeat rank and kernel computations on numpy
integer arrays modulo ``PRIME`` for screening large samples.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def qq(value):
    """Convert an int, Fraction or QQ element to a QQ element."""
    if QQ.of_type(value):
        return value
    if isinstance(value, int):
        return QQ(value)
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(element) -> Fraction:
    """Convert a QQ element back to a Fraction."""
    return Fraction(int(element.numerator), int(element.denominator))


def zeros(rows: int, cols: int) -> DomainMatrix:
    return DomainMatrix([[QQ(0)] * cols for _ in range(rows)], (rows, cols), QQ)


def identity(size: int) -> DomainMatrix:
    return DomainMatrix(
        [[QQ(1) if i == j else QQ(0) for j in range(size)] for i in range(size)],
        (size, size),
        QQ,
    )


def qmatrix(rows: Sequence[Sequence], shape: Tuple[int, int] = None) -> DomainMatrix:
    """
    Build a rational matrix from nested rows.

    Args:
        rows: Row lists of ints, Fractions or QQ elements
        shape: Explicit shape, needed when there are no rows

    Returns:
        DomainMatrix over QQ
    """
    rows = [list(row) for row in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    height, width = shape
    if len(rows) != height or any(len(row) != width for row in rows):
        raise ValueError(f"rows do not match shape {shape}")
    return DomainMatrix([[qq(entry) for entry in row] for row in rows], (height, width), QQ)


def from_columns(columns: Sequence[Sequence], length: int) -> DomainMatrix:
    """Build a ``length x len(columns)`` matrix from column vectors."""
    columns = [list(column) for column in columns]
    if any(len(column) != length for column in columns):
        raise ValueError(f"every column must have length {length}")
    rows = [[qq(column[i]) for column in columns] for i in range(length)]
    return DomainMatrix(rows, (length, len(columns)), QQ)


def raw_rows(matrix: DomainMatrix) -> List[List]:
    """Entries as nested lists of QQ elements."""
    height, width = matrix.shape
    if height == 0:
        return []
    if width == 0:
        return [[] for _ in range(height)]
    return matrix.to_list()


def to_rows(matrix: DomainMatrix) -> List[List[Fraction]]:
    return [[to_fraction(entry) for entry in row] for row in raw_rows(matrix)]


def columns(matrix: DomainMatrix) -> List[List[Fraction]]:
    height, width = matrix.shape
    rows = to_rows(matrix)
    return [[rows[i][j] for i in range(height)] for j in range(width)]


def rref(matrix: DomainMatrix) -> Tuple[DomainMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if 0 in matrix.shape:
        return matrix, ()
    reduced, pivots = matrix.rref()
    return reduced, tuple(pivots)


def rank(matrix: DomainMatrix) -> int:
    return len(rref(matrix)[1])


def kernel(matrix: DomainMatrix) -> DomainMatrix:
    """
    Basis of the null space, one column per free variable.

    The basis vector of free column ``f`` has a 1 in position ``f`` and
    zeros in the other free positions.
    """
    height, width = matrix.shape
    if width == 0:
        return zeros(0, 0)
    if height == 0:
        return identity(width)
    reduced, pivots = rref(matrix)
    reduced_rows = raw_rows(reduced)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        vector = [QQ(0)] * width
        vector[free] = QQ(1)
        for row, pivot in enumerate(pivots):
            vector[pivot] = -reduced_rows[row][free]
        basis.append(vector)
    return from_columns(basis, width)


def select_columns(matrix: DomainMatrix, indices: Iterable[int]) -> DomainMatrix:
    indices = list(indices)
    rows = raw_rows(matrix)
    return DomainMatrix(
        [[row[j] for j in indices] for row in rows], (matrix.shape[0], len(indices)), QQ
    )


def column_basis(matrix: DomainMatrix) -> DomainMatrix:
    """The pivot columns of ``matrix``: a basis of its column space."""
    _, pivots = rref(matrix)
    return select_columns(matrix, pivots)


def hstack(*matrices: DomainMatrix) -> DomainMatrix:
    height = matrices[0].shape[0]
    if any(m.shape[0] != height for m in matrices):
        raise ValueError("hstack needs equal row counts")
    rows = [[] for _ in range(height)]
    for m in matrices:
        for target, row in zip(rows, raw_rows(m)):
            target.extend(row)
    width = sum(m.shape[1] for m in matrices)
    return DomainMatrix(rows, (height, width), QQ)


def vstack(*matrices: DomainMatrix) -> DomainMatrix:
    width = matrices[0].shape[1]
    if any(m.shape[1] != width for m in matrices):
        raise ValueError("vstack needs equal column counts")
    rows = []
    for m in matrices:
        rows.extend(list(row) for row in raw_rows(m))
    return DomainMatrix(rows, (len(rows), width), QQ)


def matmul(left: DomainMatrix, right: DomainMatrix) -> DomainMatrix:
    if left.shape[1] != right.shape[0]:
        raise ValueError(f"cannot multiply {left.shape} by {right.shape}")
    if left.shape[0] == 0 or right.shape[1] == 0 or left.shape[1] == 0:
        return zeros(left.shape[0], right.shape[1])
    return left * right


def linear_combination(coefficients: Sequence, matrices: Sequence[List[List]], shape) -> DomainMatrix:
    """
    Sum of ``coefficients[a] * matrices[a]``.

    The matrices are given as raw QQ row lists so that repeated combinations
    skip conversions.
    """
    height, width = shape
    scalars = [qq(c) for c in coefficients]
    rows = [[QQ(0)] * width for _ in range(height)]
    for scalar, entries in zip(scalars, matrices):
        if not scalar:
            continue
        for i in range(height):
            source = entries[i]
            target = rows[i]
            for j in range(width):
                if source[j]:
                    target[j] += scalar * source[j]
    return DomainMatrix(rows, (height, width), QQ)


def apply(matrix: DomainMatrix, vector: Sequence) -> List[Fraction]:
    """Matrix-vector product returned as Fractions."""
    height, width = matrix.shape
    if len(vector) != width:
        raise ValueError(f"vector of length {len(vector)} does not fit {matrix.shape}")
    entries = [qq(v) for v in vector]
    result = []
    for row in raw_rows(matrix):
        total = QQ(0)
        for a, b in zip(row, entries):
            if a and b:
                total += a * b
        result.append(to_fraction(total))
    return result


def inverse(matrix: DomainMatrix) -> DomainMatrix:
    height, width = matrix.shape
    if height != width:
        raise ValueError(f"cannot invert a {matrix.shape} matrix")
    if height == 0:
        return zeros(0, 0)
    return matrix.inv()


def determinant(matrix: DomainMatrix) -> Fraction:
    height, width = matrix.shape
    if height != width:
        raise ValueError(f"determinant of a {matrix.shape} matrix")
    if height == 0:
        return Fraction(1)
    return to_fraction(matrix.det())


def left_inverse(matrix: DomainMatrix) -> DomainMatrix:
    """
    Left inverse ``(M^T M)^{-1} M^T`` of a matrix with independent columns.

    Raises:
        ValueError: if the columns are dependent
    """
    height, width = matrix.shape
    if width == 0:
        return zeros(0, height)
    if rank(matrix) != width:
        raise ValueError("left inverse needs linearly independent columns")
    transposed = matrix.transpose()
    return matmul(inverse(matmul(transposed, matrix)), transposed)


def subspace_sum(first: DomainMatrix, second: DomainMatrix) -> DomainMatrix:
    return column_basis(hstack(first, second))


def subspace_intersection(first: DomainMatrix, second: DomainMatrix) -> DomainMatrix:
    """Basis of the intersection of two column spaces."""
    if first.shape[1] == 0 or second.shape[1] == 0:
        return zeros(first.shape[0], 0)
    first = column_basis(first)
    second = column_basis(second)
    relations = kernel(hstack(first, -second))
    top = DomainMatrix(raw_rows(relations)[: first.shape[1]], (first.shape[1], relations.shape[1]), QQ)
    return column_basis(matmul(first, top))


def contains(space: DomainMatrix, vectors: DomainMatrix) -> bool:
    """True when every column of ``vectors`` lies in the span of ``space``."""
    if vectors.shape[1] == 0:
        return True
    return rank(hstack(space, vectors)) == rank(space)


def is_zero(matrix: DomainMatrix) -> bool:
    return all(not entry for row in raw_rows(matrix) for entry in row)


def power(matrix: DomainMatrix, exponent: int) -> DomainMatrix:
    height, width = matrix.shape
    if height != width:
        raise ValueError("power of a non-square matrix")
    result = identity(height)
    for _ in range(exponent):
        result = matmul(result, matrix)
    return result


# Arithmetic modulo a prime, for fast screening of many samples. Entries
# stay below 2**28 so products and short dot products fit in int64.

PRIME = 268435399
_SAFE_INNER = 127


def to_modular(value) -> int:
    """Residue of a rational number; its denominator must be invertible."""
    if QQ.of_type(value):
        value = to_fraction(value)
    value = Fraction(value)
    denominator = value.denominator % PRIME
    if denominator == 0:
        raise ZeroDivisionError(f"{value} has no residue modulo {PRIME}")
    return (value.numerator % PRIME) * pow(denominator, PRIME - 2, PRIME) % PRIME


def modular_array(matrix: DomainMatrix) -> np.ndarray:
    height, width = matrix.shape
    array = np.zeros((height, width), dtype=np.int64)
    for i, row in enumerate(raw_rows(matrix)):
        for j, entry in enumerate(row):
            if entry:
                array[i, j] = to_modular(entry)
    return array


def mod_matmul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    if left.shape[1] != right.shape[0]:
        raise ValueError(f"cannot multiply {left.shape} by {right.shape}")
    if left.shape[1] > _SAFE_INNER:
        product = left.astype(object) @ right.astype(object)
        return (product % PRIME).astype(np.int64)
    return (left @ right) % PRIME


def mod_rref(array: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Reduced row echelon form modulo ``PRIME`` and its pivot columns."""
    reduced = array.copy() % PRIME
    height, width = reduced.shape
    pivots = []
    row = 0
    for col in range(width):
        if row == height:
            break
        candidates = np.nonzero(reduced[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            reduced[[row, pivot]] = reduced[[pivot, row]]
        inverse = pow(int(reduced[row, col]), PRIME - 2, PRIME)
        reduced[row] = (reduced[row] * inverse) % PRIME
        factors = reduced[:, col].copy()
        factors[row] = 0
        reduced = (reduced - np.outer(factors, reduced[row]) % PRIME) % PRIME
        pivots.append(col)
        row += 1
    return reduced, tuple(pivots)


def mod_rank(array: np.ndarray) -> int:
    if 0 in array.shape:
        return 0
    return len(mod_rref(array)[1])


def mod_kernel(array: np.ndarray) -> np.ndarray:
    """Null space basis modulo ``PRIME``, one column per free variable."""
    height, width = array.shape
    if height == 0:
        return np.eye(width, dtype=np.int64)
    reduced, pivots = mod_rref(array)
    free = [c for c in range(width) if c not in pivots]
    basis = np.zeros((width, len(free)), dtype=np.int64)
    for position, f in enumerate(free):
        basis[f, position] = 1
        for row, pivot in enumerate(pivots):
            basis[pivot, position] = (-reduced[row, f]) % PRIME
    return basis


def mod_column_basis(array: np.ndarray) -> np.ndarray:
    if 0 in array.shape:
        return array[:, :0]
    _, pivots = mod_rref(array)
    return array[:, list(pivots)]
