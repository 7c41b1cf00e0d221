"""
Tests for exact and modular linear algebra helpers
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from fractions import Fraction

import numpy as np
import pytest

from nilharmonic import linalg


def test_rank_and_kernel():
    m = linalg.qmatrix([[1, 2, 3], [2, 4, 6]])
    assert linalg.rank(m) == 1
    k = linalg.kernel(m)
    assert k.shape == (3, 2)
    assert linalg.is_zero(linalg.matmul(m, k))
    # free-column normalization
    assert linalg.columns(k) == [[-2, 1, 0], [-3, 0, 1]]


def test_zero_shapes():
    empty = linalg.zeros(0, 3)
    assert linalg.rank(empty) == 0
    assert linalg.kernel(empty).shape == (3, 3)
    assert linalg.kernel(linalg.zeros(4, 0)).shape == (0, 0)
    assert linalg.matmul(linalg.zeros(2, 0), linalg.zeros(0, 5)).shape == (2, 5)
    assert linalg.determinant(linalg.zeros(0, 0)) == 1
    assert linalg.left_inverse(linalg.zeros(3, 0)).shape == (0, 3)


def test_left_inverse_gives_coordinates():
    basis = linalg.from_columns([[1, 0, 1], [0, 1, 1]], 3)
    inverse = linalg.left_inverse(basis)
    assert linalg.apply(inverse, [2, 3, 5]) == [2, 3]
    with pytest.raises(ValueError):
        linalg.left_inverse(linalg.from_columns([[1, 1], [2, 2]], 2))


def test_subspace_operations():
    xy = linalg.from_columns([[1, 0, 0], [0, 1, 0]], 3)
    yz = linalg.from_columns([[0, 1, 0], [0, 0, 1]], 3)
    meet = linalg.subspace_intersection(xy, yz)
    assert meet.shape[1] == 1
    assert linalg.contains(meet, linalg.from_columns([[0, 5, 0]], 3))
    assert linalg.subspace_sum(xy, yz).shape[1] == 3
    assert not linalg.contains(xy, linalg.from_columns([[0, 0, 1]], 3))


def test_linear_combination_and_power():
    a = linalg.raw_rows(linalg.qmatrix([[0, 1], [0, 0]]))
    b = linalg.raw_rows(linalg.identity(2))
    combined = linalg.linear_combination([2, Fraction(1, 2)], [a, b], (2, 2))
    assert linalg.to_rows(combined) == [[Fraction(1, 2), 2], [0, Fraction(1, 2)]]
    nilpotent = linalg.qmatrix([[0, 1], [0, 0]])
    assert linalg.is_zero(linalg.power(nilpotent, 2))


def test_modular_rank_matches_exact():
    rng = np.random.default_rng(3)
    for _ in range(10):
        rows = rng.integers(-3, 4, size=(4, 6))
        rows[3] = rows[0] + 2 * rows[1]
        exact = linalg.qmatrix(rows.tolist())
        assert linalg.mod_rank(linalg.modular_array(exact)) == linalg.rank(exact)


def test_modular_kernel():
    array = linalg.modular_array(linalg.qmatrix([[1, 2, 3], [0, 1, 1]]))
    k = linalg.mod_kernel(array)
    assert k.shape == (3, 1)
    assert not (linalg.mod_matmul(array, k) % linalg.PRIME).any()


def test_to_modular_of_fraction():
    half = linalg.to_modular(Fraction(1, 2))
    assert half * 2 % linalg.PRIME == 1
    assert linalg.to_modular(-1) == linalg.PRIME - 1
