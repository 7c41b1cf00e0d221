"""
Tests for Chevalley-Eilenberg cohomology and cup products
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from fractions import Fraction
from math import comb

import pytest

from nilharmonic import linalg
from nilharmonic.cohomology import CupTable, NotClosedError, cohomology, cup_matrix, euler_check
from nilharmonic.exterior import Form, parse_form, wedge
from nilharmonic.liespec import differential, parse_salamon

CHOSEN_H3 = ["a126", "a135", "a136 + a146", "a136 + a235", "a156 - a236 - a246", "a156 + a345 - a246"]
CHOSEN_H5 = ["a12456", "a13456", "a23456"]


def test_worked_example_betti_numbers(worked_example):
    spec, _ = worked_example
    assert cohomology(spec).betti_numbers == (1, 3, 5, 6, 5, 3, 1)
    assert euler_check(spec)


def test_torus_betti_numbers():
    space = cohomology(parse_salamon("(0,0,0,0,0,0)"))
    assert space.betti_numbers == tuple(comb(6, k) for k in range(7))


@pytest.mark.parametrize("text,b1,b2", [
    ("(0,0,12,13,14+23,34+52)", 2, 2),
    ("(0,0,0,0,12,15)", 4, 7),
    ("(0,0,0,12,13,23)", 3, 8),
    ("(0,0,0,0,0,12)", 5, 11),
])
def test_betti_numbers_and_euler_relation(text, b1, b2):
    space = cohomology(parse_salamon(text))
    assert (space.betti(1), space.betti(2)) == (b1, b2)
    assert space.betti(3) == 2 * (b2 - b1 + 1)
    assert euler_check(space.spec)


def test_chosen_classes_are_a_basis(worked_example):
    spec, _ = worked_example
    space = cohomology(spec)
    for texts, k in ((CHOSEN_H3, 3), (CHOSEN_H5, 5)):
        classes = [space.reduce(parse_form(t, 6)) for t in texts]
        assert linalg.rank(linalg.from_columns(classes, space.betti(k))) == space.betti(k)


def test_cocycle_coordinates_reconstruct(worked_example):
    spec, build = worked_example
    space = cohomology(spec)
    omega = build(1, 2, -1, 1, 3)
    coordinates = space.cocycle_coordinates(omega)
    total = Form.zero(6, 2)
    for value, basis_form in zip(coordinates, space.cocycle_basis(2)):
        total = total + basis_form * value
    assert total == omega
    assert len(coordinates) == space.betti(2) + len(space.exact_basis(2))


def test_exact_forms_reduce_to_zero(worked_example):
    spec, _ = worked_example
    space = cohomology(spec)
    d = differential(spec)
    exact = d.apply(parse_form("a16 + 2*a34 - a25", 6))
    assert space.reduce(exact) == [0] * space.betti(3)
    closed = parse_form("a126", 6)
    again = space.class_form(3, space.reduce(closed))
    assert space.reduce(closed - again) == [0] * space.betti(3)


def test_reduce_rejects_non_closed(worked_example):
    spec, _ = worked_example
    space = cohomology(spec)
    with pytest.raises(NotClosedError):
        space.reduce(Form.basis(6, (6,)))
    with pytest.raises(ValueError):
        space.class_form(2, [1, 2])


@pytest.mark.parametrize("values", [(1, 0, 0, 1, 2), (2, 3, 5, 1, 1), (1, -4, 2, 3, -1), (0, 7, -2, 1, 0)])
def test_worked_example_lefschetz_matrix(worked_example, values):
    spec, build = worked_example
    space = cohomology(spec)
    A, B, C, D, E = values
    omega = build(A, B, C, D, E)
    h5 = linalg.from_columns([space.reduce(parse_form(t, 6)) for t in CHOSEN_H5], 3)
    to_chosen = linalg.inverse(h5)
    rows = [linalg.apply(to_chosen, space.reduce(wedge(parse_form(t, 6), omega))) for t in CHOSEN_H3]
    assert rows == [
        [-E, 0, 0],
        [0, 0, 0],
        [-D, -E, 0],
        [0, -E, 0],
        [-B, -D, E],
        [-B, -2 * D, -E],
    ]


def test_cup_matrix_matches_table(worked_example):
    spec, build = worked_example
    space = cohomology(spec)
    omega = build(0, 1, 0, 1, Fraction(1, 2))
    table = CupTable(space)
    direct = cup_matrix(space, omega, 3)
    combined = table.lefschetz(space.reduce(omega), 3)
    assert linalg.to_rows(direct.matrix) == linalg.to_rows(combined)
    assert (direct.source, direct.target) == (3, 5)
    squared = cup_matrix(space, omega, 1, power=2)
    assert linalg.to_rows(squared.matrix) == linalg.to_rows(table.power(space.reduce(omega), 1, 2))


def test_cup_matrix_rejects_bad_input(worked_example):
    spec, _ = worked_example
    space = cohomology(spec)
    with pytest.raises(NotClosedError):
        cup_matrix(space, Form.basis(6, (1, 6)), 2)
    with pytest.raises(ValueError):
        cup_matrix(space, Form.basis(6, (1,)), 2)


def test_cup_matrix_depends_only_on_the_class(worked_example):
    spec, build = worked_example
    space = cohomology(spec)
    d = differential(spec)
    omega = build(1, 2, -1, 1, 3)
    exact = d.apply(parse_form("a4 - 2*a6 + 3*a5", 6))
    for k in range(5):
        original = cup_matrix(space, omega, k)
        shifted = cup_matrix(space, omega + exact, k)
        assert linalg.to_rows(shifted.matrix) == linalg.to_rows(original.matrix)


def test_cup_with_the_zero_class(worked_example):
    spec, _ = worked_example
    space = cohomology(spec)
    exact = differential(spec).apply(parse_form("a5 + a6", 6))
    assert not exact.is_zero()
    for k in range(5):
        matrix = cup_matrix(space, exact, k).matrix
        assert linalg.is_zero(matrix)
        assert matrix.shape == (space.betti(k + 2), space.betti(k))
