"""
Tests for the exterior algebra: products, contraction, parsing
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilharmonic.exterior import (
    Form,
    MixedForm,
    Multivector,
    basis_indices,
    contract,
    grade_project,
    merge_sign,
    operator_matrix,
    parse_element,
    parse_form,
    wedge,
    wedge_all,
)
from nilharmonic.liespec import differential, parse_salamon

N = 6
coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def forms(draw, grade=None, n=N):
    k = draw(st.integers(0, n)) if grade is None else grade
    values = draw(st.lists(coefficients, min_size=len(basis_indices(n, k)), max_size=len(basis_indices(n, k))))
    return Form.from_vector(n, k, values)


@st.composite
def multivectors(draw, grade, n=N):
    size = len(basis_indices(n, grade))
    return Multivector.from_vector(n, grade, draw(st.lists(coefficients, min_size=size, max_size=size)))


def pairing(form, vector):
    """Coordinate pairing of a k-form with a k-vector."""
    return sum((form.coefficient(index) * value for index, value in vector.terms()), Fraction(0))


def test_basis_wedge_signs():
    a1, a2, a3 = (Form.basis(3, (i,)) for i in (1, 2, 3))
    assert wedge(a1, a2) == Form.basis(3, (1, 2))
    assert wedge(a2, a1) == -Form.basis(3, (1, 2))
    assert wedge(wedge(a3, a1), a2) == Form.basis(3, (1, 2, 3))
    assert wedge(a1, a1).is_zero()
    assert merge_sign((2, 3), (1,)) == (1, (1, 2, 3))
    assert merge_sign((1, 2), (2,)) == (0, None)


def test_wedge_beyond_top_degree_is_zero():
    top = Form.basis(3, (1, 2, 3))
    result = wedge(top, Form.basis(3, (1,)))
    assert result.is_zero() and result.grade == 4


def test_contraction_signs():
    a12 = Form.basis(2, (1, 2))
    assert contract(Multivector.basis(2, (1,)), a12) == Form.basis(2, (2,))
    assert contract(Multivector.basis(2, (2,)), a12) == -Form.basis(2, (1,))
    # i(e1 ^ e2) = i(e2) i(e1)
    assert contract(Multivector.basis(2, (1, 2)), a12) == Form.scalar(2, 1)
    assert contract(Multivector.basis(2, (1, 2)), Form.basis(2, (1,))).is_zero()


def test_contraction_type_checks():
    with pytest.raises(TypeError):
        contract(Form.basis(2, (1,)), Form.basis(2, (1, 2)))
    with pytest.raises(TypeError):
        wedge(Form.basis(2, (1,)), Multivector.basis(2, (2,)))


def test_render_and_parse():
    form = Form(6, 3, {(1, 3, 6): 1, (1, 4, 6): 1})
    assert form.render() == "a136 + a146"
    assert parse_form("a136 + a146", 6) == form
    half = Multivector(2, 2, {(1, 2): Fraction(-1, 2)})
    assert half.render() == "-1/2*e12"
    assert parse_element("-1/2*e12", 2) == half
    assert Form.zero(4, 2).render() == "0"
    assert parse_form("2*a12 - a34 + 1/3*a12", 4).coefficient((1, 2)) == Fraction(7, 3)


@pytest.mark.parametrize("text", ["a12 + a3", "a21", "a12 + e12", "x12", "", "0"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_element(text, 4)


def test_invalid_indices():
    with pytest.raises(ValueError):
        Form(3, 2, {(2, 1): 1})
    with pytest.raises(ValueError):
        Form(3, 1, {(4,): 1})
    with pytest.raises(ValueError):
        Form.from_vector(3, 1, [1, 2])


def test_mixed_forms():
    a = Form.basis(4, (1,))
    b = Form.basis(4, (2, 3))
    mixed = MixedForm(4, [a, b, Form.zero(4, 3)])
    assert mixed.grades == [1, 2]
    assert grade_project(mixed, 2) == b
    assert grade_project(mixed, 0).is_zero()
    assert (mixed - mixed).is_zero()
    assert mixed.map(lambda f: f * 2) == mixed * 2
    with pytest.raises(ValueError):
        grade_project(mixed, 5)


def test_wedge_all_and_operator_matrix():
    omega = Form(4, 2, {(1, 2): 1, (3, 4): 1})
    assert wedge_all([omega, omega], 4) == Form.basis(4, (1, 2, 3, 4), 2)
    assert wedge_all([], 4) == Form.scalar(4, 1)
    matrix = operator_matrix(lambda f: wedge(omega, f), 4, 1, 3)
    assert matrix.shape == (4, 4)


@settings(max_examples=40, deadline=None)
@given(forms(), forms())
def test_graded_commutativity(alpha, beta):
    sign = -1 if (alpha.grade * beta.grade) % 2 else 1
    assert wedge(alpha, beta) == wedge(beta, alpha) * sign


@settings(max_examples=30, deadline=None)
@given(forms(), forms(), forms())
def test_associativity(alpha, beta, gamma):
    assert wedge(wedge(alpha, beta), gamma) == wedge(alpha, wedge(beta, gamma))


@settings(max_examples=30, deadline=None)
@given(forms(), forms())
def test_differential_is_antiderivation(alpha, beta):
    d = differential(parse_salamon("(0,0,0,12,14,15+23+24)"))
    sign = -1 if alpha.grade % 2 else 1
    left = d.apply(wedge(alpha, beta))
    right = wedge(d.apply(alpha), beta) + wedge(alpha, d.apply(beta)) * sign
    assert left == right


@settings(max_examples=30, deadline=None)
@given(st.integers(1, N), forms(), forms())
def test_contraction_is_antiderivation(i, alpha, beta):
    e = Multivector.basis(N, (i,))
    sign = -1 if alpha.grade % 2 else 1
    left = contract(e, wedge(alpha, beta))
    right = wedge(contract(e, alpha), beta) + wedge(alpha, contract(e, beta)) * sign
    assert left == right


@settings(max_examples=30, deadline=None)
@given(st.integers(1, N), st.integers(1, N), st.data())
def test_contraction_is_adjoint_to_wedge(i, k, data):
    alpha = data.draw(forms(grade=k))
    y = data.draw(multivectors(grade=k - 1))
    v = Multivector.basis(N, (i,))
    assert pairing(contract(v, alpha), y) == pairing(alpha, wedge(v, y))


def test_adjointness_on_basis_elements():
    a12 = Form.basis(3, (1, 2))
    assert pairing(contract(Multivector.basis(3, (1,)), a12), Multivector.basis(3, (2,))) == 1
    assert pairing(a12, wedge(Multivector.basis(3, (2,)), Multivector.basis(3, (1,)))) == -1
    assert pairing(contract(Multivector.basis(3, (2,)), a12), Multivector.basis(3, (1,))) == -1
