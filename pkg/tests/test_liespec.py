"""
Tests for Salamon parsing, the Chevalley-Eilenberg differential and the
lower central series
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from fractions import Fraction

import pytest

from nilharmonic.exterior import Form
from nilharmonic.liespec import (
    LieAlgebraSpec,
    SalamonParseError,
    bracket_vector,
    differential,
    lower_central_series,
    parse_salamon,
)


def test_parse_worked_expansion():
    spec = parse_salamon("(0,0,12,13,14+23,34+52)")
    assert spec.n == 6
    # 52 stands for -a25
    assert spec.d_generator(6) == Form(6, 2, {(3, 4): 1, (2, 5): -1})
    assert spec.d_generator(5) == Form(6, 2, {(1, 4): 1, (2, 3): 1})
    assert spec.d_generator(1).is_zero()


def test_parse_ignores_whitespace_and_keeps_name():
    spec = parse_salamon(" ( 0, 0, 12 ) ")
    assert spec == parse_salamon("(0,0,12)")
    assert str(spec) == "( 0, 0, 12 )"


def test_render_round_trip():
    for text in ["(0,0,12,13,23,14-25)", "(0,0,0,12,13+42,14+23)", "(0,0,0,0,0,0)"]:
        spec = parse_salamon(text)
        assert parse_salamon(spec.render()) == spec
    assert parse_salamon("(0,0,21)").render() == "(0,0,21)"


@pytest.mark.parametrize("text,token", [
    ("0,0,12", "0,0,12"),
    ("(0,0,13)", "13"),
    ("(0,0,17)", "17"),
    ("(0,0,11)", "11"),
    ("(0,0,1x)", "1x"),
    ("(0,0,12+)", "12+"),
])
def test_parse_errors_carry_token(text, token):
    with pytest.raises(SalamonParseError) as info:
        parse_salamon(text)
    assert info.value.token == token


def test_parse_rejects_jacobi_failure():
    # d(d a5) = d(a34) = -a3 ^ a12
    with pytest.raises(SalamonParseError) as info:
        parse_salamon("(0,0,0,12,34)")
    assert info.value.token == "34"


def test_parse_rejects_large_dimension():
    with pytest.raises(SalamonParseError):
        parse_salamon("(" + ",".join(["0"] * 10) + ")")


def test_from_constants_validation():
    spec = LieAlgebraSpec.from_constants(3, {(1, 2, 3): 1})
    assert spec == parse_salamon("(0,0,12)")
    with pytest.raises(ValueError):
        LieAlgebraSpec.from_constants(3, {(2, 1, 3): 1})
    with pytest.raises(ValueError):
        LieAlgebraSpec.from_constants(0, {})


def test_differential_squares_to_zero():
    for text in ["(0,0,12,13,14+23,34+52)", "(0,0,0,12,14,15+23+24)", "(0,0,12,13,23,14-25)"]:
        assert differential(parse_salamon(text)).is_square_zero()


def test_differential_of_generator():
    spec = parse_salamon("(0,0,0,12,14,15+23+24)")
    d = differential(spec)
    assert d.apply(Form.basis(6, (6,))) == Form(6, 2, {(1, 5): 1, (2, 3): 1, (2, 4): 1})
    # d(a16) = -a1 ^ d(a6)
    assert d.apply(Form.basis(6, (1, 6))) == Form(6, 3, {(1, 2, 3): -1, (1, 2, 4): -1})
    assert d.matrix(1).shape == (15, 6)


def test_bracket_convention():
    spec = parse_salamon("(0,0,12)")
    assert bracket_vector(spec, 1, 2) == [0, 0, -1]
    assert bracket_vector(spec, 2, 1) == [0, 0, 1]
    assert bracket_vector(spec, 1, 3) == [0, 0, 0]


@pytest.mark.parametrize("text,dimensions,step", [
    ("(0,0,0,0,0,0)", (6, 0), 1),
    ("(0,0,0,0,0,12)", (6, 1, 0), 2),
    ("(0,0,0,12,13,23)", (6, 3, 0), 2),
    ("(0,0,12,13,14,15)", (6, 4, 3, 2, 1, 0), 5),
    ("(0,0,0,12,14,15+23+24)", (6, 3, 2, 1, 0), 4),
])
def test_lower_central_series(text, dimensions, step):
    series = lower_central_series(parse_salamon(text))
    assert series.dimensions == dimensions
    assert series.step_length == step
    assert series.derived_dimension == dimensions[1]
