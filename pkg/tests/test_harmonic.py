"""
Tests for symplectically harmonic cohomology
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from fractions import Fraction

import numpy as np
import pytest

from nilharmonic import linalg
from nilharmonic.cohomology import cohomology
from nilharmonic.liespec import differential, parse_salamon
from nilharmonic.symplectic import SymplecticForm, random_form, symplectic_cone, symplectic_existence
from nilharmonic.harmonic import (
    chain_level_h,
    class_invariance,
    h3_via_kernel,
    harmonic_engine,
    harmonic_subspaces,
    lemma_ker_terms,
    primitive,
    primitive_inclusion,
    structural_checks,
    theorem_iso_check,
    yamada_check,
    yamada_from_numbers,
)

E_NONZERO = (1, 0, 0, 1, 2)
E_ZERO = (0, 0, 0, 1, 0)


def witness_form(text):
    spec = parse_salamon(text)
    return spec, symplectic_cone(spec).symplectic_form(symplectic_existence(spec).witness)


@pytest.mark.parametrize("values,h,kernel", [
    (E_NONZERO, (1, 3, 5, 5, 4, 2, 1), 3),
    (E_ZERO, (1, 3, 5, 4, 3, 0, 1), 4),
])
def test_worked_example(worked_example, values, h, kernel):
    spec, build = worked_example
    space = cohomology(spec)
    form = SymplecticForm(spec, build(*values))
    profile = harmonic_subspaces(space, form)
    assert profile.h == h
    engine = harmonic_engine(spec)
    assert engine.kernel_dimension(profile.omega_class, 3) == kernel
    assert primitive(space, form, 0).dimension == kernel
    assert h3_via_kernel(space, form) == h[3]


def test_lemma_ker_terms(worked_example):
    spec, build = worked_example
    space = cohomology(spec)
    for values in (E_NONZERO, E_ZERO):
        terms = lemma_ker_terms(space, SymplecticForm(spec, build(*values)))
        assert terms["h_middle"] == terms["h_middle_via_kernel"]
        assert terms["primitive_meets_image"] == terms["image_dimension"] - terms["square_image_dimension"]


def test_chain_level_agrees(worked_example):
    spec, build = worked_example
    for values in (E_NONZERO, E_ZERO):
        form = SymplecticForm(spec, build(*values))
        expected = harmonic_subspaces(cohomology(spec), form).h
        assert tuple(chain_level_h(spec, form, k) for k in range(7)) == expected
        assert theorem_iso_check(spec, form)
        assert primitive_inclusion(cohomology(spec), form)


def test_torus_has_hard_lefschetz():
    spec, form = witness_form("(0,0,0,0,0,0)")
    space = cohomology(spec)
    assert harmonic_subspaces(space, form).h == space.betti_numbers
    assert primitive(space, form, 0).dimension == 14


def test_class_invariance(worked_example):
    spec, build = worked_example
    cone = symplectic_cone(spec)
    space = cohomology(spec)
    rng = np.random.default_rng(9)
    betas = [random_form(6, 1, rng) for _ in range(3)]
    for values in (E_NONZERO, E_ZERO):
        coordinates = cone.coordinates(build(*values))
        assert class_invariance(spec, coordinates, betas, chain_level=True)
        scaled = [Fraction(-3, 7) * c for c in coordinates]
        assert class_invariance(spec, scaled, betas, chain_level=True)
    omega = build(*E_NONZERO)
    shifted = SymplecticForm(spec, omega + differential(spec).apply(betas[0]))
    assert harmonic_subspaces(space, shifted).h == (1, 3, 5, 5, 4, 2, 1)
    assert tuple(chain_level_h(spec, shifted, k) for k in range(7)) == (1, 3, 5, 5, 4, 2, 1)


def test_scaling_keeps_harmonic_subspaces(worked_example):
    spec, build = worked_example
    space = cohomology(spec)
    engine = harmonic_engine(spec)
    c = Fraction(-3, 7)
    for values in (E_NONZERO, E_ZERO):
        omega_class = space.reduce(build(*values))
        original = engine.subspaces(omega_class)
        rescaled = engine.subspaces([c * x for x in omega_class])
        for k in range(7):
            assert original[k].shape == rescaled[k].shape
            assert linalg.contains(original[k], rescaled[k])
            assert linalg.contains(rescaled[k], original[k])
        form = SymplecticForm(spec, build(*values) * c)
        assert harmonic_subspaces(space, form).h == engine.h_numbers(omega_class)


def test_modular_numbers_agree(worked_example):
    spec, build = worked_example
    engine = harmonic_engine(spec)
    space = cohomology(spec)
    for values in (E_NONZERO, E_ZERO, (3, -2, 1, 1, 5)):
        omega_class = space.reduce(build(*values))
        h, kernel = engine.modular_numbers(omega_class)
        assert h == engine.h_numbers(omega_class)
        assert kernel == engine.kernel_dimension(omega_class, 3)


def test_structural_checks(worked_example):
    spec, _ = worked_example
    space = cohomology(spec)
    assert all(structural_checks(space, (1, 3, 5, 5, 4, 2, 1), 3).values())
    broken = structural_checks(space, (1, 3, 4, 5, 4, 2, 1), 3)
    assert not broken["low_degrees"]
    assert not structural_checks(space, (1, 3, 5, 5, 4, 2, 1), 2)["kernel_identity"]


def test_yamada_on_step_two_algebras():
    for text, h5 in (("(0,0,0,0,0,12)", 4), ("(0,0,0,12,13,23)", 0)):
        spec, form = witness_form(text)
        report = yamada_check(spec, form)
        assert report.step_length == 2
        assert report.h_top_minus_one == h5
        assert report.inequality and report.equality and report.corollary
        assert report.passed


def test_yamada_on_longer_steps(worked_example):
    spec, build = worked_example
    report = yamada_check(spec, SymplecticForm(spec, build(*E_ZERO)))
    assert report.step_length == 4
    assert report.inequality is True
    assert report.equality is None and report.corollary is None


def test_yamada_ignores_abelian_algebras():
    spec = parse_salamon("(0,0,0,0,0,0)")
    report = yamada_from_numbers(spec, (1, 6, 15, 20, 15, 6, 1))
    assert not report.applies
    assert report.passed


def test_profile_as_dict(worked_example):
    spec, build = worked_example
    profile = harmonic_subspaces(cohomology(spec), SymplecticForm(spec, build(*E_NONZERO)))
    data = profile.as_dict(include_subspaces=True)
    assert data["h"] == [1, 3, 5, 5, 4, 2, 1]
    assert len(data["subspaces"]["3"]) == 5
