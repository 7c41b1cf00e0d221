"""
Tests for budgets and environment settings
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest

from nilharmonic.config import Budget, load_settings


def test_parse_budget():
    budget = Budget.parse("2,5,10000")
    assert (budget.grid_bound, budget.support, budget.samples) == (2, 5, 10000)
    assert budget == Budget.default()
    assert Budget.parse(" 1, 2 ,30 ").as_text() == "1,2,30"


def test_budget_shorthands():
    assert Budget.parse("default") == Budget.default()
    assert Budget.parse("zero").is_zero
    assert Budget.parse("none") == Budget.zero()
    assert not Budget.default().is_zero
    # a grid without support evaluates nothing
    assert Budget(2, 0, 0).is_zero


@pytest.mark.parametrize("text", ["2,5", "a,b,c", "1,2,3,4", "", "-1,2,3"])
def test_parse_budget_rejects(text):
    with pytest.raises(ValueError):
        Budget.parse(text)


def test_covers():
    assert Budget.default().covers(Budget(1, 2, 100))
    assert not Budget(1, 5, 10000).covers(Budget.default())
    assert Budget.default().covers(Budget.default())


def test_load_settings_defaults():
    settings = load_settings({})
    assert settings.seed == 0
    assert settings.budget == Budget.default()
    assert settings.jobs >= 1
    assert settings.verbose is False


def test_load_settings_from_environment():
    settings = load_settings({
        "NILHARMONIC_SEED": "7",
        "NILHARMONIC_BUDGET": "1,3,200",
        "NILHARMONIC_JOBS": "2",
        "NILHARMONIC_VERBOSE": "yes",
    })
    assert settings.seed == 7
    assert settings.budget.as_text() == "1,3,200"
    assert settings.jobs == 2
    assert settings.verbose is True


@pytest.mark.parametrize("name,value", [
    ("NILHARMONIC_SEED", "-3"),
    ("NILHARMONIC_SEED", "seven"),
    ("NILHARMONIC_JOBS", "0"),
    ("NILHARMONIC_BUDGET", "1,2"),
])
def test_load_settings_names_bad_variable(name, value):
    with pytest.raises(ValueError, match=name):
        load_settings({name: value})
