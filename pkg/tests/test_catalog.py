"""
Tests for the six-dimensional catalog and its verification
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest

from nilharmonic.catalog import (
    FAIL,
    INSUFFICIENT,
    NOT_APPLICABLE,
    PASS,
    catalog_invariants,
    load_catalog,
    sweep,
    verify_entry,
)
from nilharmonic.cohomology import cohomology
from nilharmonic.config import Budget
from nilharmonic.liespec import lower_central_series
from nilharmonic.symplectic import moduli_dimension, symplectic_existence

CATALOG = load_catalog()

FLEXIBLE = {
    "(0,0,12,13,14+23,24+15)",
    "(0,0,12,13,23,14-25)",
    "(0,0,0,12,14,15+23+24)",
    "(0,0,0,12,13+14,24)",
    "(0,0,0,12,13,14+23)",
    "(0,0,0,12,13,24)",
    "(0,0,0,12,13,14)",
    "(0,0,0,12,13,23)",
    "(0,0,0,0,12,14+25)",
    "(0,0,0,0,12,13)",
}


class TestTable:
    def test_row_counts(self):
        assert len(CATALOG) == 34
        assert sum(not entry.symplectic for entry in CATALOG) == 8
        assert {entry.structure for entry in CATALOG if entry.expected_flexible} == FLEXIBLE

    def test_invariants(self):
        assert all(catalog_invariants(CATALOG).values())

    def test_torus_row(self):
        torus = CATALOG[-1]
        assert torus.index == 34
        assert torus.structure == "(0,0,0,0,0,0)"
        assert torus.expected_values == {3: (20,), 4: (15,), 5: (6,)}
        assert torus.expected_moduli_dim == 15
        assert torus.direct_sum == "1+1+1+1+1+1"

    def test_multi_valued_cells(self):
        row = CATALOG[10]
        assert row.structure == "(0,0,0,12,14,15+23+24)"
        assert row.expected_values == {3: (4, 5), 4: (3, 4), 5: (0, 2)}

    def test_malformed_rows(self, tmp_path):
        path = tmp_path / "catalog.txt"
        path.write_text("# header\n(0,0,0,0,0,0) | 6 | 15 | 5\n", encoding="utf-8")
        with pytest.raises(ValueError, match="line 2"):
            load_catalog(path)
        path.write_text("(0,0,0,0,0,0) | 6 | 15 | 5 | | x | 15 | 6 | 15 | no\n", encoding="utf-8")
        with pytest.raises(ValueError, match="bad value cell"):
            load_catalog(path)
        path.write_text("(0,0,0,0,0,0) | 6 | 15 | 5 | | 20 | 15 | 6 | 15 | maybe\n", encoding="utf-8")
        with pytest.raises(ValueError, match="yes or no"):
            load_catalog(path)


@pytest.mark.parametrize("entry", CATALOG, ids=lambda entry: f"row{entry.index}")
def test_fast_columns(entry):
    spec = entry.spec()
    space = cohomology(spec)
    assert space.betti(1) == entry.b1
    assert space.betti(2) == entry.b2
    assert 6 - lower_central_series(spec).step_length == entry.six_minus_s
    assert symplectic_existence(spec).admits == entry.symplectic
    if entry.symplectic:
        assert moduli_dimension(spec) == entry.expected_moduli_dim


@pytest.mark.parametrize("entry", CATALOG, ids=lambda entry: f"row{entry.index}")
def test_poincare_duality(entry):
    betti = cohomology(entry.spec()).betti_numbers
    assert betti == tuple(reversed(betti))
    assert betti[0] == betti[6] == 1


def test_zero_budget_symplectic_row():
    report = verify_entry(CATALOG[-1], Budget.zero())
    assert report.status == INSUFFICIENT
    assert report.columns["h3"].status == INSUFFICIENT
    assert report.columns["b3"].status == PASS
    assert report.columns["operators"].status == PASS
    assert report.columns["chain_level"].status == PASS
    assert report.columns["flexible"].status == PASS


def test_zero_budget_non_symplectic_row():
    report = verify_entry(CATALOG[0], Budget.zero())
    assert report.status == PASS
    assert report.columns["operators"].status == NOT_APPLICABLE
    assert report.columns["h3"].computed is None


def test_small_budget_flexible_row_is_not_a_failure():
    report = verify_entry(CATALOG[10], Budget(grid_bound=1, support=1, samples=10))
    assert report.status in (PASS, INSUFFICIENT)
    assert report.columns["h5"].computed[-1] == 2


def test_sweep_subset_table():
    result = sweep(Budget.zero(), entries=CATALOG[:2])
    assert result.invariants == {}
    assert result.counts[FAIL] == 0
    assert result.summary() == "2/2 rows verified"
    table = result.render_table().splitlines()
    assert table[0].startswith("# | Structure")
    assert len(table) == 4


@pytest.mark.slow
def test_full_sweep():
    result = sweep(Budget.default(), jobs=os.cpu_count() or 1)
    assert result.summary() == "34/34 rows verified"
    assert result.passed
