"""Bundled reference tables: integrity, shape, and domains."""

from fractions import Fraction

import pytest

from nrlatency import goldens
from nrlatency.goldens import (
    CHECKSUMS,
    GoldenDataError,
    load_cp_goldens,
    load_up_goldens,
)


def test_up_goldens_shape():
    cells = load_up_goldens()
    assert len(cells) == 252
    by_table = {}
    for cell in cells:
        by_table.setdefault(cell.table, []).append(cell)
    assert len(by_table["fdd-up"]) == 144
    assert len(by_table["tdd-up"]) == 108
    assert {c.flow for c in cells} == {"dl", "ul_cg", "ul_sr"}
    assert {c.scs_khz for c in cells} == {15, 30, 120}
    assert {c.harq_retx for c in cells} == {0, 1, 2, 3}
    # TDD tables stop at the 4 os TTI
    assert {c.tti_os for c in by_table["fdd-up"]} == {14, 7, 4, 2}
    assert {c.tti_os for c in by_table["tdd-up"]} == {14, 7, 4}


def test_up_golden_keys_are_unique():
    cells = load_up_goldens()
    keys = {(c.flow, c.duplex, c.scs_khz, c.tti_os, c.harq_retx) for c in cells}
    assert len(keys) == len(cells)


def test_cp_goldens_shape():
    cells = load_cp_goldens()
    assert len(cells) == 27
    assert {c.table for c in cells} == {"cp-fdd", "cp-tdd-uldl", "cp-tdd-uldldldl"}
    assert {c.duplex for c in cells} == {"fdd", "tdd-uldl", "tdd-uldldldl"}
    assert {c.tti_os for c in cells} == {14, 7, 4}


def test_published_strings_parse_exactly():
    for cell in load_up_goldens():
        assert cell.published_ms == Fraction(cell.published)
        assert cell.published_ms > 0
    sample = next(c for c in load_up_goldens() if c.published == "3.2")
    assert sample.published_ms == Fraction(16, 5)


def test_checksum_mismatch_is_fatal(monkeypatch):
    monkeypatch.setitem(CHECKSUMS, "up_fdd.csv", "0" * 64)
    with pytest.raises(GoldenDataError):
        load_up_goldens()


def test_every_bundled_file_is_pinned():
    assert set(CHECKSUMS) == {"up_fdd.csv", "up_tdd.csv", "cp_achievable.csv"}
    for name in CHECKSUMS:
        goldens._read_data_file(name)  # raises on drift
