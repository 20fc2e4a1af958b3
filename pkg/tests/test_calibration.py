"""Residual reporting and the knob back-fit."""

from pathlib import Path

from nrlatency.calibration import (
    computed_up_ms,
    fit_knobs,
    render_calibration_md,
    render_residuals_csv,
    residual_report,
    write_reports,
)
from nrlatency.goldens import load_up_goldens
from nrlatency.profiles import DEFAULT_KNOBS, DEFAULT_PROFILE
from nrlatency.up import scenario, up_latency

REPORTS_DIR = Path(__file__).resolve().parents[1] / "reports"


def test_computed_matches_the_model():
    cell = load_up_goldens()[0]
    expected = up_latency(
        scenario(cell.flow, cell.duplex, cell.scs_khz, cell.tti_os, cell.harq_retx)
    ).total_ms
    assert computed_up_ms(cell, DEFAULT_PROFILE, DEFAULT_KNOBS) == expected


def test_default_knob_coverage_is_frozen():
    report = residual_report()
    assert report.total == 252
    assert report.matched == 220
    assert report.cp_matched == 27
    assert report.coverage * 4 >= 3
    assert report.by_table() == {"fdd-up": (120, 144), "tdd-up": (100, 108)}


def test_every_mismatch_carries_a_nonzero_residual():
    report = residual_report()
    mismatches = report.mismatches()
    assert len(mismatches) == report.total - report.matched
    for row in mismatches:
        assert row.residual_ms != 0
        assert not row.matched


def test_fit_reproduces_the_shipped_defaults():
    fit = fit_knobs()
    assert fit.knobs == DEFAULT_KNOBS
    names = [f.knob for f in fit.fitted]
    assert len(names) == len(set(names))
    for fitted in fit.fitted:
        assert 0 < fitted.matches <= fitted.cells
        assert fitted.candidates >= fitted.tied >= 1


def test_renderers_are_deterministic():
    report = residual_report()
    assert render_residuals_csv(report) == render_residuals_csv(report)
    fit = fit_knobs()
    once = render_calibration_md(report, fit)
    again = render_calibration_md(residual_report(), fit_knobs())
    assert once == again


def test_committed_reports_are_current(tmp_path):
    fit = fit_knobs()
    write_reports(tmp_path, DEFAULT_PROFILE, fit.knobs, fit)
    for name in ("residuals.csv", "calibration.md"):
        fresh = (tmp_path / name).read_text(encoding="utf-8")
        committed = (REPORTS_DIR / name).read_text(encoding="utf-8")
        assert fresh == committed, f"reports/{name} is stale, regenerate it"
