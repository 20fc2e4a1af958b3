"""Requirement verdicts and the knob back-fit, end to end.

    python3 demos/03_compliance_and_calibration.py
"""

from nrlatency import (
    default_verdicts,
    fit_knobs,
    render_verdicts_md,
    residual_report,
)
from nrlatency.profiles import DEFAULT_KNOBS

# The four headline verdicts: best and worst qualifying configuration
# per requirement, met = at least one configuration qualifies.
print(render_verdicts_md(default_verdicts()))
print()

# How well the shipped assumption knobs reproduce the bundled reference
# tables, cell by cell.
report = residual_report()
print(f"user-plane cells reproduced: {report.matched}/{report.total} "
      f"({float(report.coverage) * 100:.1f}%)")
for table, (matched, total) in sorted(report.by_table().items()):
    print(f"  {table}: {matched}/{total}")
print(f"control-plane cells: {report.cp_matched}/{len(report.cp_rows)}")
print()

print("largest residuals among unmatched cells:")
worst = sorted(report.mismatches(), key=lambda r: abs(r.residual_ms))[-5:]
for row in reversed(worst):
    c = row.cell
    print(f"  {c.flow} {c.duplex} {c.scs_khz} kHz {c.tti_os} os "
          f"retx={c.harq_retx}: published {c.published}, "
          f"computed {float(row.computed_ms):.3f} "
          f"(residual {float(row.residual_ms):+.3f} ms)")
print()

# Refit every back-fit knob from scratch and confirm the shipped
# defaults are what the sweep itself would choose.
fit = fit_knobs()
print(f"refit sweeps run: {len(fit.fitted)}")
print(f"refit reproduces the shipped defaults: {fit.knobs == DEFAULT_KNOBS}")
