"""Acceptance gates, one test per criterion.

Every test prints exactly one ``criterion N: PASS/FAIL`` line; run with
``pytest -s tests/test_acceptance.py`` to see the lines on a green run.
"""

import random
from fractions import Fraction
from pathlib import Path

from nrlatency.calibration import residual_report
from nrlatency.compliance import default_verdicts
from nrlatency.cp import build_cp_ledger, cp_latency_ms
from nrlatency.frame import preset
from nrlatency.goldens import load_cp_goldens, load_up_goldens
from nrlatency.numerology import TICKS_PER_MS, make_numerology
from nrlatency.oracle import simulate, worst_case
from nrlatency.profiles import DEFAULT_KNOBS
from nrlatency.report import render_up_csv
from nrlatency.rounding import fmt_cp_ms, matches_printed
from nrlatency.up import harq_rtt_ticks, scenario, up_latency, up_table

REPORTS_DIR = Path(__file__).resolve().parents[1] / "reports"


def _verdict(criterion: int, ok: bool, detail: str):
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


# criterion 1: ledger totals, zero tolerance
def test_criterion_1_cp_ledger_totals():
    expected = {
        ("fdd", 15): 9, ("fdd", 30): 9, ("fdd", 120): 14,
        ("tdd-uldl", 15): 14, ("tdd-uldl", 30): 14, ("tdd-uldl", 120): 20,
        ("tdd-uldldldl", 15): 12, ("tdd-uldldldl", 30): 12,
        ("tdd-uldldldl", 120): 26,
    }
    good = 0
    for (duplex, scs), ttis in expected.items():
        ledger = build_cp_ledger(duplex, scs)
        if ledger.total_ttis == ttis and ledger.total_fixed_ms == 6:
            good += 1
    _verdict(1, good == len(expected),
             f"{good}/{len(expected)} ledgers at the expected TTI + 6 ms split")


# criterion 2: all 27 published control-plane cells, exact post-rounding
def test_criterion_2_cp_achievable_tables():
    cells = load_cp_goldens()
    good = sum(
        1 for c in cells
        if matches_printed(cp_latency_ms(c.duplex, c.scs_khz, c.tti_os),
                           c.published)
        and fmt_cp_ms(cp_latency_ms(c.duplex, c.scs_khz, c.tti_os)) == c.published
    )
    _verdict(2, len(cells) == 27 and good == 27,
             f"{good}/{len(cells)} published cells reproduced")


def _anchor_cells():
    """Criterion 3 cell set: the anchors the default knobs must hit."""
    anchors = []
    for cell in load_up_goldens():
        if cell.duplex != "fdd":
            continue
        first_tx = cell.harq_retx == 0
        if first_tx and cell.flow in ("dl", "ul_cg"):
            anchors.append(cell)
        elif first_tx and cell.flow == "ul_sr" and cell.tti_os in (14, 7):
            anchors.append(cell)
        elif (cell.flow == "dl" and cell.scs_khz == 15
              and cell.tti_os in (14, 7) and not first_tx):
            anchors.append(cell)
    return anchors


def test_criterion_3_up_anchor_cells():
    anchors = _anchor_cells()
    matched = 0
    for cell in anchors:
        sc = scenario(cell.flow, "fdd", cell.scs_khz, cell.tti_os, cell.harq_retx)
        if matches_printed(up_latency(sc).total_ms, cell.published):
            matched += 1

    # retransmission deltas: one 3.0 ms (14 os) or 1.5 ms (7 os) round
    # trip per retransmission at 15 kHz, exact
    deltas_ok = 0
    for tti, rtt_ms in ((14, Fraction(3)), (7, Fraction(3, 2))):
        base = up_latency(scenario("dl", "fdd", 15, tti)).total_ms
        for k in (1, 2, 3):
            total = up_latency(scenario("dl", "fdd", 15, tti, k)).total_ms
            if total - base == k * rtt_ms:
                deltas_ok += 1
    ok = len(anchors) == 36 and matched == 36 and deltas_ok == 6
    _verdict(3, ok, f"{matched}/{len(anchors)} anchor cells matched, "
                    f"{deltas_ok}/6 retransmission deltas exact")


# criterion 4: committed residual report, >= 75% coverage, misses listed
def test_criterion_4_committed_residual_report():
    csv_path = REPORTS_DIR / "residuals.csv"
    md_path = REPORTS_DIR / "calibration.md"
    problems = []
    if not csv_path.is_file() or not md_path.is_file():
        _verdict(4, False, "reports/residuals.csv or calibration.md missing")

    rows = csv_path.read_text(encoding="utf-8").splitlines()[1:]
    matched = sum(1 for row in rows if row.split(",")[9] == "yes")
    misses = [row for row in rows if row.split(",")[9] == "no"]
    if len(rows) != 252:
        problems.append(f"expected 252 rows, found {len(rows)}")
    if 4 * matched < 3 * len(rows):
        problems.append(f"coverage {matched}/{len(rows)} below 75%")
    if any(row.split(",")[10] in ("", "0") for row in misses):
        problems.append("a mismatched row has no residual")

    # the committed file must reflect the shipped defaults
    fresh = residual_report()
    if fresh.matched != matched or fresh.total != len(rows):
        problems.append(
            f"committed file says {matched}/{len(rows)}, shipped knobs give "
            f"{fresh.matched}/{fresh.total}")
    md = md_path.read_text(encoding="utf-8")
    listed = sum(1 for line in md.splitlines()
                 if line.startswith("|") and "-up |" in line)
    if listed != len(misses):
        problems.append(f"markdown lists {listed} of {len(misses)} misses")

    _verdict(4, not problems,
             "; ".join(problems) or
             f"{matched}/{len(rows)} cells matched, {len(misses)} misses listed")


# criterion 5: oracle within one symbol on the anchor set, plus
# periodicity and dominance over randomized scenarios
def test_criterion_5_oracle_cross_validation():
    worst_gap = Fraction(0)
    within = 0
    anchors = _anchor_cells()
    for cell in anchors:
        sc = scenario(cell.flow, "fdd", cell.scs_khz, cell.tti_os, cell.harq_retx)
        closed = up_latency(sc).total_ms
        oracle = worst_case(sc).worst_ms
        gap = abs(oracle - closed) / make_numerology(sc.scs_khz).symbol_ms
        worst_gap = max(worst_gap, gap)
        if gap <= 1:
            within += 1

    rng = random.Random(20260814)
    flows = ("dl", "ul_cg", "ul_sr")
    duplexes = ("fdd", "tdd-uldl", "tdd-uldldldl")
    periodic = dominant = trials = 0
    for _ in range(1000):
        duplex = preset(rng.choice(duplexes)).with_phase(rng.randrange(4))
        tti = rng.choice((14, 7, 4) if duplex.is_tdd else (14, 7, 4, 2))
        sc = scenario(rng.choice(flows), duplex, rng.choice((15, 30, 120)),
                      tti, rng.randrange(4))
        resolution = 1
        steps_per_ms = TICKS_PER_MS * resolution
        hyper_ms = duplex.cycle_os() * make_numerology(sc.scs_khz).symbol_ms
        hyper_steps = int(hyper_ms * steps_per_ms)
        offset = Fraction(rng.randrange(hyper_steps), steps_per_ms)
        here, _ = simulate(sc, offset, resolution=resolution)
        there, _ = simulate(sc, offset + hyper_ms, resolution=resolution)
        worst = worst_case(sc, resolution=resolution).worst_ms
        trials += 1
        periodic += here == there
        dominant += worst >= here

    ok = (within == len(anchors) == 36
          and periodic == trials == 1000 and dominant == trials)
    _verdict(5, ok,
             f"{within}/{len(anchors)} anchors within 1 symbol "
             f"(max gap {float(worst_gap):.3f}), "
             f"{periodic}/{trials} periodic, {dominant}/{trials} dominated")


# criterion 6: requirement verdicts with the shipped defaults
def test_criterion_6_compliance_verdicts():
    expected = {
        "cp/embb": "8.5-20",
        "cp/urllc": "6.5-10",
        "up/embb": "0.86-3.9",
        "up/urllc": "0.31-0.96",
    }
    verdicts = {v.requirement.name: v for v in default_verdicts()}
    good = sum(
        1 for name, obtained in expected.items()
        if verdicts[name].obtained == obtained and verdicts[name].met
    )
    cp_urllc = verdicts["cp/urllc"]
    encouraged = cp_urllc.hi_ms <= cp_urllc.requirement.encouraged_ms
    _verdict(6, good == 4 and encouraged,
             f"{good}/4 observed ranges reproduced with met=yes")


# criterion 7: the structural invariants, swept exhaustively
def test_criterion_7_property_suite():
    failures = []
    grid = []
    for duplex in ("fdd", "tdd-uldl", "tdd-uldldldl"):
        for flow in ("dl", "ul_cg", "ul_sr"):
            for scs in (15, 30, 120):
                ttis = (14, 7, 4, 2) if duplex == "fdd" else (14, 7, 4)
                for tti in ttis:
                    grid.append((flow, duplex, scs, tti))

    for flow, duplex, scs, tti in grid:
        base = up_latency(scenario(flow, duplex, scs, tti))
        rtt = harq_rtt_ticks(scenario(flow, duplex, scs, tti, 1))
        for k in (1, 2, 3):
            sc = scenario(flow, duplex, scs, tti, k)
            if up_latency(sc).total_ticks != base.total_ticks + k * rtt:
                failures.append(f"linearity {sc}")
        if duplex != "fdd":
            fdd = up_latency(scenario(flow, "fdd", scs, tti))
            if base.total_ms < fdd.total_ms:
                failures.append(f"tdd<fdd {flow} {duplex} {scs} {tti}")
        if flow == "ul_sr":
            cg = up_latency(scenario("ul_cg", duplex, scs, tti))
            if base.total_ms < cg.total_ms:
                failures.append(f"sr<cg {duplex} {scs} {tti}")
        bumped = DEFAULT_KNOBS.replace(
            gnb_14os_processing_os=DEFAULT_KNOBS.gnb_14os_processing_os + 2)
        if up_latency(scenario(flow, duplex, scs, tti),
                      knobs=bumped).total_ticks < base.total_ticks:
            failures.append(f"knob monotonicity {flow} {duplex} {scs} {tti}")

    table = up_table("fdd")
    if render_up_csv(table) != render_up_csv(up_table("fdd")):
        failures.append("rerun not byte-identical")

    _verdict(7, not failures,
             f"{len(grid)} cells swept, " +
             (f"failures: {failures[:3]}" if failures else "all invariants hold"))
