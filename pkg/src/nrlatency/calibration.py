"""Back-fitting the assumption knobs against the bundled reference tables.

The worst-case model has a handful of under-specified waits (frame
alignment before data, grant timing, retransmission alignment).  This
module recovers them by exhaustive search: for each knob it sweeps a
bounded candidate range and keeps the value whose rounded model output
matches the most published cells, holding everything else fixed.  The
stages run in dependency order, so a knob is always fit against cells
that no later stage can disturb:

1. ``dl_alignment_os`` per TTI, on first-transmission DL cells;
2. ``ul_cg_alignment_os`` per TTI, on first-transmission CG cells;
3. ``sr_prep_os`` and ``grant_tx_os`` jointly per SCS, on FDD SR cells;
4. ``tdd_grant_alignment_os`` per SCS and TTI, on TDD SR cells;
5. ``retx_alignment_os`` per flow, duplex class, SCS and TTI, on the
   three retransmission rows of that combination.

Durations that only ever appear summed with an alignment knob (HARQ
feedback length, SR length and its one-symbol wait, the full-slot gNB
budget at 14-symbol TTIs) are not identifiable separately and stay at
their structural values.

Candidates move in half-symbol steps where that is still an integer
number of ticks (15 and 30 kHz) and whole symbols at 120 kHz.  Ties on
the match count are broken by structural preference: nonzero multiples
of a slot first, then of the TTI in use, then of a half slot, then
anything else, smallest value within a group.  That keeps the fit
deterministic and biased toward frame-structure-shaped waits instead
of arbitrary offsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cp import cp_latency_ms
from .goldens import CpGoldenCell, UpGoldenCell, load_cp_goldens, load_up_goldens
from .profiles import (
    DEFAULT_KNOBS,
    DEFAULT_PROFILE,
    AssumptionKnobs,
    ProcessingProfile,
    Symbols,
)
from .rounding import fmt_ms, matches_printed
from .up import up_latency, scenario

HALF = Fraction(1, 2)

# sweep bounds, in symbols
DATA_ALIGNMENT_MAX_FACTOR = 2   # per-TTI alignments: 0 .. 2 * TTI
SR_PREP_MAX_OS = 28
GRANT_ALIGNMENT_MAX_OS = 28
RETX_ALIGNMENT_MAX_OS = 42
GRANT_TX_CANDIDATES = ("tti", 14)


def computed_up_ms(cell: UpGoldenCell,
                   profile: ProcessingProfile = DEFAULT_PROFILE,
                   knobs: AssumptionKnobs = DEFAULT_KNOBS) -> Fraction:
    sc = scenario(cell.flow, cell.duplex, cell.scs_khz, cell.tti_os,
                  cell.harq_retx)
    return up_latency(sc, profile, knobs).total_ms


@dataclass(frozen=True)
class ResidualRow:
    cell: UpGoldenCell
    computed_ms: Fraction
    matched: bool

    @property
    def residual_ms(self) -> Fraction:
        return self.computed_ms - self.cell.published_ms


@dataclass(frozen=True)
class CpResidualRow:
    cell: CpGoldenCell
    computed_ms: Fraction
    matched: bool


@dataclass(frozen=True)
class ResidualReport:
    """Per-cell comparison of model output against the reference tables."""

    rows: tuple[ResidualRow, ...]
    cp_rows: tuple[CpResidualRow, ...]

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def matched(self) -> int:
        return sum(1 for r in self.rows if r.matched)

    @property
    def coverage(self) -> Fraction:
        return Fraction(self.matched, self.total)

    @property
    def cp_matched(self) -> int:
        return sum(1 for r in self.cp_rows if r.matched)

    def mismatches(self) -> tuple[ResidualRow, ...]:
        return tuple(r for r in self.rows if not r.matched)

    def by_table(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for r in self.rows:
            got = out.setdefault(r.cell.table, [0, 0])
            got[0] += r.matched
            got[1] += 1
        return {t: (m, n) for t, (m, n) in out.items()}


def residual_report(profile: ProcessingProfile = DEFAULT_PROFILE,
                    knobs: AssumptionKnobs = DEFAULT_KNOBS) -> ResidualReport:
    rows = []
    for cell in load_up_goldens():
        computed = computed_up_ms(cell, profile, knobs)
        rows.append(ResidualRow(cell, computed,
                                matches_printed(computed, cell.published)))
    cp_rows = []
    for cell in load_cp_goldens():
        computed = cp_latency_ms(cell.duplex, cell.scs_khz, cell.tti_os)
        cp_rows.append(CpResidualRow(cell, computed,
                                     matches_printed(computed, cell.published)))
    return ResidualReport(tuple(rows), tuple(cp_rows))


# --- fitting -----------------------------------------------------------

@dataclass(frozen=True)
class FittedKnob:
    """Outcome of one exhaustive sweep."""

    knob: str
    chosen: object
    matches: int
    cells: int
    candidates: int
    tied: int


@dataclass(frozen=True)
class FitResult:
    knobs: AssumptionKnobs
    fitted: tuple[FittedKnob, ...]


def _candidates(limit_os: int, scs_list: tuple[int, ...]) -> list[Symbols]:
    step = HALF if all(s in (15, 30) for s in scs_list) else Fraction(1)
    out = []
    value = Fraction(0)
    while value <= limit_os:
        out.append(value if value.denominator > 1 else int(value))
        value += step
    return out


def _preference(value: Symbols, tti_os: int) -> tuple:
    group = 3
    if value != 0:
        if value % 14 == 0:
            group = 0
        elif value % tti_os == 0:
            group = 1
        elif value % 7 == 0:
            group = 2
    return (group, value)


def _score(cells, profile, knobs) -> int:
    return sum(matches_printed(computed_up_ms(c, profile, knobs), c.published)
               for c in cells)


def _sweep(cells, profile, candidates, apply, pref) -> tuple[object, int, int]:
    """Try every candidate, return (choice, matches, tie_count)."""
    scored = [(_score(cells, profile, apply(c)), c) for c in candidates]
    best = max(score for score, _ in scored)
    tied = [c for score, c in scored if score == best]
    return min(tied, key=pref), best, len(tied)


def _select(goldens, flow=None, duplex_class=None, scs=None, tti=None,
            first_tx=None):
    out = []
    for c in goldens:
        if flow is not None and c.flow != flow:
            continue
        if duplex_class is not None:
            klass = "tdd" if c.duplex.startswith("tdd") else "fdd"
            if klass != duplex_class:
                continue
        if scs is not None and c.scs_khz != scs:
            continue
        if tti is not None and c.tti_os != tti:
            continue
        if first_tx is not None and (c.harq_retx == 0) != first_tx:
            continue
        out.append(c)
    return out


def fit_knobs(profile: ProcessingProfile = DEFAULT_PROFILE) -> FitResult:
    """Recover every back-fit knob from the bundled reference tables."""
    goldens = load_up_goldens()
    knobs = DEFAULT_KNOBS
    fitted: list[FittedKnob] = []

    def record(name, choice, matches, cells, candidates, tied):
        fitted.append(FittedKnob(name, choice, matches, len(cells),
                                 candidates, tied))

    # stage 1 and 2: data alignment per TTI, DL then CG
    for field, flow in (("dl_alignment_os", "dl"), ("ul_cg_alignment_os", "ul_cg")):
        for tti in (14, 7, 4, 2):
            cells = _select(goldens, flow=flow, tti=tti, first_tx=True)
            cands = list(range(0, DATA_ALIGNMENT_MAX_FACTOR * tti + 1))

            def apply(v, field=field, tti=tti):
                table = dict(getattr(knobs, field))
                table[tti] = v
                return knobs.replace(**{field: table})

            choice, matches, tied = _sweep(
                cells, profile, cands, apply,
                pref=lambda v, tti=tti: _preference(v, tti))
            knobs = apply(choice)
            record(f"{field}[{tti}]", choice, matches, cells, len(cands), tied)

    # stage 3: SR preparation and grant length, jointly per SCS, FDD cells
    for scs in (15, 30, 120):
        cells = _select(goldens, flow="ul_sr", duplex_class="fdd", scs=scs,
                        first_tx=True)
        cands = [(prep, tx) for tx in GRANT_TX_CANDIDATES
                 for prep in range(0, SR_PREP_MAX_OS + 1)]

        def apply(v, scs=scs):
            prep, tx = v
            preps = dict(knobs.sr_prep_os)
            preps[scs] = prep
            grants = dict(knobs.grant_tx_os)
            grants[scs] = tx
            return knobs.replace(sr_prep_os=preps, grant_tx_os=grants)

        def pref(v):
            prep, tx = v
            return (GRANT_TX_CANDIDATES.index(tx), _preference(prep, 14))

        choice, matches, tied = _sweep(cells, profile, cands, apply, pref)
        knobs = apply(choice)
        record(f"sr_prep_os[{scs}]+grant_tx_os[{scs}]", choice, matches,
               cells, len(cands), tied)

    # stage 4: TDD grant alignment per SCS and TTI, single TDD SR cell each
    for scs in (15, 30, 120):
        for tti in (14, 7, 4):
            cells = _select(goldens, flow="ul_sr", duplex_class="tdd",
                            scs=scs, tti=tti, first_tx=True)
            cands = _candidates(GRANT_ALIGNMENT_MAX_OS, (scs,))

            def apply(v, scs=scs, tti=tti):
                table = {s: dict(t) for s, t in knobs.tdd_grant_alignment_os.items()}
                table[scs][tti] = v
                return knobs.replace(tdd_grant_alignment_os=table)

            choice, matches, tied = _sweep(
                cells, profile, cands, apply,
                pref=lambda v, tti=tti: _preference(v, tti))
            knobs = apply(choice)
            record(f"tdd_grant_alignment_os[{scs}][{tti}]", choice, matches,
                   cells, len(cands), tied)

    # stage 5: retransmission alignment, three retx rows per combination
    for flow in ("dl", "ul_cg", "ul_sr"):
        for klass, ttis in (("fdd", (14, 7, 4, 2)), ("tdd", (14, 7, 4))):
            for scs in (15, 30, 120):
                for tti in ttis:
                    cells = _select(goldens, flow=flow, duplex_class=klass,
                                    scs=scs, tti=tti, first_tx=False)
                    cands = _candidates(RETX_ALIGNMENT_MAX_OS, (scs,))

                    def apply(v, flow=flow, klass=klass, scs=scs, tti=tti):
                        table = {f: {d: {s: dict(t) for s, t in byscs.items()}
                                     for d, byscs in byduplex.items()}
                                 for f, byduplex in knobs.retx_alignment_os.items()}
                        table[flow][klass][scs][tti] = v
                        return knobs.replace(retx_alignment_os=table)

                    choice, matches, tied = _sweep(
                        cells, profile, cands, apply,
                        pref=lambda v, tti=tti: _preference(v, tti))
                    knobs = apply(choice)
                    record(f"retx_alignment_os[{flow}][{klass}][{scs}][{tti}]",
                           choice, matches, cells, len(cands), tied)

    return FitResult(knobs, tuple(fitted))


# --- report files ------------------------------------------------------

def render_residuals_csv(report: ResidualReport) -> str:
    lines = ["table,flow,duplex,scs_khz,tti_os,harq_retx,published_ms,"
             "computed_ms,computed_exact,matched,residual_ms"]
    for r in report.rows:
        c = r.cell
        lines.append(
            f"{c.table},{c.flow},{c.duplex},{c.scs_khz},{c.tti_os},"
            f"{c.harq_retx},{c.published},{fmt_ms(r.computed_ms)},"
            f"{r.computed_ms},{'yes' if r.matched else 'no'},{r.residual_ms}")
    return "\n".join(lines) + "\n"


def render_calibration_md(report: ResidualReport,
                          fit: FitResult | None = None) -> str:
    lines = ["# Calibration report", ""]
    lines.append(f"User-plane cells reproduced at printed precision: "
                 f"{report.matched}/{report.total} "
                 f"({100 * float(report.coverage):.1f}%).")
    for table, (m, n) in sorted(report.by_table().items()):
        lines.append(f"- `{table}`: {m}/{n}")
    lines.append(f"- control-plane achievable table: "
                 f"{report.cp_matched}/{len(report.cp_rows)} "
                 f"(exact ledger arithmetic, no fitted knobs)")
    lines.append("")
    misses = report.mismatches()
    if misses:
        lines.append("## Cells not reproduced")
        lines.append("")
        lines.append("| table | flow | duplex | SCS | TTI | retx "
                     "| published | computed | residual (ms) |")
        lines.append("|---|---|---|---|---|---|---|---|---|")
        for r in misses:
            c = r.cell
            lines.append(
                f"| {c.table} | {c.flow} | {c.duplex} | {c.scs_khz} "
                f"| {c.tti_os} | {c.harq_retx} | {c.published} "
                f"| {fmt_ms(r.computed_ms)} | {r.residual_ms} |")
        lines.append("")
    if fit is not None:
        lines.append("## Fitted knobs")
        lines.append("")
        lines.append("| knob | chosen (symbols) | cells matched | candidates | tied |")
        lines.append("|---|---|---|---|---|")
        for f in fit.fitted:
            lines.append(f"| `{f.knob}` | {f.chosen} | {f.matches}/{f.cells} "
                         f"| {f.candidates} | {f.tied} |")
        lines.append("")
    return "\n".join(lines)


def write_reports(out_dir: str | Path,
                  profile: ProcessingProfile = DEFAULT_PROFILE,
                  knobs: AssumptionKnobs = DEFAULT_KNOBS,
                  fit: FitResult | None = None) -> ResidualReport:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = residual_report(profile, knobs)
    (out / "residuals.csv").write_text(render_residuals_csv(report),
                                       encoding="utf-8")
    (out / "calibration.md").write_text(render_calibration_md(report, fit),
                                        encoding="utf-8")
    return report
