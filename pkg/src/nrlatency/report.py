"""Deterministic rendering of latency tables, ledgers, and verdicts.

Every renderer is a pure function from already-evaluated results to a
string, so identical inputs produce byte-identical output.  CSV output
is comma-separated with a mandatory header, ``\\n`` newlines, and never
needs quoting: all cells are numbers, bare labels, or ``+``-joined
component lists.  Markdown output mirrors the published table layout,
one row family per flow and retransmission count with SCS-major,
TTI-minor columns.  Milliseconds are printed at two significant
figures; exact values are available in breakdown and ledger columns as
plain fractions.
"""

from __future__ import annotations

from fractions import Fraction

from .compliance import ComplianceVerdict, threshold_tag
from .cp import CpLedger, cp_total_ms
from .numerology import TICKS_PER_MS, make_tti, symbols_to_ticks
from .oracle import OracleResult
from .rounding import fmt_cp_ms, fmt_ms
from .up import UpCell

# cell markers for the two compliance thresholds
TAG_MARKS = {"urllc_ok": "u", "embb_ok": "e", "above": "-"}
TAG_LEGEND = "u = within 1 ms, e = within 4 ms, - = above 4 ms"


def _symbols(cell: UpCell, ticks: int) -> Fraction:
    return Fraction(ticks, symbols_to_ticks(cell.scenario.scs_khz, 1))


def _breakdown_os(cell: UpCell) -> str:
    parts = [f"{label}={_symbols(cell, ticks)}"
             for label, ticks in cell.result.components]
    return " + ".join(parts)


def _gap_os(cell: UpCell, oracle: OracleResult) -> Fraction:
    gap_ms = oracle.worst_ms - cell.total_ms
    return gap_ms * TICKS_PER_MS / symbols_to_ticks(cell.scenario.scs_khz, 1)


def render_up_csv(cells: list[UpCell], *, breakdown: bool = False,
                  oracle: list[OracleResult] | None = None) -> str:
    header = "flow,harq_retx,duplex,scs_khz,tti_os,latency_ms,tag"
    if oracle is not None:
        header += ",oracle_ms,gap_os"
    if breakdown:
        header += ",breakdown_os"
    lines = [header]
    for i, cell in enumerate(cells):
        sc = cell.scenario
        row = (f"{sc.flow},{sc.harq_retx},{sc.duplex.name},{sc.scs_khz},"
               f"{sc.tti_os},{fmt_ms(cell.total_ms)},"
               f"{threshold_tag(cell.total_ms)}")
        if oracle is not None:
            res = oracle[i]
            row += f",{fmt_ms(res.worst_ms)},{_gap_os(cell, res)}"
        if breakdown:
            row += f",{_breakdown_os(cell)}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def _column_order(cells: list[UpCell]) -> list[tuple[int, int]]:
    seen = []
    for cell in cells:
        key = (cell.scenario.scs_khz, cell.scenario.tti_os)
        if key not in seen:
            seen.append(key)
    return sorted(seen, key=lambda k: (k[0], -k[1]))


def render_up_md(cells: list[UpCell], *, breakdown: bool = False,
                 oracle: list[OracleResult] | None = None) -> str:
    columns = _column_order(cells)
    by_key = {}
    families = []
    for i, cell in enumerate(cells):
        sc = cell.scenario
        family = (sc.flow, sc.harq_retx)
        if family not in families:
            families.append(family)
        by_key[(sc.flow, sc.harq_retx, sc.scs_khz, sc.tti_os)] = (cell, i)

    duplex = cells[0].scenario.duplex.name
    lines = [f"# Worst-case user-plane latency, {duplex} (ms)", ""]
    head = "| flow | retx |" + "".join(
        f" {scs} kHz / {tti} os |" for scs, tti in columns)
    lines.append(head)
    lines.append("|---|---|" + "---|" * len(columns))
    for flow, retx in families:
        row = f"| {flow} | {retx} |"
        for scs, tti in columns:
            hit = by_key.get((flow, retx, scs, tti))
            if hit is None:
                row += " |"
                continue
            cell, _ = hit
            mark = TAG_MARKS[threshold_tag(cell.total_ms)]
            row += f" {fmt_ms(cell.total_ms)} ({mark}) |"
        lines.append(row)
    lines.append("")
    lines.append(TAG_LEGEND)
    lines.append("")
    if oracle is not None:
        lines.append("## Oracle cross-check")
        lines.append("")
        lines.append("| flow | retx | SCS | TTI | model (ms) | oracle (ms) "
                     "| gap (symbols) |")
        lines.append("|---|---|---|---|---|---|---|")
        for i, cell in enumerate(cells):
            sc = cell.scenario
            lines.append(
                f"| {sc.flow} | {sc.harq_retx} | {sc.scs_khz} | {sc.tti_os} "
                f"| {fmt_ms(cell.total_ms)} | {fmt_ms(oracle[i].worst_ms)} "
                f"| {_gap_os(cell, oracle[i])} |")
        lines.append("")
    if breakdown:
        lines.append("## Components (symbols)")
        lines.append("")
        for cell in cells:
            sc = cell.scenario
            lines.append(f"- {sc.flow} retx={sc.harq_retx} {sc.scs_khz} kHz "
                         f"{sc.tti_os} os: {_breakdown_os(cell)}")
        lines.append("")
    return "\n".join(lines)


def render_cp_csv(tables: dict[str, dict[tuple[int, int], Fraction]]) -> str:
    lines = ["duplex,scs_khz,tti_os,latency_ms"]
    for duplex, table in tables.items():
        for (scs, tti), value in table.items():
            lines.append(f"{duplex},{scs},{tti},{fmt_cp_ms(value)}")
    return "\n".join(lines) + "\n"


def render_cp_md(tables: dict[str, dict[tuple[int, int], Fraction]]) -> str:
    lines = ["# Achievable control-plane latency (ms)", ""]
    for duplex, table in tables.items():
        scs_list = sorted({scs for scs, _ in table})
        tti_list = sorted({tti for _, tti in table}, reverse=True)
        lines.append(f"## {duplex}")
        lines.append("")
        lines.append("| SCS \\ TTI |" + "".join(f" {t} os |" for t in tti_list))
        lines.append("|---|" + "---|" * len(tti_list))
        for scs in scs_list:
            row = f"| {scs} kHz |"
            for tti in tti_list:
                row += f" {fmt_cp_ms(table[(scs, tti)])} |"
            lines.append(row)
        lines.append("")
    return "\n".join(lines)


def render_cp_ledger_csv(ledger: CpLedger, tti_os: int) -> str:
    tti_ms = make_tti(ledger.scs_khz, tti_os).duration_ms
    lines = ["step,description,tti_count,cost_ms"]
    for i, step in enumerate(ledger.steps, start=1):
        lines.append(f"{i},{step.label},{step.tti_count},{step.cost_ms(tti_ms)}")
    lines.append(f",total,{ledger.total_ttis},{cp_total_ms(ledger, tti_os)}")
    return "\n".join(lines) + "\n"


def render_cp_ledger_md(ledger: CpLedger, tti_os: int) -> str:
    tti_ms = make_tti(ledger.scs_khz, tti_os).duration_ms
    total = cp_total_ms(ledger, tti_os)
    lines = [
        f"# Control-plane ledger, {ledger.duplex}, "
        f"{ledger.scs_khz} kHz, {tti_os} os TTI",
        "",
        "| step | description | TTIs | cost (ms) |",
        "|---|---|---|---|",
    ]
    for i, step in enumerate(ledger.steps, start=1):
        lines.append(f"| {i} | {step.label} | {step.tti_count} "
                     f"| {step.cost_ms(tti_ms)} |")
    lines.append(f"| | total | {ledger.total_ttis} | {total} |")
    lines.append("")
    lines.append(f"Total: {fmt_cp_ms(total)} ms")
    lines.append("")
    return "\n".join(lines)


def render_verdicts_csv(verdicts: tuple[ComplianceVerdict, ...]) -> str:
    lines = ["plane,service,required_ms,obtained_ms,met,qualifying,evaluated"]
    for v in verdicts:
        r = v.requirement
        lines.append(f"{r.plane},{r.service},{fmt_ms(r.required_ms)},"
                     f"{v.obtained},{'yes' if v.met else 'no'},"
                     f"{v.qualifying},{v.evaluated}")
    return "\n".join(lines) + "\n"


def render_verdicts_md(verdicts: tuple[ComplianceVerdict, ...]) -> str:
    lines = [
        "# Latency requirement verdicts",
        "",
        "| plane | service | required (ms) | obtained (ms) | met |",
        "|---|---|---|---|---|",
    ]
    for v in verdicts:
        r = v.requirement
        lines.append(f"| {r.plane} | {r.service} | {fmt_ms(r.required_ms)} "
                     f"| {v.obtained} | {'yes' if v.met else 'no'} |")
    lines.append("")
    return "\n".join(lines)
