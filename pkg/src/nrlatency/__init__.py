"""Worst-case 5G NR radio-interface latency, computed exactly.

The package evaluates control-plane and user-plane worst-case latency
over the frame structure (subcarrier spacing, TTI length, duplex
arrangement, HARQ retransmissions), cross-validates the closed-form
totals against a slot-timeline search oracle, back-fits understated
timing assumptions against bundled reference tables, and judges the
results against the IMT-2020 latency targets.

All arithmetic is exact: times are integer counts of a 1/112 ms tick
(one 120 kHz symbol), rationals elsewhere. Floats appear only in
display code.
"""

from .calibration import (
    FitResult,
    FittedKnob,
    ResidualReport,
    fit_knobs,
    residual_report,
    write_reports,
)
from .compliance import (
    REQUIREMENTS,
    ComplianceVerdict,
    Requirement,
    default_verdicts,
    evaluate,
    evaluate_totals,
    threshold_tag,
)
from .config import ScenarioConfig, config_from_mapping, parse_config
from .cp import CpLedger, CpStep, build_cp_ledger, cp_latency_ms, cp_table, cp_total_ms
from .errors import ConfigError, NrLatencyError, ProfileError, UnsupportedScenarioError
from .frame import PRESETS, DuplexConfig, preset
from .goldens import GoldenDataError, load_cp_goldens, load_up_goldens
from .numerology import (
    SUPPORTED_SCS_KHZ,
    SUPPORTED_TTI_OS,
    TICKS_PER_MS,
    Numerology,
    TtiConfig,
    make_numerology,
    make_tti,
    symbols_to_ticks,
    ticks_to_ms,
)
from .oracle import OracleResult, explain, simulate, worst_case
from .report import (
    render_cp_csv,
    render_cp_ledger_csv,
    render_cp_ledger_md,
    render_cp_md,
    render_up_csv,
    render_up_md,
    render_verdicts_csv,
    render_verdicts_md,
)
from .profiles import (
    DEFAULT_KNOBS,
    DEFAULT_PROFILE,
    AssumptionKnobs,
    ProcessingProfile,
    load_profile,
    parse_profile,
)
from .rounding import fmt_cp_ms, fmt_ms, matches_printed, round_half_away
from .up import (
    FLOWS,
    MAX_HARQ_RETX,
    LatencyResult,
    UpCell,
    UpScenario,
    harq_rtt_ticks,
    scenario,
    up_latency,
    up_table,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionKnobs",
    "ComplianceVerdict",
    "ConfigError",
    "CpLedger",
    "CpStep",
    "DEFAULT_KNOBS",
    "DEFAULT_PROFILE",
    "DuplexConfig",
    "FLOWS",
    "FitResult",
    "FittedKnob",
    "GoldenDataError",
    "LatencyResult",
    "MAX_HARQ_RETX",
    "NrLatencyError",
    "Numerology",
    "OracleResult",
    "PRESETS",
    "ProcessingProfile",
    "ProfileError",
    "REQUIREMENTS",
    "Requirement",
    "ResidualReport",
    "SUPPORTED_SCS_KHZ",
    "SUPPORTED_TTI_OS",
    "ScenarioConfig",
    "TICKS_PER_MS",
    "TtiConfig",
    "UnsupportedScenarioError",
    "UpCell",
    "UpScenario",
    "build_cp_ledger",
    "config_from_mapping",
    "cp_latency_ms",
    "cp_table",
    "cp_total_ms",
    "default_verdicts",
    "evaluate",
    "evaluate_totals",
    "explain",
    "fit_knobs",
    "fmt_cp_ms",
    "fmt_ms",
    "harq_rtt_ticks",
    "load_cp_goldens",
    "load_profile",
    "load_up_goldens",
    "make_numerology",
    "make_tti",
    "matches_printed",
    "parse_config",
    "parse_profile",
    "preset",
    "render_cp_csv",
    "render_cp_ledger_csv",
    "render_cp_ledger_md",
    "render_cp_md",
    "render_up_csv",
    "render_up_md",
    "render_verdicts_csv",
    "render_verdicts_md",
    "residual_report",
    "round_half_away",
    "scenario",
    "simulate",
    "symbols_to_ticks",
    "threshold_tag",
    "ticks_to_ms",
    "up_latency",
    "up_table",
    "worst_case",
    "write_reports",
]
