"""Command-line interface.

Subcommands::

    nrlatency up        worst-case user-plane table (optionally with
                        oracle cross-check, per-component breakdown,
                        and compliance verdicts)
    nrlatency cp        achievable control-plane table or step ledger
    nrlatency oracle    slot-timeline worst case for one scenario
    nrlatency calibrate refit knobs and write the calibration reports
    nrlatency check     latency requirement verdicts

Exit codes: 0 success, 1 a requested compliance check failed, 2 usage
or configuration error.  ``--config`` loads a JSON document (schema in
:mod:`nrlatency.config`); explicit flags override it.  The environment
variable ``NRLATENCY_PROFILE`` supplies a default assumption profile
name or path.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .calibration import fit_knobs, write_reports
from .compliance import default_verdicts
from .config import FORMATS, ScenarioConfig, config_from_mapping, parse_config
from .cp import build_cp_ledger, cp_table
from .errors import ConfigError, NrLatencyError
from .frame import PRESETS, preset
from .oracle import explain, worst_case
from .profiles import DEFAULT_KNOBS
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
from .up import FLOWS, MAX_HARQ_RETX, scenario, up_table

ENV_PROFILE = "NRLATENCY_PROFILE"


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _str_list(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def _add_common(p: argparse.ArgumentParser, *, single: bool = False):
    p.add_argument("--config", help="JSON configuration document")
    p.add_argument("--duplex", help="duplex preset"
                   + ("" if single else " (cp also accepts 'all')"))
    p.add_argument("--phase", type=int, help="TDD pattern rotation, slots")
    if single:
        p.add_argument("--scs", type=int, help="subcarrier spacing, kHz")
        p.add_argument("--tti", type=int, help="TTI length, symbols")
        p.add_argument("--mode", help=f"flow, one of {list(FLOWS)}")
        p.add_argument("--retx", type=int,
                       help=f"HARQ retransmissions, 0..{MAX_HARQ_RETX}")
    else:
        p.add_argument("--scs", type=_int_list,
                       help="subcarrier spacings, comma list")
        p.add_argument("--tti", type=_int_list,
                       help="TTI lengths, comma list")
        p.add_argument("--mode", type=_str_list,
                       help=f"flows, comma list from {list(FLOWS)}")
        p.add_argument("--retx", type=int,
                       help=f"sweep 0..N retransmissions, N<={MAX_HARQ_RETX}")
    p.add_argument("--profile", help="assumption profile name or JSON path")
    p.add_argument("--format", choices=FORMATS, help="output format")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--resolution", type=int,
                   help="oracle lattice steps per 1/112 ms tick")
    p.add_argument("--margin", type=int,
                   help="oracle dispatch margin on data occasions, symbols")


def _build_config(args: argparse.Namespace, extra: dict) -> ScenarioConfig:
    raw: dict = {}
    if args.config:
        raw.update(_load_config_mapping(args.config))
    for key in ("duplex", "phase", "scs", "tti", "retx", "profile",
                "format", "out", "resolution", "margin"):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    if getattr(args, "mode", None) is not None:
        raw["modes"] = args.mode
    raw.update(extra)
    if "profile" not in raw and os.environ.get(ENV_PROFILE):
        raw["profile"] = os.environ[ENV_PROFILE]
    return config_from_mapping(raw)


def _load_config_mapping(path: str) -> dict:
    import json
    from fractions import Fraction

    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"config: cannot read {path!r}: {exc}"]) from exc
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config: not valid JSON: {exc}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["config: document must be a JSON object"])
    return raw


def _emit(text: str, cfg: ScenarioConfig) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _duplex_obj(cfg: ScenarioConfig):
    dup = preset(cfg.duplex)
    return dup.with_phase(cfg.phase) if cfg.phase else dup


def _cmd_up(args) -> int:
    extra = {}
    for key in ("oracle", "breakdown", "check"):
        if getattr(args, key):
            extra[key] = True
    cfg = _build_config(args, extra)
    cells = up_table(_duplex_obj(cfg), cfg.scs, cfg.tti, cfg.modes,
                     cfg.retx_list, cfg.processing, cfg.knobs)
    oracle_results = None
    if cfg.oracle:
        oracle_results = [
            worst_case(cell.scenario, cfg.processing, cfg.knobs,
                       resolution=cfg.resolution,
                       dispatch_margin_os=cfg.margin)
            for cell in cells
        ]
    render = render_up_csv if cfg.format == "csv" else render_up_md
    text = render(cells, breakdown=cfg.breakdown, oracle=oracle_results)
    code = 0
    if cfg.check:
        verdicts = default_verdicts(cfg.processing, cfg.knobs)
        if cfg.format == "csv":
            text += "\n" + render_verdicts_csv(verdicts)
        else:
            text += "\n" + render_verdicts_md(verdicts)
        if not all(v.met for v in verdicts):
            code = 1
    _emit(text, cfg)
    return code


def _cmd_cp(args) -> int:
    if args.duplex == "all":
        args.duplex = None
        all_presets = True
    else:
        all_presets = False
    mapping = _load_config_mapping(args.config) if args.config else {}
    explicit_duplex = args.duplex is not None or "duplex" in mapping
    explicit_tti = args.tti is not None or "tti" in mapping
    cfg = _build_config(args, {})
    duplexes = [cfg.duplex] if explicit_duplex and not all_presets \
        else list(PRESETS)
    # the published control-plane tables stop at the 4-symbol TTI
    tti_list = cfg.tti if explicit_tti else tuple(t for t in cfg.tti if t != 2)
    if 2 in tti_list and any(d != "fdd" for d in duplexes):
        raise ConfigError(["tti: 2-symbol TTIs are not supported with "
                           "TDD patterns"])
    if args.ledger:
        blocks = []
        render = render_cp_ledger_csv if cfg.format == "csv" else render_cp_ledger_md
        for duplex in duplexes:
            for scs in cfg.scs:
                for tti in tti_list:
                    blocks.append(render(build_cp_ledger(duplex, scs), tti))
        _emit("\n".join(blocks), cfg)
        return 0
    tables = {d: cp_table(d, tuple(cfg.scs), tuple(tti_list)) for d in duplexes}
    render = render_cp_csv if cfg.format == "csv" else render_cp_md
    _emit(render(tables), cfg)
    return 0


def _cmd_oracle(args) -> int:
    extra = {}
    for key, value in (("scs", args.scs), ("tti", args.tti)):
        if value is not None:
            extra[key] = [value]
    if args.mode is not None:
        extra["modes"] = [args.mode]
    args.scs = args.tti = args.mode = None
    cfg = _build_config(args, extra)
    sc = scenario(cfg.modes[0], _duplex_obj(cfg), cfg.scs[0], cfg.tti[0],
                  cfg.retx_max if args.retx is not None else 0)
    result = worst_case(sc, cfg.processing, cfg.knobs,
                        resolution=cfg.resolution,
                        dispatch_margin_os=cfg.margin,
                        arrival_quantization=args.quantization,
                        keep_per_offset=cfg.format == "csv")
    if cfg.format == "csv":
        lines = ["offset_ms,latency_ms"]
        for offset, value in result.per_offset:
            lines.append(f"{offset},{value}")
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit(explain(result) + "\n", cfg)
    return 0


def _cmd_calibrate(args) -> int:
    cfg = _build_config(args, {})
    fit = fit_knobs(cfg.processing)
    report = write_reports(args.out_dir, cfg.processing, cfg.knobs, fit)
    refit_matches = sum(1 for name in (
        "dl_alignment_os", "ul_cg_alignment_os", "sr_prep_os", "grant_tx_os",
        "tdd_grant_alignment_os", "retx_alignment_os")
        if getattr(fit.knobs, name) == getattr(DEFAULT_KNOBS, name))
    sys.stdout.write(
        f"cells reproduced: {report.matched}/{report.total} "
        f"({100 * float(report.coverage):.1f}%)\n"
        f"refit agrees with shipped defaults in {refit_matches}/6 "
        f"knob families\n"
        f"reports written to {args.out_dir}/\n")
    return 0


def _cmd_check(args) -> int:
    cfg = _build_config(args, {})
    verdicts = default_verdicts(cfg.processing, cfg.knobs)
    render = render_verdicts_csv if cfg.format == "csv" else render_verdicts_md
    _emit(render(verdicts), cfg)
    met = all((v.met_strict if args.strict else v.met) for v in verdicts)
    return 0 if met else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nrlatency",
        description="Worst-case 5G NR latency tables, oracle cross-checks, "
                    "and requirement verdicts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_up = sub.add_parser("up", help="user-plane latency table")
    _add_common(p_up)
    p_up.add_argument("--oracle", action="store_true",
                      help="append timeline-oracle cross-check columns")
    p_up.add_argument("--breakdown", action="store_true",
                      help="append per-component sums")
    p_up.add_argument("--check", action="store_true",
                      help="append compliance verdicts and set exit code")
    p_up.set_defaults(func=_cmd_up)

    p_cp = sub.add_parser("cp", help="control-plane latency table")
    _add_common(p_cp)
    p_cp.add_argument("--ledger", action="store_true",
                      help="emit the per-step ledger instead of the table")
    p_cp.set_defaults(func=_cmd_cp)

    p_or = sub.add_parser("oracle", help="timeline worst case, one scenario")
    _add_common(p_or, single=True)
    p_or.add_argument("--quantization", choices=("sub_symbol", "symbol"),
                      default="sub_symbol",
                      help="arrival offsets: every lattice step or whole "
                           "symbols only")
    p_or.set_defaults(func=_cmd_oracle)

    p_cal = sub.add_parser("calibrate",
                           help="refit knobs against the reference tables")
    _add_common(p_cal)
    p_cal.add_argument("--out-dir", default="reports",
                       help="directory for calibration.md and residuals.csv")
    p_cal.set_defaults(func=_cmd_calibrate)

    p_chk = sub.add_parser("check", help="latency requirement verdicts")
    _add_common(p_chk)
    p_chk.add_argument("--strict", action="store_true",
                       help="require every evaluated cell to qualify")
    p_chk.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return 2
    except NrLatencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
