"""Processing budgets and assumption knobs for the user-plane model.

Every under-specified timing assumption in the worst-case model is an
explicit field here, so any of them can be swept or overridden. Values
marked "back-fit" were chosen by the calibration module as the profile
that best reproduces the bundled reference tables (see ``data/`` and the
committed calibration report); regenerate them with the ``calibrate``
CLI subcommand. Fractional symbol counts are exact ``Fraction`` values
and always land on the 1/112 ms tick.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ProfileError
from .frame import DuplexConfig

Symbols = Fraction | int

# UE PDSCH decode (3GPP TS 38.214 N1, capability 2) and PUSCH prepare
# (N2, capability 2) budgets in symbols, per subcarrier spacing.
_UE_DECODE_OS = {15: 3, 30: Fraction(9, 2), 120: 20}
_UE_PREPARE_OS = {15: 5, 30: Fraction(11, 2), 120: 36}

# gNB decode-plus-schedule budget in symbols, per SCS and TTI length.
# Full-slot TTIs take the separate back-fit knob below.
_GNB_PROCESSING_OS = {
    15: {7: 7, 4: 4, 2: 4},
    30: {7: 7, 4: 4, 2: 4},
    120: {7: 14, 4: 12, 2: 10},
}


@dataclass(frozen=True)
class ProcessingProfile:
    """Decode/prepare/schedule budgets for UE and gNB."""

    ue_decode_os: dict[int, Symbols] = field(
        default_factory=lambda: dict(_UE_DECODE_OS))
    ue_prepare_os: dict[int, Symbols] = field(
        default_factory=lambda: dict(_UE_PREPARE_OS))
    gnb_processing_os: dict[int, dict[int, Symbols]] = field(
        default_factory=lambda: {s: dict(t) for s, t in _GNB_PROCESSING_OS.items()})

    def gnb_os(self, scs_khz: int, tti_os: int, full_slot_os: Symbols) -> Symbols:
        if tti_os == 14:
            return full_slot_os
        return self.gnb_processing_os[scs_khz][tti_os]


# Back-fit retransmission alignment: the extra wait, beyond processing
# and feedback, from a NACK to the retransmission occasion. Keyed by
# flow, duplex class, SCS and TTI; TDD values were fit on the
# alternating pattern.
_RETX_ALIGNMENT_OS = {
    "dl": {
        "fdd": {
            15: {14: 10, 7: 3, 4: 4, 2: 2},
            30: {14: Fraction(15, 2), 7: 1, 4: 4, 2: 2},
            120: {14: 7, 7: 7, 4: 5, 2: 3},
        },
        "tdd": {
            15: {14: Fraction(47, 2), 7: 10, 4: 16},
            30: {14: Fraction(43, 2), 7: 8, 4: Fraction(29, 2)},
            120: {14: 35, 7: 14, 4: 16},
        },
    },
    "ul_cg": {
        "fdd": {
            15: {14: 8, 7: 1, 4: 4, 2: 0},
            30: {14: Fraction(15, 2), 7: Fraction(1, 2), 4: 4, 2: 0},
            120: {14: 5, 7: 5, 4: 7, 2: 1},
        },
        "tdd": {
            15: {14: 22, 7: 8, 4: 14},
            30: {14: Fraction(43, 2), 7: 8, 4: Fraction(27, 2)},
            120: {14: 19, 7: 8, 4: 4},
        },
    },
    "ul_sr": {
        "fdd": {
            15: {14: 8, 7: 7, 4: 4, 2: 2},
            30: {14: 14, 7: 3, 4: Fraction(13, 2), 2: 4},
            120: {14: 12, 7: 9, 4: 8, 2: 0},
        },
        "tdd": {
            15: {14: 22, 7: Fraction(21, 2), 4: 14},
            30: {14: 28, 7: Fraction(21, 2), 4: 15},
            120: {14: 23, 7: 14, 4: 0},
        },
    },
}

# Back-fit wait from SR decode to the scheduling grant on TDD patterns
# (FDD grants go out on the next control occasion, no extra wait).
_TDD_GRANT_ALIGNMENT_OS = {
    15: {14: 14, 7: 7, 4: 14},
    30: {14: 14, 7: 7, 4: 14},
    120: {14: 21, 7: 7, 4: 14},
}


@dataclass(frozen=True)
class AssumptionKnobs:
    """Every sweepable timing assumption of the user-plane model.

    Alignment knobs are the worst-case wait, in symbols, charged between
    "ready" and the matching transmission occasion. TDD scenarios add a
    full slot per pattern slot that cannot carry the needed direction on
    top of the base knob value.
    """

    # frame alignment before a DL data transmission, per TTI (back-fit)
    dl_alignment_os: dict[int, int] = field(
        default_factory=lambda: {14: 14, 7: 7, 4: 7, 2: 3})
    # frame alignment before an UL configured-grant transmission; also
    # used for the data stage of the SR flow (back-fit)
    ul_cg_alignment_os: dict[int, int] = field(
        default_factory=lambda: {14: 14, 7: 7, 4: 6, 2: 2})
    # scheduling request: internal preparation (back-fit, nonzero only
    # at 120 kHz), worst-case wait for the next SR occasion, SR duration,
    # occasion period. The 1-symbol alignment the closed form charges is
    # a supremum, which only an every-symbol SR opportunity realises
    # under continuous arrivals; set sr_period_os = 2 to model sparser
    # occasions (the wait then exceeds sr_alignment_os by up to a symbol).
    sr_prep_os: dict[int, int] = field(
        default_factory=lambda: {15: 0, 30: 0, 120: 24})
    sr_alignment_os: int = 1
    sr_tx_os: int = 1
    sr_period_os: int = 1
    # scheduling grant: duration per SCS ("tti" tracks the data TTI,
    # 120 kHz uses a fixed full-slot grant; back-fit) and TDD-only
    # alignment before it
    grant_tx_os: dict[int, int | str] = field(
        default_factory=lambda: {15: "tti", 30: "tti", 120: 14})
    tdd_grant_alignment_os: dict[int, dict[int, int]] = field(
        default_factory=lambda: {s: dict(t) for s, t in _TDD_GRANT_ALIGNMENT_OS.items()})
    # HARQ NACK/grant duration and the wait before it
    harq_feedback_os: int = 1
    feedback_alignment_os: int = 0
    # gNB budget for full-slot TTIs, absent from the processing table (back-fit)
    gnb_14os_processing_os: int = 14
    # extra retransmission wait, see _RETX_ALIGNMENT_OS (back-fit)
    retx_alignment_os: dict[str, dict[str, dict[int, dict[int, Symbols]]]] = field(
        default_factory=lambda: {
            f: {d: {s: dict(t) for s, t in byscs.items()}
                for d, byscs in byduplex.items()}
            for f, byduplex in _RETX_ALIGNMENT_OS.items()})
    # mini-slot placement policy, see frame.data_occasions
    minislot_placement: str = "default"

    def data_alignment_os(self, flow: str, tti_os: int) -> int:
        if flow == "dl":
            return self.dl_alignment_os[tti_os]
        return self.ul_cg_alignment_os[tti_os]

    def retx_alignment(self, flow: str, duplex: DuplexConfig,
                       scs_khz: int, tti_os: int) -> Symbols:
        klass = "tdd" if duplex.is_tdd else "fdd"
        return self.retx_alignment_os[flow][klass][scs_khz][tti_os]

    def grant_alignment_os(self, duplex: DuplexConfig,
                           scs_khz: int, tti_os: int) -> int:
        if not duplex.is_tdd:
            return 0
        return self.tdd_grant_alignment_os[scs_khz][tti_os]

    def grant_duration_os(self, scs_khz: int, tti_os: int) -> int:
        value = self.grant_tx_os[scs_khz]
        return tti_os if value == "tti" else int(value)

    def replace(self, **changes) -> "AssumptionKnobs":
        return dataclasses.replace(self, **changes)


DEFAULT_PROFILE = ProcessingProfile()
DEFAULT_KNOBS = AssumptionKnobs()

PROFILE_NAMES = ("default",)


def _to_symbols(value, where: str, problems: list[str]) -> Symbols:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        problems.append(f"{where}: expected a number, got {value!r}")
        return 0
    return value


def _int_keys(mapping, where: str, problems: list[str]) -> dict:
    if not isinstance(mapping, dict):
        problems.append(f"{where}: expected an object")
        return {}
    out = {}
    for k, v in mapping.items():
        try:
            out[int(k)] = v
        except (TypeError, ValueError):
            problems.append(f"{where}: key {k!r} is not an integer")
    return out


def _merge_numeric_table(base: dict, override, where: str,
                         problems: list[str], depth: int) -> dict:
    merged = {k: (dict(v) if isinstance(v, dict) else v) for k, v in base.items()}
    for k, v in _int_keys(override, where, problems).items():
        if k not in merged:
            problems.append(f"{where}: unknown key {k}")
            continue
        if depth > 1:
            merged[k] = _merge_numeric_table(merged[k], v, f"{where}.{k}",
                                             problems, depth - 1)
        else:
            merged[k] = _to_symbols(v, f"{where}.{k}", problems)
    return merged


_KNOB_TABLE_DEPTH = {
    "dl_alignment_os": 1,
    "ul_cg_alignment_os": 1,
    "sr_prep_os": 1,
    "tdd_grant_alignment_os": 2,
}
_KNOB_SCALARS = ("sr_alignment_os", "sr_tx_os", "sr_period_os",
                 "harq_feedback_os", "feedback_alignment_os",
                 "gnb_14os_processing_os")


def _parse_knobs(raw: dict, problems: list[str]) -> AssumptionKnobs:
    knobs = AssumptionKnobs()
    changes = {}
    for key, value in raw.items():
        if key in _KNOB_TABLE_DEPTH:
            changes[key] = _merge_numeric_table(
                getattr(knobs, key), value, f"knobs.{key}", problems,
                _KNOB_TABLE_DEPTH[key])
        elif key in _KNOB_SCALARS:
            changes[key] = _to_symbols(value, f"knobs.{key}", problems)
        elif key == "minislot_placement":
            if value not in ("default", "slot_aligned", "contiguous"):
                problems.append(f"knobs.minislot_placement: unknown policy {value!r}")
            else:
                changes[key] = value
        elif key == "grant_tx_os":
            table = dict(knobs.grant_tx_os)
            for scs, v in _int_keys(value, f"knobs.{key}", problems).items():
                if scs not in table:
                    problems.append(f"knobs.{key}: unknown key {scs}")
                elif v != "tti":
                    table[scs] = _to_symbols(v, f"knobs.{key}.{scs}", problems)
                else:
                    table[scs] = v
            changes[key] = table
        elif key == "retx_alignment_os":
            if not isinstance(value, dict):
                problems.append(f"knobs.{key}: expected an object")
                continue
            table = {f: {d: {s: dict(t) for s, t in byscs.items()}
                         for d, byscs in byduplex.items()}
                     for f, byduplex in knobs.retx_alignment_os.items()}
            for flow, byduplex in value.items():
                if flow not in table:
                    problems.append(f"knobs.{key}: unknown flow {flow!r}")
                    continue
                if not isinstance(byduplex, dict):
                    problems.append(f"knobs.{key}.{flow}: expected an object")
                    continue
                for dup, byscs in byduplex.items():
                    if dup not in table[flow]:
                        problems.append(f"knobs.{key}.{flow}: unknown duplex class {dup!r}")
                        continue
                    table[flow][dup] = _merge_numeric_table(
                        table[flow][dup], byscs, f"knobs.{key}.{flow}.{dup}",
                        problems, 2)
            changes[key] = table
        else:
            problems.append(f"knobs: unknown knob {key!r}")
    return knobs.replace(**changes)


def _parse_processing(raw: dict, problems: list[str]) -> ProcessingProfile:
    profile = ProcessingProfile()
    changes = {}
    for key, value in raw.items():
        if key in ("ue_decode_os", "ue_prepare_os"):
            changes[key] = _merge_numeric_table(
                getattr(profile, key), value, f"processing.{key}", problems, 1)
        elif key == "gnb_processing_os":
            changes[key] = _merge_numeric_table(
                profile.gnb_processing_os, value, f"processing.{key}", problems, 2)
        else:
            problems.append(f"processing: unknown field {key!r}")
    return dataclasses.replace(profile, **changes)


def profile_from_sections(raw: dict) -> tuple[ProcessingProfile, AssumptionKnobs]:
    """Overlay the defaults with already-decoded profile sections.

    Layout: ``{"processing": {...}, "knobs": {...}}``, both sections
    optional, unknown keys rejected. All problems are reported at once.
    """
    problems: list[str] = []
    profile = DEFAULT_PROFILE
    knobs = DEFAULT_KNOBS
    for key, value in raw.items():
        if key == "processing":
            profile = _parse_processing(value, problems) \
                if isinstance(value, dict) else profile
            if not isinstance(value, dict):
                problems.append("processing: expected an object")
        elif key == "knobs":
            knobs = _parse_knobs(value, problems) \
                if isinstance(value, dict) else knobs
            if not isinstance(value, dict):
                problems.append("knobs: expected an object")
        else:
            problems.append(f"unknown top-level section {key!r}")
    if problems:
        raise ProfileError("; ".join(problems))
    return profile, knobs


def parse_profile(text: str) -> tuple[ProcessingProfile, AssumptionKnobs]:
    """Parse a JSON profile overlaying the defaults."""
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"profile is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ProfileError("profile must be a JSON object")
    return profile_from_sections(raw)


def load_profile(name_or_path: str) -> tuple[ProcessingProfile, AssumptionKnobs]:
    """Resolve a profile by registry name or by path to a JSON file."""
    if name_or_path in PROFILE_NAMES:
        return DEFAULT_PROFILE, DEFAULT_KNOBS
    path = Path(name_or_path)
    if not path.is_file():
        raise ProfileError(
            f"unknown profile {name_or_path!r}: not a registered name "
            f"{PROFILE_NAMES} and no such file")
    return parse_profile(path.read_text(encoding="utf-8"))
