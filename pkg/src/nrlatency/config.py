"""Scenario configuration: a validated sweep description.

A configuration can come from a JSON document (``parse_config``) or be
assembled from CLI flags (``config_from_mapping``).  Validation is
exhaustive: every problem in the document is reported in one error, not
just the first.  Unknown keys are rejected so a typo cannot silently
fall back to a default.

JSON schema (all keys optional)::

    {
      "duplex":  "fdd" | "tdd-uldl" | "tdd-uldldldl",
      "phase":   <int>,                   // TDD pattern rotation
      "scs":     [15, 30, 120],
      "tti":     [14, 7, 4, 2],           // default: all the duplex supports
      "modes":   ["dl", "ul_cg", "ul_sr"],  // "direction" accepted as alias
      "retx":    0..3,                    // sweep 0..retx retransmissions
      "profile": "default" | "<path.json>" | {"processing": .., "knobs": ..},
      "format":  "csv" | "md",
      "out":     "<path>",
      "resolution": <int>,                // oracle steps per tick
      "margin":  <int>,                   // oracle dispatch margin, symbols
      "oracle":  true | false,            // append oracle columns
      "breakdown": true | false,          // append per-component columns
      "check":   true | false             // append verdicts, set exit code
    }
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError, ProfileError
from .frame import PRESETS
from .numerology import SUPPORTED_SCS_KHZ, SUPPORTED_TTI_OS
from .profiles import (
    DEFAULT_KNOBS,
    DEFAULT_PROFILE,
    AssumptionKnobs,
    ProcessingProfile,
    load_profile,
    profile_from_sections,
)
from .up import FLOWS, MAX_HARQ_RETX

FORMATS = ("csv", "md")


@dataclass(frozen=True)
class ScenarioConfig:
    duplex: str = "fdd"
    phase: int = 0
    scs: tuple[int, ...] = SUPPORTED_SCS_KHZ
    tti: tuple[int, ...] = SUPPORTED_TTI_OS
    modes: tuple[str, ...] = FLOWS
    retx_max: int = MAX_HARQ_RETX
    format: str = "md"
    out: str | None = None
    resolution: int = 4
    margin: int = 1
    oracle: bool = False
    breakdown: bool = False
    check: bool = False
    processing: ProcessingProfile = field(default_factory=lambda: DEFAULT_PROFILE)
    knobs: AssumptionKnobs = field(default_factory=lambda: DEFAULT_KNOBS)

    @property
    def retx_list(self) -> tuple[int, ...]:
        return tuple(range(self.retx_max + 1))


def _want_int(raw, key, problems) -> int | None:
    if isinstance(raw, bool) or not isinstance(raw, int):
        problems.append(f"{key}: expected an integer, got {raw!r}")
        return None
    return raw


def _want_int_list(raw, key, allowed, problems) -> tuple[int, ...] | None:
    values = raw if isinstance(raw, list) else [raw]
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int) or v not in allowed:
            problems.append(f"{key}: {v!r} not in allowed set {list(allowed)}")
        else:
            out.append(v)
    if not out:
        problems.append(f"{key}: empty selection")
        return None
    return tuple(out)


def config_from_mapping(raw: dict) -> ScenarioConfig:
    """Validate a decoded mapping into a ScenarioConfig.

    Raises ConfigError carrying every problem found.
    """
    problems: list[str] = []
    values: dict = {}

    raw = dict(raw)
    if "direction" in raw:  # documented alias
        if "modes" in raw:
            problems.append("direction: conflicts with modes, give one")
        raw["modes"] = raw.pop("direction")

    for key, value in raw.items():
        if key == "duplex":
            if value not in PRESETS:
                problems.append(
                    f"duplex: {value!r} not in allowed set {list(PRESETS)}")
            else:
                values["duplex"] = value
        elif key == "phase":
            got = _want_int(value, "phase", problems)
            if got is not None:
                if got < 0:
                    problems.append(f"phase: must be >= 0, got {got}")
                else:
                    values["phase"] = got
        elif key == "scs":
            got = _want_int_list(value, "scs", SUPPORTED_SCS_KHZ, problems)
            if got is not None:
                values["scs"] = got
        elif key == "tti":
            got = _want_int_list(value, "tti", SUPPORTED_TTI_OS, problems)
            if got is not None:
                values["tti"] = got
        elif key == "modes":
            tokens = value if isinstance(value, list) else [value]
            modes = []
            for t in tokens:
                if t not in FLOWS:
                    problems.append(
                        f"modes: {t!r} not in allowed set {list(FLOWS)}")
                elif t not in modes:
                    modes.append(t)
            if modes:
                values["modes"] = tuple(modes)
            else:
                problems.append("modes: empty selection")
        elif key == "retx":
            got = _want_int(value, "retx", problems)
            if got is not None:
                if not 0 <= got <= MAX_HARQ_RETX:
                    problems.append(
                        f"retx: must be in 0..{MAX_HARQ_RETX}, got {got}")
                else:
                    values["retx_max"] = got
        elif key == "profile":
            try:
                if isinstance(value, dict):
                    processing, knobs = profile_from_sections(value)
                elif isinstance(value, str):
                    processing, knobs = load_profile(value)
                else:
                    raise ProfileError(
                        f"expected a name, path, or object, got {value!r}")
                values["processing"] = processing
                values["knobs"] = knobs
            except ProfileError as exc:
                problems.append(f"profile: {exc}")
        elif key == "format":
            if value not in FORMATS:
                problems.append(
                    f"format: {value!r} not in allowed set {list(FORMATS)}")
            else:
                values["format"] = value
        elif key == "out":
            if not isinstance(value, str):
                problems.append(f"out: expected a path, got {value!r}")
            else:
                values["out"] = value
        elif key == "resolution":
            got = _want_int(value, "resolution", problems)
            if got is not None:
                if got < 1:
                    problems.append(f"resolution: must be >= 1, got {got}")
                else:
                    values["resolution"] = got
        elif key == "margin":
            got = _want_int(value, "margin", problems)
            if got is not None:
                if got < 0:
                    problems.append(f"margin: must be >= 0, got {got}")
                else:
                    values["margin"] = got
        elif key in ("oracle", "breakdown", "check"):
            if not isinstance(value, bool):
                problems.append(f"{key}: expected true or false, got {value!r}")
            else:
                values[key] = value
        else:
            problems.append(f"unknown key {key!r}")

    duplex = values.get("duplex", "fdd")
    if duplex != "fdd":
        if "tti" in values:
            if 2 in values["tti"]:
                problems.append(
                    "tti: 2-symbol TTIs are not supported with TDD patterns "
                    f"(duplex {duplex!r})")
        else:
            values["tti"] = tuple(t for t in SUPPORTED_TTI_OS if t != 2)

    if problems:
        raise ConfigError(problems)
    return ScenarioConfig(**values)


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a JSON configuration document."""
    import json
    from fractions import Fraction

    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"not valid JSON: {exc}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["configuration must be a JSON object"])
    return config_from_mapping(raw)
