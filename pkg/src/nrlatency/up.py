"""Closed-form worst-case user-plane latency.

Three flows are modelled, each as an ordered sum of components:

* ``dl``      grant-free downlink data
* ``ul_cg``   uplink on a configured grant (grant-free uplink)
* ``ul_sr``   uplink via scheduling request + dynamic grant

Each HARQ retransmission adds one fixed round trip, so latency is exactly
linear in the retransmission count. TDD charges one extra slot per
pattern slot that cannot carry the needed direction on top of the FDD
frame-alignment knob; the SR-to-grant wait on TDD is a separately fitted
knob (it absorbs the direction wait for the grant). All arithmetic is in
integer ticks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedScenarioError
from .frame import DL, UL, DuplexConfig, preset
from .numerology import (SUPPORTED_SCS_KHZ, SUPPORTED_TTI_OS,
                         SYMBOLS_PER_SLOT, symbols_to_ticks, ticks_to_ms)
from .profiles import (DEFAULT_KNOBS, DEFAULT_PROFILE, AssumptionKnobs,
                       ProcessingProfile)

FLOWS = ("dl", "ul_cg", "ul_sr")
MAX_HARQ_RETX = 3


@dataclass(frozen=True)
class UpScenario:
    flow: str
    duplex: DuplexConfig
    scs_khz: int
    tti_os: int
    harq_retx: int = 0

    def __post_init__(self):
        if self.flow not in FLOWS:
            raise ValueError(f"unknown flow {self.flow!r}, expected one of {FLOWS}")
        if self.scs_khz not in SUPPORTED_SCS_KHZ:
            raise ValueError(f"unsupported SCS {self.scs_khz} kHz")
        if self.tti_os not in SUPPORTED_TTI_OS:
            raise ValueError(f"unsupported TTI {self.tti_os} os")
        if not 0 <= self.harq_retx <= MAX_HARQ_RETX:
            raise ValueError(f"harq_retx must be 0..{MAX_HARQ_RETX}, "
                             f"got {self.harq_retx}")
        if self.duplex.is_tdd and self.tti_os == 2:
            raise UnsupportedScenarioError(
                "2 os transmissions are not supported on TDD patterns")

    @property
    def data_direction(self) -> str:
        return DL if self.flow == "dl" else UL


def scenario(flow: str, duplex: str | DuplexConfig, scs_khz: int,
             tti_os: int, harq_retx: int = 0) -> UpScenario:
    """Convenience constructor accepting a duplex preset name."""
    if isinstance(duplex, str):
        duplex = preset(duplex)
    return UpScenario(flow, duplex, scs_khz, tti_os, harq_retx)


@dataclass(frozen=True)
class LatencyResult:
    """An exact latency total plus its per-component breakdown."""

    scenario: UpScenario
    components: tuple[tuple[str, int], ...]  # (label, ticks)

    @property
    def total_ticks(self) -> int:
        return sum(t for _, t in self.components)

    @property
    def total_ms(self) -> Fraction:
        return ticks_to_ms(self.total_ticks)


def _slot_penalty_os(duplex: DuplexConfig, direction: str) -> int:
    return SYMBOLS_PER_SLOT * duplex.mismatch_slots(direction)


def harq_rtt_ticks(sc: UpScenario, profile: ProcessingProfile = DEFAULT_PROFILE,
                   knobs: AssumptionKnobs = DEFAULT_KNOBS) -> int:
    """One HARQ round trip: decode, NACK, re-prepare, realign, retransmit."""
    gnb = profile.gnb_os(sc.scs_khz, sc.tti_os, knobs.gnb_14os_processing_os)
    feedback = knobs.feedback_alignment_os + knobs.harq_feedback_os
    realign = knobs.retx_alignment(sc.flow, sc.duplex, sc.scs_khz, sc.tti_os)
    if sc.flow == "dl":
        prepare = profile.ue_decode_os[sc.scs_khz]
    else:
        prepare = profile.ue_prepare_os[sc.scs_khz]
        # UL: the gNB both detects the failure and schedules; DL: the UE
        # decodes and NACKs. Either way the loop is decode + feedback +
        # prepare + realignment + the retransmission itself.
    rtt_os = prepare + feedback + gnb + realign + sc.tti_os
    return symbols_to_ticks(sc.scs_khz, rtt_os)


def up_latency(sc: UpScenario, profile: ProcessingProfile = DEFAULT_PROFILE,
               knobs: AssumptionKnobs = DEFAULT_KNOBS) -> LatencyResult:
    scs = sc.scs_khz
    tti = sc.tti_os

    def ticks(symbols) -> int:
        return symbols_to_ticks(scs, symbols)

    gnb = profile.gnb_os(scs, tti, knobs.gnb_14os_processing_os)
    parts: list[tuple[str, int]] = []

    if sc.flow == "dl":
        align = knobs.dl_alignment_os[tti] + _slot_penalty_os(sc.duplex, DL)
        parts.append(("gNB processing", ticks(gnb)))
        parts.append(("frame alignment", ticks(align)))
        parts.append(("data transmission", ticks(tti)))
        receiver = ("UE processing", ticks(profile.ue_decode_os[scs]))
    else:
        if sc.flow == "ul_sr":
            parts.append(("SR preparation", ticks(knobs.sr_prep_os[scs])))
            parts.append(("SR opportunity alignment", ticks(knobs.sr_alignment_os)))
            parts.append(("SR transmission", ticks(knobs.sr_tx_os)))
            parts.append(("gNB processing", ticks(gnb)))
            parts.append(("grant alignment",
                          ticks(knobs.grant_alignment_os(sc.duplex, scs, tti))))
            parts.append(("grant transmission",
                          ticks(knobs.grant_duration_os(scs, tti))))
        align = knobs.ul_cg_alignment_os[tti] + _slot_penalty_os(sc.duplex, UL)
        parts.append(("UE processing", ticks(profile.ue_prepare_os[scs])))
        parts.append(("frame alignment", ticks(align)))
        parts.append(("data transmission", ticks(tti)))
        receiver = ("gNB processing", ticks(gnb))

    if sc.harq_retx:
        rtt = harq_rtt_ticks(sc, profile, knobs)
        parts.append((f"HARQ retransmissions ({sc.harq_retx})",
                      sc.harq_retx * rtt))
    parts.append(receiver)
    return LatencyResult(sc, tuple(parts))


@dataclass(frozen=True)
class UpCell:
    scenario: UpScenario
    result: LatencyResult

    @property
    def total_ms(self) -> Fraction:
        return self.result.total_ms


def up_table(duplex: str | DuplexConfig,
             scs_list: tuple[int, ...] = SUPPORTED_SCS_KHZ,
             tti_list: tuple[int, ...] = (14, 7, 4, 2),
             flows: tuple[str, ...] = FLOWS,
             retx_list: tuple[int, ...] = (0, 1, 2, 3),
             profile: ProcessingProfile = DEFAULT_PROFILE,
             knobs: AssumptionKnobs = DEFAULT_KNOBS) -> list[UpCell]:
    """Sweep a full table, ordered flow-major then retx, SCS, TTI.

    TTI lengths a duplex arrangement cannot carry (2 os on TDD) are
    skipped rather than raising, so callers can pass one TTI list for
    both duplex modes.
    """
    dup = preset(duplex) if isinstance(duplex, str) else duplex
    cells = []
    for flow in flows:
        for retx in retx_list:
            for scs in scs_list:
                for tti in tti_list:
                    if dup.is_tdd and tti == 2:
                        continue
                    sc = UpScenario(flow, dup, scs, tti, retx)
                    cells.append(UpCell(sc, up_latency(sc, profile, knobs)))
    return cells
