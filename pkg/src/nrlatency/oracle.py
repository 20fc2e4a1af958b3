"""Brute-force slot-timeline oracle for user-plane scenarios.

This is the independent check on the closed-form model: instead of
summing worst-case knob values, it walks the actual transmission chain
against explicit occasion grids for one arrival offset, then maximises
over every offset in a sub-symbol lattice covering one hyperperiod.
Alignment knobs are deliberately *not* consulted here; alignment waits
emerge from the grids. Only physical durations (processing budgets, SR
and grant lengths, feedback length) are shared with the closed form.

Internally time is counted in "steps" of one tick divided by
``resolution``, so every duration stays an exact integer. By default a
transmission occasion is usable only if the payload has been ready for
at least one symbol before the occasion starts (the dispatch margin);
control occasions (SR, grant, feedback) have no margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .frame import (DL, UL, OpportunityGrid, data_occasions, every_symbol,
                    hyperperiod_os, restrict_to_direction, sr_occasions)
from .numerology import TICKS_PER_MS, make_numerology, symbols_to_ticks
from .profiles import DEFAULT_KNOBS, DEFAULT_PROFILE, AssumptionKnobs, ProcessingProfile
from .up import UpScenario

WAIT = "wait"
TRANSMIT = "transmit"
PROCESS = "process"


@dataclass(frozen=True)
class TimelineEvent:
    start_ms: Fraction
    duration_ms: Fraction
    kind: str
    label: str

    @property
    def end_ms(self) -> Fraction:
        return self.start_ms + self.duration_ms


@dataclass(frozen=True)
class OracleResult:
    scenario: UpScenario
    resolution: int
    worst_ms: Fraction
    worst_offset_ms: Fraction
    trace: tuple[TimelineEvent, ...]
    per_offset: tuple[tuple[Fraction, Fraction], ...] | None = None


class _Chain:
    """One scenario's grids and durations, scaled to integer steps."""

    def __init__(self, sc: UpScenario, profile: ProcessingProfile,
                 knobs: AssumptionKnobs, resolution: int,
                 dispatch_margin_os: int):
        if resolution < 1:
            raise ValueError("resolution must be >= 1")
        self.sc = sc
        self.res = resolution
        num = make_numerology(sc.scs_khz)
        self.steps_per_ms = TICKS_PER_MS * resolution
        self._sym = num.symbol_ticks * resolution
        self.symbol_steps = self._sym

        def steps(symbols) -> int:
            return symbols_to_ticks(sc.scs_khz, symbols) * resolution

        def scale(grid: OpportunityGrid) -> OpportunityGrid:
            return OpportunityGrid(grid.period_os * self._sym,
                                   tuple(s * self._sym for s in grid.starts),
                                   grid.duration_os * self._sym)

        self.steps = steps
        self.margin = dispatch_margin_os * self._sym
        self.tti = steps(sc.tti_os)
        self.gnb = steps(profile.gnb_os(sc.scs_khz, sc.tti_os,
                                        knobs.gnb_14os_processing_os))
        self.ue_decode = steps(profile.ue_decode_os[sc.scs_khz])
        self.ue_prepare = steps(profile.ue_prepare_os[sc.scs_khz])
        self.fb_tx = steps(knobs.harq_feedback_os)
        self.sr_prep = steps(knobs.sr_prep_os[sc.scs_khz])
        self.sr_tx = steps(knobs.sr_tx_os)
        self.grant_tx = steps(knobs.grant_duration_os(sc.scs_khz, sc.tti_os))

        dup = sc.duplex
        data_dir = sc.data_direction
        fb_dir = UL if data_dir == DL else DL
        self.data = scale(restrict_to_direction(
            data_occasions(sc.tti_os, knobs.minislot_placement), dup, data_dir))
        self.feedback = scale(restrict_to_direction(
            every_symbol(knobs.harq_feedback_os), dup, fb_dir))
        grids = [self.data, self.feedback]
        if sc.flow == "ul_sr":
            self.sr = scale(restrict_to_direction(
                sr_occasions(knobs.sr_period_os), dup, UL))
            self.grant = scale(restrict_to_direction(
                every_symbol(knobs.grant_duration_os(sc.scs_khz, sc.tti_os)),
                dup, DL))
            grids += [self.sr, self.grant]
        self.hyperperiod = hyperperiod_os(dup) * self._sym
        for g in grids:
            self.hyperperiod = math.lcm(self.hyperperiod, g.period_os)

    def run(self, offset: int) -> tuple[int, list[tuple[int, int, str, str]]]:
        """Walk the chain from an arrival at ``offset`` steps.

        Returns (latency_steps, events); events are (start, duration,
        kind, label) and tile the interval from arrival to completion.
        """
        sc = self.sc
        t = offset
        events: list[tuple[int, int, str, str]] = []

        def process(duration: int, label: str):
            nonlocal t
            if duration:
                events.append((t, duration, PROCESS, label))
            t += duration

        def occupy(grid: OpportunityGrid, duration: int, label: str,
                   margin: int = 0):
            nonlocal t
            start = grid.next_start(t + margin)
            if start > t:
                events.append((t, start - t, WAIT, f"wait: {label}"))
            events.append((start, duration, TRANSMIT, label))
            t = start + duration

        if sc.flow == "dl":
            process(self.gnb, "gNB processing")
            occupy(self.data, self.tti, "data transmission", self.margin)
            process(self.ue_decode, "UE processing")
            for i in range(sc.harq_retx):
                occupy(self.feedback, self.fb_tx, f"HARQ feedback {i + 1}")
                process(self.gnb, "gNB processing")
                occupy(self.data, self.tti, f"retransmission {i + 1}", self.margin)
                process(self.ue_decode, "UE processing")
        else:
            if sc.flow == "ul_sr":
                process(self.sr_prep, "SR preparation")
                occupy(self.sr, self.sr_tx, "SR transmission")
                process(self.gnb, "gNB processing")
                occupy(self.grant, self.grant_tx, "grant transmission")
            process(self.ue_prepare, "UE processing")
            occupy(self.data, self.tti, "data transmission", self.margin)
            for i in range(sc.harq_retx):
                process(self.gnb, "gNB processing")
                occupy(self.feedback, self.fb_tx, f"HARQ feedback {i + 1}")
                process(self.ue_prepare, "UE processing")
                occupy(self.data, self.tti, f"retransmission {i + 1}", self.margin)
            process(self.gnb, "gNB processing")

        return t - offset, events


def _to_ms(steps: int, chain: _Chain) -> Fraction:
    return Fraction(steps, chain.steps_per_ms)


def _trace(events, chain: _Chain) -> tuple[TimelineEvent, ...]:
    return tuple(TimelineEvent(_to_ms(s, chain), _to_ms(d, chain), kind, label)
                 for s, d, kind, label in events)


def simulate(sc: UpScenario, offset_ms: Fraction | int,
             profile: ProcessingProfile = DEFAULT_PROFILE,
             knobs: AssumptionKnobs = DEFAULT_KNOBS,
             resolution: int = 4,
             dispatch_margin_os: int = 1) -> tuple[Fraction, tuple[TimelineEvent, ...]]:
    """Latency and trace for one arrival offset (must land on the lattice)."""
    chain = _Chain(sc, profile, knobs, resolution, dispatch_margin_os)
    offset = Fraction(offset_ms) * chain.steps_per_ms
    if offset.denominator != 1 or offset < 0:
        raise ValueError(f"offset {offset_ms} ms is not a non-negative "
                         f"multiple of 1/{chain.steps_per_ms} ms")
    latency, events = chain.run(int(offset))
    return _to_ms(latency, chain), _trace(events, chain)


def worst_case(sc: UpScenario,
               profile: ProcessingProfile = DEFAULT_PROFILE,
               knobs: AssumptionKnobs = DEFAULT_KNOBS,
               resolution: int = 4,
               dispatch_margin_os: int = 1,
               arrival_quantization: str = "sub_symbol",
               keep_per_offset: bool = False) -> OracleResult:
    """Maximise the simulated latency over one hyperperiod of arrivals.

    With ``arrival_quantization="sub_symbol"`` (the default) every offset
    in the step lattice is tried, which subsumes the "epsilon after each
    occasion boundary" candidates: the lattice point one step past a
    boundary realises each one-sided supremum to within a single step.
    ``"symbol"`` restricts arrivals to symbol boundaries instead.
    """
    chain = _Chain(sc, profile, knobs, resolution, dispatch_margin_os)
    if arrival_quantization == "sub_symbol":
        stride = 1
    elif arrival_quantization == "symbol":
        stride = chain.symbol_steps
    else:
        raise ValueError(f"arrival_quantization must be 'sub_symbol' or "
                         f"'symbol', got {arrival_quantization!r}")
    best = -1
    best_offset = 0
    best_events: list = []
    per_offset = [] if keep_per_offset else None
    for offset in range(0, chain.hyperperiod, stride):
        latency, events = chain.run(offset)
        if per_offset is not None:
            per_offset.append((_to_ms(offset, chain), _to_ms(latency, chain)))
        if latency > best:
            best, best_offset, best_events = latency, offset, events
    return OracleResult(
        scenario=sc,
        resolution=resolution,
        worst_ms=_to_ms(best, chain),
        worst_offset_ms=_to_ms(best_offset, chain),
        trace=_trace(best_events, chain),
        per_offset=tuple(per_offset) if per_offset is not None else None,
    )


def explain(result: OracleResult) -> str:
    """Human-readable rendering of a worst-case trace."""
    sc = result.scenario
    lines = [
        f"{sc.flow} {sc.duplex.name} {sc.scs_khz} kHz {sc.tti_os} os "
        f"retx={sc.harq_retx}: worst case {float(result.worst_ms):.4f} ms "
        f"({result.worst_ms} ms exact) at arrival offset "
        f"{float(result.worst_offset_ms):.4f} ms",
    ]
    for ev in result.trace:
        lines.append(f"  {float(ev.start_ms):9.4f} .. {float(ev.end_ms):9.4f}"
                     f"  {ev.kind:<8}  {ev.label}")
    return "\n".join(lines)
