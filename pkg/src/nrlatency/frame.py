"""Frame structure: duplex patterns, transmission occasions, alignment gaps.

The closed-form model and the timeline oracle both build on this module,
but they consume it differently: the closed form only needs worst-case
gap summaries (and the TDD slot-direction penalty), while the oracle
walks the explicit occasion grids. Keeping both views here makes the two
routes share their *inputs* without sharing their arithmetic.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .errors import UnsupportedScenarioError
from .numerology import SYMBOLS_PER_SLOT

DL = "dl"
UL = "ul"

PLACEMENT_POLICIES = ("default", "slot_aligned", "contiguous")


@dataclass(frozen=True)
class DuplexConfig:
    """A duplexing arrangement.

    ``pattern`` is the repeating per-slot direction cycle for TDD, empty
    for FDD (both directions available in every slot). ``phase`` rotates
    the pattern: slot ``i`` uses ``pattern[(i + phase) % len(pattern)]``.
    """

    name: str
    pattern: tuple[str, ...] = ()
    phase: int = 0

    @property
    def is_tdd(self) -> bool:
        return bool(self.pattern)

    def slot_direction(self, slot_index: int) -> str | None:
        if not self.pattern:
            return None
        return self.pattern[(slot_index + self.phase) % len(self.pattern)]

    def allows(self, direction: str, slot_index: int) -> bool:
        return not self.pattern or self.slot_direction(slot_index) == direction

    def mismatch_slots(self, direction: str) -> int:
        """Slots per pattern cycle that cannot carry ``direction``."""
        return sum(1 for d in self.pattern if d != direction)

    def cycle_os(self) -> int:
        return max(1, len(self.pattern)) * SYMBOLS_PER_SLOT

    def with_phase(self, phase: int) -> "DuplexConfig":
        return DuplexConfig(self.name, self.pattern, phase)


PRESETS: dict[str, DuplexConfig] = {
    "fdd": DuplexConfig("fdd"),
    "tdd-uldl": DuplexConfig("tdd-uldl", (UL, DL)),
    "tdd-uldldldl": DuplexConfig("tdd-uldldldl", (UL, DL, DL, DL)),
}


def preset(name: str) -> DuplexConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown duplex preset {name!r}, expected one of "
                         f"{sorted(PRESETS)}") from None


# Per-slot start offsets for data transmissions. 7 os and 4 os mini-slots
# sit at fixed positions inside the slot; 2 os packs back to back (14 is
# divisible by 2, so the two policies coincide there, as they do for full
# slots).
_SLOT_ALIGNED_STARTS = {
    14: (0,),
    7: (0, 7),
    4: (0, 4, 8),
    2: (0, 2, 4, 6, 8, 10, 12),
}


@dataclass(frozen=True)
class OpportunityGrid:
    """Periodic transmission occasions: starts within one period, in symbols."""

    period_os: int
    starts: tuple[int, ...]
    duration_os: int

    def next_start(self, ready_os) -> int:
        """Earliest start >= ready (any exact numeric type in symbols)."""
        base = (ready_os // self.period_os) * self.period_os
        offset = ready_os - base
        idx = bisect_left(self.starts, offset)
        if idx < len(self.starts):
            return int(base + self.starts[idx])
        return int(base + self.period_os + self.starts[0])

    def max_gap_os(self) -> int:
        """Largest cyclic spacing between consecutive starts."""
        gaps = [b - a for a, b in zip(self.starts, self.starts[1:])]
        gaps.append(self.period_os + self.starts[0] - self.starts[-1])
        return max(gaps)


def data_occasions(tti_os: int, policy: str = "default") -> OpportunityGrid:
    """FDD occasion grid for a data transmission of ``tti_os`` symbols."""
    if policy not in PLACEMENT_POLICIES:
        raise ValueError(f"unknown placement policy {policy!r}")
    if policy == "contiguous" and tti_os in (4, 7):
        return OpportunityGrid(tti_os, (0,), tti_os)
    return OpportunityGrid(SYMBOLS_PER_SLOT, _SLOT_ALIGNED_STARTS[tti_os], tti_os)


def every_symbol(duration_os: int = 1) -> OpportunityGrid:
    """Control-channel grid: an occasion begins at every symbol."""
    return OpportunityGrid(1, (0,), duration_os)


def sr_occasions(period_os: int = 2) -> OpportunityGrid:
    """Scheduling-request grid, one occasion per ``period_os`` symbols."""
    return OpportunityGrid(period_os, (0,), 1)


def restrict_to_direction(grid: OpportunityGrid, duplex: DuplexConfig,
                          direction: str) -> OpportunityGrid:
    """Drop occasions whose span leaves slots of the wanted direction.

    For FDD the grid is returned unchanged. For TDD an occasion survives
    only if every symbol it covers lies in a matching-direction slot, so
    transmissions never straddle a direction change.
    """
    if not duplex.is_tdd:
        return grid
    span = math.lcm(grid.period_os, duplex.cycle_os())
    starts = []
    for base in range(0, span, grid.period_os):
        for s in grid.starts:
            start = base + s
            span_ok = all(
                duplex.allows(direction, (start + k) // SYMBOLS_PER_SLOT)
                for k in range(grid.duration_os)
            )
            if span_ok:
                starts.append(start)
    if not starts:
        raise UnsupportedScenarioError(
            f"no {grid.duration_os}-symbol {direction} occasion fits the "
            f"{duplex.name} pattern")
    return OpportunityGrid(span, tuple(starts), grid.duration_os)


def hyperperiod_os(duplex: DuplexConfig, *grids: OpportunityGrid) -> int:
    periods = [duplex.cycle_os()] + [g.period_os for g in grids]
    return math.lcm(*periods)
