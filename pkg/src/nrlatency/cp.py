"""Control-plane latency: idle-to-connected transition step ledgers.

The control-plane procedure (RACH preamble through RRC Connection Resume
Complete) is modelled as an explicit ledger of steps. Air-interface and
node-processing steps are counted in TTIs, so the same ledger prices any
TTI length; the two RRC-level processing steps are fixed milliseconds.
Totals are always computed from the ledger, never hard-coded.

Step budgets depend on the SCS band: at 120 kHz the shorter symbols buy
less processing per TTI, so detection and processing steps take more of
them (UE n+2 timing becomes n+3, gNB n+3 becomes n+5). TDD ledgers add
slot-alignment steps wherever the procedure has to wait for a slot of
the right direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frame import preset
from .numerology import make_tti

RRC_PROCESSING_MS = Fraction(3)  # L2/RRC processing, UE and gNB sides

# Minimum UL timing advance headroom in symbols, per SCS. Context for
# why single-TTI steps suffice below 6 GHz; not part of the arithmetic.
UE_MIN_UL_TIMING_OS = {15: 3, 30: 3, 120: 9}

_FIXED = None  # marks a fixed-milliseconds step in the tables below

# (label, TTIs below 6 GHz, TTIs at mmWave); _FIXED rows cost
# RRC_PROCESSING_MS regardless of numerology.
_CP_STEPS = {
    "fdd": (
        ("RACH scheduling period", 1, 1),
        ("RACH preamble transmission", 1, 1),
        ("Preamble detection, gNB processing", 1, 3),
        ("Random access response transmission", 1, 1),
        ("UE processing of RA response", 1, 2),
        ("RRC Connection Resume Request transmission", 1, 1),
        ("gNB processing (L2 and RRC)", _FIXED, _FIXED),
        ("RRC Connection Resume transmission", 1, 1),
        ("UE processing (L2 and RRC)", _FIXED, _FIXED),
        ("RRC Connection Resume Complete transmission", 1, 1),
        ("gNB processing (Uu to S1-C relay)", 1, 3),
    ),
    "tdd-uldl": (
        ("RACH scheduling period", 2, 2),
        ("RACH preamble transmission", 1, 1),
        ("Preamble detection, gNB processing", 1, 3),
        ("DL slot alignment", 1, 1),
        ("Random access response transmission", 1, 1),
        ("UE processing of RA response", 1, 3),
        ("UL slot alignment", 1, 1),
        ("RRC Connection Resume Request transmission", 1, 1),
        ("gNB processing (L2 and RRC)", _FIXED, _FIXED),
        ("DL slot alignment", 1, 1),
        ("RRC Connection Resume transmission", 1, 1),
        ("UE processing (L2 and RRC)", _FIXED, _FIXED),
        ("UL slot alignment", 1, 1),
        ("RRC Connection Resume Complete transmission", 1, 1),
        ("gNB processing (Uu to S1-C relay)", 1, 3),
    ),
    "tdd-uldldldl": (
        ("RACH scheduling period", 4, 4),
        ("RACH preamble transmission", 1, 1),
        ("Preamble detection, gNB processing", 1, 3),
        ("DL slot alignment", 0, 1),
        ("Random access response transmission", 1, 1),
        ("UE processing of RA response", 1, 3),
        ("UL slot alignment", 0, 3),
        ("RRC Connection Resume Request transmission", 1, 1),
        ("gNB processing (L2 and RRC)", _FIXED, _FIXED),
        ("DL slot alignment", 0, 1),
        ("RRC Connection Resume transmission", 1, 1),
        ("UE processing (L2 and RRC)", _FIXED, _FIXED),
        ("UL slot alignment", 0, 3),
        ("RRC Connection Resume Complete transmission", 1, 1),
        ("gNB processing (Uu to S1-C relay)", 1, 3),
    ),
}


@dataclass(frozen=True)
class CpStep:
    label: str
    tti_count: int = 0
    fixed_ms: Fraction = Fraction(0)

    def cost_ms(self, tti_ms: Fraction) -> Fraction:
        return self.tti_count * tti_ms + self.fixed_ms


@dataclass(frozen=True)
class CpLedger:
    duplex: str
    scs_khz: int
    steps: tuple[CpStep, ...]

    @property
    def total_ttis(self) -> int:
        return sum(s.tti_count for s in self.steps)

    @property
    def total_fixed_ms(self) -> Fraction:
        return sum((s.fixed_ms for s in self.steps), Fraction(0))


def build_cp_ledger(duplex_name: str, scs_khz: int) -> CpLedger:
    duplex = preset(duplex_name)  # validates the name
    mmwave = scs_khz >= 60
    steps = []
    for label, sub6, mm in _CP_STEPS[duplex.name]:
        count = mm if mmwave else sub6
        if count is _FIXED:
            steps.append(CpStep(label, fixed_ms=RRC_PROCESSING_MS))
        else:
            steps.append(CpStep(label, tti_count=count))
    return CpLedger(duplex.name, scs_khz, tuple(steps))


def cp_total_ms(ledger: CpLedger, tti_os: int) -> Fraction:
    """Exact control-plane total: ledger TTIs priced at one TTI length."""
    tti = make_tti(ledger.scs_khz, tti_os)
    return ledger.total_ttis * tti.duration_ms + ledger.total_fixed_ms


def cp_latency_ms(duplex_name: str, scs_khz: int, tti_os: int) -> Fraction:
    return cp_total_ms(build_cp_ledger(duplex_name, scs_khz), tti_os)


def cp_table(duplex_name: str, scs_list: tuple[int, ...] = (15, 30, 120),
             tti_list: tuple[int, ...] = (14, 7, 4)) -> dict[tuple[int, int], Fraction]:
    """(scs, tti) -> total ms for one duplex arrangement."""
    out = {}
    for scs in scs_list:
        ledger = build_cp_ledger(duplex_name, scs)
        for tti in tti_list:
            out[(scs, tti)] = cp_total_ms(ledger, tti)
    return out
