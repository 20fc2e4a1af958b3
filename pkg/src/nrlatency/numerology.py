"""NR numerology: subcarrier spacings, slot/symbol durations, TTI lengths.

All durations are exact. The package-wide time unit is the "tick",
1/112 ms, chosen so that every supported symbol duration is an integer
(15 kHz symbol = 8 ticks, 30 kHz = 4, 120 kHz = 1) and half-symbol
quantities at 15/30 kHz stay integral too. Millisecond values are
``fractions.Fraction`` and never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

SUPPORTED_SCS_KHZ = (15, 30, 120)
SYMBOLS_PER_SLOT = 14
SUPPORTED_TTI_OS = (14, 7, 4, 2)  # os = OFDM symbols

TICKS_PER_MS = 112  # 1 tick = 1/112 ms

# scs -> mu as defined by the NR frame structure (TS 38.211): the slot
# rate doubles per step, 15 kHz -> 1 slot/ms.
_MU = {15: 0, 30: 1, 120: 3}


@dataclass(frozen=True)
class Numerology:
    """Timing facts for one subcarrier spacing."""

    scs_khz: int
    mu: int
    symbol_ticks: int

    @property
    def slots_per_ms(self) -> int:
        return 2 ** self.mu

    @property
    def slot_ticks(self) -> int:
        return self.symbol_ticks * SYMBOLS_PER_SLOT

    @property
    def symbol_ms(self) -> Fraction:
        return Fraction(self.symbol_ticks, TICKS_PER_MS)

    @property
    def slot_ms(self) -> Fraction:
        return Fraction(self.slot_ticks, TICKS_PER_MS)


@dataclass(frozen=True)
class TtiConfig:
    """A transmission duration: ``length_os`` symbols at one numerology."""

    numerology: Numerology
    length_os: int

    @property
    def duration_ticks(self) -> int:
        return self.length_os * self.numerology.symbol_ticks

    @property
    def duration_ms(self) -> Fraction:
        return Fraction(self.duration_ticks, TICKS_PER_MS)


def make_numerology(scs_khz: int) -> Numerology:
    if scs_khz not in _MU:
        raise ValueError(f"unsupported subcarrier spacing {scs_khz} kHz, "
                         f"expected one of {SUPPORTED_SCS_KHZ}")
    mu = _MU[scs_khz]
    symbol_ticks = TICKS_PER_MS // (SYMBOLS_PER_SLOT * 2 ** mu)
    return Numerology(scs_khz=scs_khz, mu=mu, symbol_ticks=symbol_ticks)


def make_tti(scs_khz: int, length_os: int) -> TtiConfig:
    if length_os not in SUPPORTED_TTI_OS:
        raise ValueError(f"unsupported TTI length {length_os} os, "
                         f"expected one of {SUPPORTED_TTI_OS}")
    return TtiConfig(numerology=make_numerology(scs_khz), length_os=length_os)


def ticks_to_ms(ticks: int | Fraction) -> Fraction:
    return Fraction(ticks, TICKS_PER_MS)


def symbols_to_ticks(scs_khz: int, symbols: int | Fraction) -> int:
    """Exact symbol count -> ticks; rejects amounts that do not land on a tick."""
    ticks = Fraction(symbols) * make_numerology(scs_khz).symbol_ticks
    if ticks.denominator != 1:
        raise ValueError(f"{symbols} symbols at {scs_khz} kHz is not an "
                         f"integer number of ticks")
    return int(ticks)
