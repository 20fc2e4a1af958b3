"""Tick arithmetic must be exact for every supported numerology."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrlatency.numerology import (
    SUPPORTED_SCS_KHZ,
    SUPPORTED_TTI_OS,
    SYMBOLS_PER_SLOT,
    TICKS_PER_MS,
    make_numerology,
    make_tti,
    symbols_to_ticks,
    ticks_to_ms,
)


def test_symbol_tick_counts_are_exact_integers():
    assert make_numerology(15).symbol_ticks == 8
    assert make_numerology(30).symbol_ticks == 4
    assert make_numerology(120).symbol_ticks == 1
    for scs in SUPPORTED_SCS_KHZ:
        n = make_numerology(scs)
        assert n.symbol_ticks * SYMBOLS_PER_SLOT * n.slots_per_ms == TICKS_PER_MS


def test_slot_durations():
    assert make_numerology(15).slot_ms == 1
    assert make_numerology(30).slot_ms == Fraction(1, 2)
    assert make_numerology(120).slot_ms == Fraction(1, 8)
    assert make_numerology(120).slots_per_ms == 8


def test_tti_durations():
    assert make_tti(15, 14).duration_ms == 1
    assert make_tti(15, 4).duration_ms == Fraction(4, 14)
    assert make_tti(30, 7).duration_ms == Fraction(1, 4)
    assert make_tti(120, 2).duration_ms == Fraction(2, 112)
    for scs in SUPPORTED_SCS_KHZ:
        for tti in SUPPORTED_TTI_OS:
            cfg = make_tti(scs, tti)
            assert cfg.duration_ticks == tti * cfg.numerology.symbol_ticks


def test_unsupported_values_are_rejected():
    with pytest.raises(ValueError):
        make_numerology(60)
    with pytest.raises(ValueError):
        make_tti(15, 3)
    with pytest.raises(ValueError):
        symbols_to_ticks(240, 1)


def test_ticks_to_ms_is_exact():
    assert ticks_to_ms(112) == 1
    assert ticks_to_ms(1) == Fraction(1, 112)
    assert ticks_to_ms(0) == 0


def test_half_symbols_are_integral_below_mmwave():
    assert symbols_to_ticks(15, Fraction(1, 2)) == 4
    assert symbols_to_ticks(30, Fraction(9, 2)) == 18
    # a 120 kHz symbol is already one tick, halves cannot be represented
    with pytest.raises(ValueError):
        symbols_to_ticks(120, Fraction(1, 2))


@given(scs=st.sampled_from(SUPPORTED_SCS_KHZ), symbols=st.integers(0, 500))
def test_symbol_tick_round_trip(scs, symbols):
    ticks = symbols_to_ticks(scs, symbols)
    assert ticks_to_ms(ticks) == symbols * make_numerology(scs).symbol_ms
