"""Exact decimal rounding and display formatting for millisecond values.

Two distinct mechanisms live here on purpose:

* ``matches_printed`` compares an exact value against a published table
  entry at that entry's own printed precision ("2" accepts anything in
  [1.5, 2.5), "0.96" only [0.955, 0.965)). Regression tests use this.
* ``fmt_ms`` renders a value for reports at two significant figures
  with trailing fractional zeros dropped (0.7, 3, 0.48), the user-plane
  table convention. ``fmt_cp_ms`` rounds to one decimal and keeps a
  trailing .0 below ten (8.0, 10.5, 20), the control-plane convention.
  Rendering never feeds back into comparisons.

All rounding is half-away-from-zero, matching how the published tables
were evidently produced (x.x5 rounds up in magnitude).
"""

from __future__ import annotations

from fractions import Fraction


def round_half_away(value: Fraction, decimals: int) -> Fraction:
    """Round to ``decimals`` places, ties away from zero."""
    q = 10 ** decimals
    scaled = Fraction(value) * q
    if scaled >= 0:
        units = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    else:
        units = -((-2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator))
    return Fraction(units, q)


def _decimals_for_2sf(value: Fraction) -> int:
    # 2 significant figures: >=10 -> 0 decimals, [1,10) -> 1, [0.1,1) -> 2, ...
    mag = abs(value)
    if mag >= 10:
        return 0
    decimals = 1
    bound = Fraction(1)
    while mag < bound and decimals < 12:
        bound /= 10
        decimals += 1
    return decimals


def _render_fixed(value: Fraction, decimals: int) -> str:
    units = round_half_away(value, decimals) * 10 ** decimals
    assert units.denominator == 1
    n = int(units)
    sign = "-" if n < 0 else ""
    digits = str(abs(n)).rjust(decimals + 1, "0")
    if decimals == 0:
        return sign + digits
    return f"{sign}{digits[:-decimals]}.{digits[-decimals:]}"


def fmt_ms(value: Fraction | int) -> str:
    """Format an exact millisecond value at two significant figures."""
    value = Fraction(value)
    if value == 0:
        return "0"
    decimals = _decimals_for_2sf(value)
    rounded = round_half_away(value, decimals)
    # Rounding may cross a power of ten (0.995 -> 1.0); re-derive width.
    decimals2 = _decimals_for_2sf(rounded) if rounded != 0 else decimals
    if decimals2 != decimals:
        decimals = decimals2
        rounded = round_half_away(value, decimals)
    text = _render_fixed(rounded, decimals)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def fmt_cp_ms(value: Fraction | int) -> str:
    """Format a control-plane total: one decimal, bare integers from ten."""
    rounded = round_half_away(Fraction(value), 1)
    if rounded.denominator == 1 and abs(rounded) >= 10:
        return str(int(rounded))
    return _render_fixed(value, 1)


def printed_decimals(printed: str) -> int:
    printed = printed.strip()
    return len(printed.split(".", 1)[1]) if "." in printed else 0


def matches_printed(value: Fraction, printed: str) -> bool:
    """True if ``value`` rounds to ``printed`` at its own precision."""
    decimals = printed_decimals(printed)
    return round_half_away(value, decimals) == Fraction(printed.strip())
