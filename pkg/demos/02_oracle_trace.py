"""Cross-check one closed-form total against the timeline oracle.

The closed form sums worst-case component budgets; the oracle actually
schedules the transmission chain on a symbol-level timeline for every
arrival offset in one hyperperiod and takes the maximum. The two are
independent routes to the same number, which is the point: a bug in
either shows up as a gap here.

    python3 demos/02_oracle_trace.py
"""

from fractions import Fraction

from nrlatency import explain, scenario, up_latency, worst_case
from nrlatency.numerology import make_numerology

sc = scenario("dl", "tdd-uldl", 30, 14)
closed = up_latency(sc)
oracle = worst_case(sc)

print(f"closed form : {float(closed.total_ms):.4f} ms ({closed.total_ms} exact)")
print(f"oracle      : {float(oracle.worst_ms):.4f} ms ({oracle.worst_ms} exact)")
gap = (oracle.worst_ms - closed.total_ms) / make_numerology(sc.scs_khz).symbol_ms
print(f"gap         : {float(gap):+.4f} symbols")
print()

# The worst trace, event by event. The arrival lands just after a slot
# boundary, which is what makes it the worst arrival.
print(explain(oracle))
print()

# Refining the arrival lattice can only raise the oracle's maximum, and
# it converges quickly: the supremum sits epsilon after a boundary.
for resolution in (1, 2, 4, 16):
    worst = worst_case(sc, resolution=resolution).worst_ms
    print(f"resolution {resolution:>2} steps/tick: worst {float(worst):.6f} ms")
print()

# With no dispatch margin the friendliest arrival hits an occasion
# exactly; the spread over offsets is the cost of bad timing.
sweep = worst_case(scenario("dl", "fdd", 15, 14),
                   dispatch_margin_os=0, keep_per_offset=True)
best = min(latency for _, latency in sweep.per_offset)
print(f"fdd dl 15 kHz/14 os, no margin: best {best} ms "
      f"({best * 14} symbols), worst {sweep.worst_ms} ms")
assert best == Fraction(31, 14)
