"""Structural invariants of the closed-form model."""

from hypothesis import given
from hypothesis import strategies as st

from nrlatency.numerology import make_numerology
from nrlatency.oracle import worst_case
from nrlatency.profiles import DEFAULT_KNOBS, ProcessingProfile
from nrlatency.report import render_up_csv
from nrlatency.up import harq_rtt_ticks, scenario, up_latency, up_table

DUPLEXES = ("fdd", "tdd-uldl", "tdd-uldldldl")


@st.composite
def scenario_args(draw):
    duplex = draw(st.sampled_from(DUPLEXES))
    tti_choices = (14, 7, 4, 2) if duplex == "fdd" else (14, 7, 4)
    return (
        draw(st.sampled_from(("dl", "ul_cg", "ul_sr"))),
        duplex,
        draw(st.sampled_from((15, 30, 120))),
        draw(st.sampled_from(tti_choices)),
    )


@given(args=scenario_args(), retx=st.integers(1, 3))
def test_retransmissions_are_linear(args, retx):
    base = up_latency(scenario(*args)).total_ticks
    rtt = harq_rtt_ticks(scenario(*args, 1))
    assert up_latency(scenario(*args, retx)).total_ticks == base + retx * rtt


@given(args=scenario_args(), retx=st.integers(0, 3))
def test_tdd_never_beats_fdd(args, retx):
    flow, duplex, scs, tti = args
    tdd = up_latency(scenario(flow, duplex, scs, tti, retx)).total_ms
    fdd = up_latency(scenario(flow, "fdd", scs, tti, retx)).total_ms
    assert tdd >= fdd


@given(args=scenario_args(), retx=st.integers(0, 3))
def test_requesting_a_grant_never_beats_a_configured_one(args, retx):
    _, duplex, scs, tti = args
    with_sr = up_latency(scenario("ul_sr", duplex, scs, tti, retx)).total_ms
    with_cg = up_latency(scenario("ul_cg", duplex, scs, tti, retx)).total_ms
    assert with_sr >= with_cg


# budgets expressed in symbols and equal across SCS: totals measured in
# symbols must then be SCS independent
FLAT_PROFILE = ProcessingProfile(
    ue_decode_os={15: 3, 30: 3, 120: 3},
    ue_prepare_os={15: 5, 30: 5, 120: 5},
    gnb_processing_os={scs: {7: 7, 4: 4, 2: 4} for scs in (15, 30, 120)},
)
FLAT_KNOBS = DEFAULT_KNOBS.replace(
    sr_prep_os={15: 0, 30: 0, 120: 0},
    grant_tx_os={15: "tti", 30: "tti", 120: "tti"},
    tdd_grant_alignment_os={scs: {14: 14, 7: 7, 4: 14} for scs in (15, 30, 120)},
    retx_alignment_os={
        flow: {
            klass: {scs: {14: 6, 7: 6, 4: 6, 2: 6} for scs in (15, 30, 120)}
            for klass in ("fdd", "tdd")
        }
        for flow in ("dl", "ul_cg", "ul_sr")
    },
)


@given(args=scenario_args(), retx=st.integers(0, 3))
def test_totals_scale_with_symbol_duration(args, retx):
    flow, duplex, _, tti = args
    symbol_totals = set()
    for scs in (15, 30, 120):
        result = up_latency(scenario(flow, duplex, scs, tti, retx),
                            FLAT_PROFILE, FLAT_KNOBS)
        ticks_per_os = make_numerology(scs).symbol_ticks
        assert result.total_ticks % ticks_per_os == 0
        symbol_totals.add(result.total_ticks // ticks_per_os)
    assert len(symbol_totals) == 1


@given(args=scenario_args(), retx=st.integers(0, 3), bump=st.integers(0, 6))
def test_alignment_knobs_are_monotone(args, retx, bump):
    flow, duplex, scs, tti = args
    sc = scenario(flow, duplex, scs, tti, retx)
    base = up_latency(sc).total_ticks

    field = "dl_alignment_os" if flow == "dl" else "ul_cg_alignment_os"
    table = dict(getattr(DEFAULT_KNOBS, field))
    table[tti] += bump
    bumped = up_latency(sc, knobs=DEFAULT_KNOBS.replace(**{field: table}))
    per_os = make_numerology(scs).symbol_ticks
    # the data-stage wait enters the total exactly once
    assert bumped.total_ticks == base + bump * per_os


@given(args=scenario_args(), retx=st.integers(1, 3), bump=st.integers(0, 4))
def test_feedback_knobs_price_every_round_trip(args, retx, bump):
    sc = scenario(*args, retx)
    base = up_latency(sc).total_ticks
    bumped = up_latency(
        sc, knobs=DEFAULT_KNOBS.replace(harq_feedback_os=1 + bump)
    )
    per_os = make_numerology(sc.scs_khz).symbol_ticks
    assert bumped.total_ticks == base + retx * bump * per_os


@given(args=scenario_args(), retx=st.integers(0, 3))
def test_closed_form_is_deterministic(args, retx):
    sc = scenario(*args, retx)
    assert up_latency(sc) == up_latency(sc)


def test_table_and_render_are_deterministic():
    cells = up_table("tdd-uldl")
    again = up_table("tdd-uldl")
    assert [c.total_ms for c in cells] == [c.total_ms for c in again]
    assert render_up_csv(cells) == render_up_csv(again)


def test_oracle_is_deterministic():
    sc = scenario("ul_sr", "tdd-uldl", 30, 7, 1)
    assert worst_case(sc) == worst_case(sc)
