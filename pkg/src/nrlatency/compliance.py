"""IMT-2020 latency compliance checks.

The submission targets are 4 ms (eMBB) and 1 ms (URLLC) for the
user plane and 20 ms for the control plane, with 10 ms encouraged for
URLLC control.  A service class is "met" when at least one evaluated
configuration comes in at or under the target; radio interfaces are
judged on their best achievable configuration, not on every possible
one.  ``strict=True`` flips that to require every evaluated cell to
qualify.

Each service class is evaluated over a fixed scope of configurations:

- user-plane eMBB: the FDD table at 15 kHz, all flows and TTI lengths,
  0 to 3 retransmissions (the wide-area deployment family);
- user-plane URLLC: the FDD table over every SCS and TTI length, 0 to
  3 retransmissions, grant-free flows only (DL and configured grant;
  waiting for an SR-triggered grant is not a URLLC strategy);
- control-plane eMBB: both TDD patterns at full-slot TTIs;
- control-plane URLLC: all duplex presets at the 4-symbol TTI.

Custom scopes go through :func:`evaluate_totals` directly.

All totals are exact; the reported "obtained" range spans the
qualifying cells and is formatted at two significant figures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cp import cp_latency_ms
from .frame import PRESETS
from .profiles import DEFAULT_KNOBS, DEFAULT_PROFILE, AssumptionKnobs, ProcessingProfile
from .rounding import fmt_ms
from .up import MAX_HARQ_RETX, up_latency, scenario

UP_EMBB_MS = Fraction(4)
UP_URLLC_MS = Fraction(1)
CP_MS = Fraction(20)
CP_URLLC_ENCOURAGED_MS = Fraction(10)


@dataclass(frozen=True)
class Requirement:
    plane: str      # "up" or "cp"
    service: str    # "embb" or "urllc"
    required_ms: Fraction
    encouraged_ms: Fraction | None = None

    @property
    def name(self) -> str:
        return f"{self.plane}/{self.service}"


REQUIREMENTS = (
    Requirement("cp", "embb", CP_MS),
    Requirement("cp", "urllc", CP_MS, encouraged_ms=CP_URLLC_ENCOURAGED_MS),
    Requirement("up", "embb", UP_EMBB_MS),
    Requirement("up", "urllc", UP_URLLC_MS),
)


def threshold_tag(total_ms: Fraction) -> str:
    """Classify an exact user-plane total against both targets."""
    if total_ms <= UP_URLLC_MS:
        return "urllc_ok"
    if total_ms <= UP_EMBB_MS:
        return "embb_ok"
    return "above"


@dataclass(frozen=True)
class ComplianceVerdict:
    requirement: Requirement
    evaluated: int
    qualifying: int
    lo_ms: Fraction | None   # over qualifying cells
    hi_ms: Fraction | None

    @property
    def met(self) -> bool:
        return self.qualifying > 0

    @property
    def met_strict(self) -> bool:
        return self.qualifying == self.evaluated and self.evaluated > 0

    @property
    def obtained(self) -> str:
        if self.qualifying == 0:
            return "none"
        if self.lo_ms == self.hi_ms:
            return fmt_ms(self.lo_ms)
        return f"{fmt_ms(self.lo_ms)}-{fmt_ms(self.hi_ms)}"


def _up_scope_totals(service: str,
                     profile: ProcessingProfile,
                     knobs: AssumptionKnobs) -> list[Fraction]:
    flows = ("dl", "ul_cg", "ul_sr") if service == "embb" else ("dl", "ul_cg")
    scs_list = (15,) if service == "embb" else (15, 30, 120)
    totals = []
    for flow in flows:
        for scs in scs_list:
            for tti in (14, 7, 4, 2):
                for retx in range(MAX_HARQ_RETX + 1):
                    sc = scenario(flow, "fdd", scs, tti, retx)
                    totals.append(up_latency(sc, profile, knobs).total_ms)
    return totals


def _cp_scope_totals(service: str) -> list[Fraction]:
    if service == "embb":
        duplexes = ("tdd-uldl", "tdd-uldldldl")
        tti = 14
    else:
        duplexes = tuple(PRESETS)
        tti = 4
    return [cp_latency_ms(duplex, scs, tti)
            for duplex in duplexes for scs in (15, 30, 120)]


def evaluate_totals(requirement: Requirement,
                    totals: list[Fraction]) -> ComplianceVerdict:
    """Judge an arbitrary set of exact latency totals."""
    if not totals:
        raise ValueError("empty result set, nothing to judge")
    qualifying = [t for t in totals if t <= requirement.required_ms]
    return ComplianceVerdict(
        requirement=requirement,
        evaluated=len(totals),
        qualifying=len(qualifying),
        lo_ms=min(qualifying) if qualifying else None,
        hi_ms=max(qualifying) if qualifying else None,
    )


def evaluate(requirement: Requirement,
             profile: ProcessingProfile = DEFAULT_PROFILE,
             knobs: AssumptionKnobs = DEFAULT_KNOBS) -> ComplianceVerdict:
    if requirement.plane == "up":
        totals = _up_scope_totals(requirement.service, profile, knobs)
    else:
        totals = _cp_scope_totals(requirement.service)
    return evaluate_totals(requirement, totals)


def default_verdicts(profile: ProcessingProfile = DEFAULT_PROFILE,
                     knobs: AssumptionKnobs = DEFAULT_KNOBS,
                     ) -> tuple[ComplianceVerdict, ...]:
    """All four requirement verdicts under one profile."""
    return tuple(evaluate(r, profile, knobs) for r in REQUIREMENTS)
