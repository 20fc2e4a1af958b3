"""Exception types shared across the package."""

from __future__ import annotations


class NrLatencyError(Exception):
    """Base class for all package errors."""


class UnsupportedScenarioError(NrLatencyError):
    """Raised for parameter combinations the model deliberately rejects.

    The canonical case is a 2-symbol mini-slot on a TDD pattern: a 2 os
    transmission cannot be scheduled against alternating-direction slots
    without straddling a direction change, so the combination is refused
    rather than silently approximated.
    """


class ConfigError(NrLatencyError):
    """Raised when a scenario configuration fails validation.

    Carries the full list of validation problems so callers can report
    every mistake at once instead of one per run.
    """

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ProfileError(NrLatencyError):
    """Raised when a named assumption profile cannot be found or parsed."""
