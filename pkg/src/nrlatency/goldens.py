"""Loaders for the bundled reference tables.

The package ships three CSV files under ``nrlatency/data/`` holding the
published worst-case latencies that the default assumption profile is
calibrated against.  Each row carries the name of the table it came from so
reports can state the origin of every regression target.  The files are
treated as immutable: a SHA-256 checksum is pinned here for each one and
verified on load, so a silently edited target can never masquerade as a
calibration success.

Published values are kept as strings at their original printed precision.
Matching a computed value against one is a statement about rounded output,
not about exact arithmetic, and goes through
:func:`nrlatency.rounding.matches_printed`.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import NrLatencyError

DATA_PACKAGE = "nrlatency.data"

# file name -> pinned SHA-256 of the exact bytes shipped with the package
CHECKSUMS = {
    "up_fdd.csv": "c77e8d64f0688b544b226cda214c27a26de9d0589aceffbb51779f225f757d7e",
    "up_tdd.csv": "43c04a51eb36fc1ae2ffda3b059c34f43eb3af94027f46d0183782aed990189e",
    "cp_achievable.csv": "ed9bb2dd63dfce8e9dd4c63b3bb889a8d15524db41346a03be8891a3034f2b7c",
}


class GoldenDataError(NrLatencyError):
    """A bundled reference table is missing, malformed, or was modified."""


@dataclass(frozen=True)
class UpGoldenCell:
    """One published user-plane worst-case latency."""

    table: str
    flow: str
    duplex: str
    scs_khz: int
    tti_os: int
    harq_retx: int
    published: str

    @property
    def published_ms(self) -> Fraction:
        return Fraction(self.published)


@dataclass(frozen=True)
class CpGoldenCell:
    """One published control-plane achievable latency."""

    table: str
    duplex: str
    scs_khz: int
    tti_os: int
    published: str

    @property
    def published_ms(self) -> Fraction:
        return Fraction(self.published)


def _read_data_file(name: str) -> str:
    if name not in CHECKSUMS:
        raise GoldenDataError(f"unknown reference table {name!r}")
    try:
        raw = resources.files(DATA_PACKAGE).joinpath(name).read_bytes()
    except FileNotFoundError as exc:
        raise GoldenDataError(f"bundled reference table {name!r} not found") from exc
    digest = hashlib.sha256(raw).hexdigest()
    if digest != CHECKSUMS[name]:
        raise GoldenDataError(
            f"reference table {name!r} checksum mismatch: "
            f"expected {CHECKSUMS[name]}, got {digest}"
        )
    return raw.decode("ascii")


def _rows(text: str) -> list[dict[str, str]]:
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(lines))


def load_up_goldens() -> tuple[UpGoldenCell, ...]:
    """All published user-plane cells, FDD table first, file order preserved."""
    cells = []
    for name in ("up_fdd.csv", "up_tdd.csv"):
        for row in _rows(_read_data_file(name)):
            cells.append(
                UpGoldenCell(
                    table=row["table"],
                    flow=row["flow"],
                    duplex=row["duplex"],
                    scs_khz=int(row["scs_khz"]),
                    tti_os=int(row["tti_os"]),
                    harq_retx=int(row["harq_retx"]),
                    published=row["published_ms"],
                )
            )
    return tuple(cells)


def load_cp_goldens() -> tuple[CpGoldenCell, ...]:
    """All published control-plane cells in file order."""
    cells = []
    for row in _rows(_read_data_file("cp_achievable.csv")):
        cells.append(
            CpGoldenCell(
                table=row["table"],
                duplex=row["duplex"],
                scs_khz=int(row["scs_khz"]),
                tti_os=int(row["tti_os"]),
                published=row["published_ms"],
            )
        )
    return tuple(cells)
