"""Zeta-zero ordinate tables: loading, validation, serialization.

File format: plain text, one decimal ordinate per line, strictly
ascending, '#' comments and blank lines allowed.  Files ending in .gz
are decompressed transparently.  The package ships a fixture table of
the first 100000 ordinates under data/ (generated and cross-verified by
scripts/generate_zeros.py; see that script for the verification
protocol).
"""

from __future__ import annotations

import gzip
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, Union

import numpy as np

__all__ = ["ZeroTable", "load_zeros", "write_zeros", "count_check",
           "default_zeros_path", "load_default_zeros", "rvm_count",
           "FIRST_ZERO"]

FIRST_ZERO = 14.134725141734693


@dataclass(frozen=True)
class ZeroTable:
    """Strictly ascending positive ordinates gamma with zeta(1/2+i*gamma)=0."""

    gammas: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.gammas.setflags(write=False)

    def __len__(self) -> int:
        return len(self.gammas)

    @property
    def max_height(self) -> float:
        return float(self.gammas[-1]) if len(self.gammas) else 0.0

    def upto(self, T: float) -> np.ndarray:
        """Ordinates gamma <= T (a view, ascending)."""
        k = int(np.searchsorted(self.gammas, T, side="right"))
        return self.gammas[:k]


class ZeroLoadError(ValueError):
    """Raised on malformed zero files; message carries the line number."""


def _open_text(path: Union[str, Path]):
    path = Path(path)
    raw = path.open("rb")
    head = raw.read(2)
    raw.seek(0)
    if head == b"\x1f\x8b":
        return io.TextIOWrapper(gzip.GzipFile(fileobj=raw), encoding="ascii")
    return io.TextIOWrapper(raw, encoding="ascii")


def load_zeros(path: Union[str, Path]) -> ZeroTable:
    """Load and validate an ordinate table.

    Args:
        path: Text file (optionally gzipped), one ordinate per line.

    Returns:
        Validated ZeroTable.  An empty file gives an empty table.

    Raises:
        ZeroLoadError: Unparseable, non-positive, non-ascending entries,
            ordinates at or below 14, or a first entry that sits near
            but not at the first zero 14.134725.
        OSError: Missing or unreadable file.
    """
    vals = []
    prev = -math.inf
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                g = float(text)
            except ValueError:
                raise ZeroLoadError(
                    f"{path}: line {lineno}: cannot parse ordinate {text!r}")
            if not math.isfinite(g) or g <= 0:
                raise ZeroLoadError(
                    f"{path}: line {lineno}: ordinate must be positive, "
                    f"got {text}")
            if g <= 14.0:
                raise ZeroLoadError(
                    f"{path}: line {lineno}: ordinate {g} at or below 14; "
                    "no nontrivial zero lies there")
            if g <= prev:
                raise ZeroLoadError(
                    f"{path}: line {lineno}: ordinates must ascend strictly "
                    f"({g} after {prev})")
            prev = g
            vals.append(g)
    if vals and vals[0] < 14.5 and abs(vals[0] - FIRST_ZERO) > 1e-4:
        raise ZeroLoadError(
            f"{path}: line 1: first entry {vals[0]} claims to be the first "
            f"zero but differs from {FIRST_ZERO:.6f} by more than 1e-4")
    return ZeroTable(gammas=np.array(vals, dtype=np.float64))


def write_zeros(table: ZeroTable, path: Union[str, Path],
                header: str = "") -> None:
    """Serialize a table, one ordinate per line at 10 decimal places."""
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "wt") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for g in table.gammas:
            fh.write(f"{g:.10f}\n")


def rvm_count(T: float) -> float:
    """Riemann-von Mangoldt main term (T/2pi) log(T/(2pi e)) + 7/8."""
    return T / (2.0 * math.pi) * math.log(T / (2.0 * math.pi * math.e)) + 0.875


def count_check(table: ZeroTable, T: float) -> Dict[str, object]:
    """Compare the table's zero count below T against the RvM asymptotic.

    Flags when |N_table(T) - N_RvM(T)| > 2 + 0.2*log(T), which catches
    missing or duplicated zeros in corrupted tables.

    Raises:
        ValueError: T above the table's max height (the count would be
            silently truncated) or T <= 0.
    """
    if T <= 0:
        raise ValueError("need T > 0")
    if len(table) == 0 or T > table.max_height:
        raise ValueError(
            f"T = {T} beyond table height {table.max_height}; "
            "count below T would be unreliable")
    n_table = int(np.searchsorted(table.gammas, T, side="right"))
    n_rvm = rvm_count(T)
    tol = 2.0 + 0.2 * math.log(T)
    disc = abs(n_table - n_rvm)
    return {
        "T": T,
        "n_table": n_table,
        "n_rvm": n_rvm,
        "discrepancy": disc,
        "tolerance": tol,
        "passed": disc <= tol,
    }


def default_zeros_path() -> Path:
    """Path of the bundled 100000-ordinate fixture."""
    ref = resources.files("smoothlab").joinpath("data/zeros_100k.txt.gz")
    with resources.as_file(ref) as p:
        return Path(p)


def load_default_zeros() -> ZeroTable:
    return load_zeros(default_zeros_path())
