"""Coefficient-sequence sources for the CLI and experiments.

Randomness comes from numpy's PCG64 so that a named seed reproduces the same
sequence bit-for-bit across runs and platforms.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .modular import mobius
from .sieve import CoefficientSequence


class FormatError(ValueError):
    """Malformed line in a sequence file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class LengthMismatch(ValueError):
    """Sequence file does not hold exactly N lines."""


def load_sequence(
    source: str, M: int, N: int, seed: int | None = None
) -> CoefficientSequence:
    """Build a_n for n = M+1..M+N from a named source.

    Sources: "ones", "random" (re/im uniform in [-1, 1], seeded), "mobius",
    or "file:PATH" with one "<re> <im>" pair per line.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if source == "ones":
        values = np.ones(N, dtype=complex)
    elif source == "random":
        if seed is None:
            raise ValueError("random source requires a seed")
        rng = np.random.Generator(np.random.PCG64(seed))
        values = rng.uniform(-1, 1, N) + 1j * rng.uniform(-1, 1, N)
    elif source == "mobius":
        values = np.array([mobius(n) for n in range(M + 1, M + 1 + N)], dtype=complex)
    elif source.startswith("file:"):
        values = _read_file(Path(source[5:]), N)
    else:
        raise ValueError(f"unknown sequence source {source!r}")
    return CoefficientSequence(M=M, values=values)


def _read_file(path: Path, N: int) -> np.ndarray:
    lines = path.read_text().splitlines()
    lines = [ln for ln in lines if ln.strip()]
    if len(lines) != N:
        raise LengthMismatch(f"expected {N} lines, found {len(lines)}")
    values = np.zeros(N, dtype=complex)
    for i, line in enumerate(lines, start=1):
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(i, f"expected '<re> <im>', got {line!r}")
        try:
            values[i - 1] = complex(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise FormatError(i, str(exc)) from None
    return values
