"""Run encoding of path-linearized planes and fixed-width run packing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import as_bits
from .scanpath import linearize


@dataclass(frozen=True)
class RunsEncoding:
    first_bit: int
    runs: tuple[int, ...]

    @property
    def max_run(self) -> int:
        return max(self.runs)

    @property
    def field_width(self) -> int:
        """Bits per packed run: ``ceil(log2(max_run + 1))``."""
        return self.max_run.bit_length()

    @property
    def length(self) -> int:
        return sum(self.runs)


def run_lengths(bits) -> np.ndarray:
    """Lengths of the maximal constant runs of a non-empty bit string."""
    bits = as_bits(bits)
    if bits.size == 0:
        raise ValueError("cannot run-encode an empty bit string")
    edges = np.flatnonzero(np.diff(bits)) + 1
    bounds = np.concatenate(([0], edges, [bits.size]))
    return np.diff(bounds)


def encode_runs(bits) -> RunsEncoding:
    bits = as_bits(bits)
    runs = run_lengths(bits)
    return RunsEncoding(int(bits[0]), tuple(int(r) for r in runs))


def decode_runs(enc: RunsEncoding) -> np.ndarray:
    runs = np.asarray(enc.runs, dtype=np.int64)
    if runs.size == 0 or (runs < 1).any():
        raise ValueError("run lengths must be positive")
    values = (np.arange(runs.size) + enc.first_bit) % 2
    return np.repeat(values.astype(np.uint8), runs)


def pack_runs(enc: RunsEncoding, field_width: int | None = None) -> np.ndarray:
    """Concatenate every run as a big-endian field of ``field_width`` bits."""
    b = enc.field_width if field_width is None else field_width
    runs = np.asarray(enc.runs, dtype=np.int64)
    if b < 1 or (runs >> b).any():
        raise ValueError(f"run of length {int(runs.max())} does not fit in {b} bits")
    shifts = np.arange(b - 1, -1, -1)
    return ((runs[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)


def unpack_runs(bits, field_width: int, run_count: int) -> np.ndarray:
    """Inverse of :func:`pack_runs`; rejects zero-length runs."""
    bits = as_bits(bits)
    if field_width < 1:
        raise ValueError(f"field width must be positive, got {field_width}")
    if bits.size != field_width * run_count:
        raise ValueError(
            f"expected {run_count} x {field_width} = {run_count * field_width} bits, "
            f"got {bits.size}"
        )
    weights = 1 << np.arange(field_width - 1, -1, -1, dtype=np.int64)
    runs = bits.reshape(run_count, field_width).astype(np.int64) @ weights
    if (runs == 0).any():
        raise ValueError(f"zero-length run at position {int(np.argmax(runs == 0))}")
    return runs


def encoded_bit_count(plane, path) -> int:
    """Packed size of the plane along ``path`` plus one bit for the first value."""
    runs = run_lengths(linearize(plane, path))
    return runs.size * int(runs.max()).bit_length() + 1
