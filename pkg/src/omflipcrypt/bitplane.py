"""Bit-plane decomposition of 8-bit images and weighted recomposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image_io import NUM_PLANES, GrayImage


@dataclass(frozen=True, eq=False)
class BitPlane:
    """Binary matrix holding bit ``level`` (0 = least significant) of every pixel."""

    level: int
    bits: np.ndarray

    def __post_init__(self):
        if not 0 <= self.level < NUM_PLANES:
            raise ValueError(f"plane level must be in [0, {NUM_PLANES - 1}], got {self.level}")
        arr = np.asarray(self.bits)
        if arr.ndim != 2:
            raise ValueError(f"bit plane must be 2-D, got shape {arr.shape}")
        if arr.size and arr.max() > 1:
            raise ValueError("bit plane entries must be 0 or 1")
        arr = np.array(arr, dtype=np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BitPlane):
            return NotImplemented
        return self.level == other.level and np.array_equal(self.bits, other.bits)


def decompose(img: GrayImage) -> list[BitPlane]:
    """Split ``img`` into its eight planes, ordered b0 (LSB) .. b7 (MSB)."""
    return [BitPlane(l, (img.pixels >> l) & 1) for l in range(NUM_PLANES)]


def compose(planes) -> GrayImage:
    """Rebuild the image as the sum of planes weighted by ``2**level``."""
    planes = list(planes)
    levels = sorted(p.level for p in planes)
    if levels != list(range(NUM_PLANES)):
        raise ValueError(f"need each level 0..{NUM_PLANES - 1} exactly once, got {levels}")
    shapes = {p.bits.shape for p in planes}
    if len(shapes) != 1:
        raise ValueError(f"bit planes have mismatched dimensions: {sorted(shapes)}")
    acc = np.zeros(shapes.pop(), dtype=np.uint16)
    for p in planes:
        acc += p.bits.astype(np.uint16) << p.level
    return GrayImage(acc.astype(np.uint8))
