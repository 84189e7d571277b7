"""Whole-plane scanning paths and optimal path selection.

Candidate set (ids are part of the key format):

====  ==============================================================
 id   path
====  ==============================================================
 0    raster, row-major
 1    row snake (boustrophedon), first row left to right
 2    column-major
 3    column snake, first column top to bottom
 4    diagonal zigzag in JPEG order: (0,0), (0,1), (1,0), (2,0), ...
 5    inward clockwise spiral starting at the top-left corner
 6    inward counterclockwise spiral starting at the top-right corner
 7    Hilbert curve (square power-of-two planes only)
====  ==============================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bitplane import BitPlane
from .bits import as_bits

NUM_PATTERNS = 8
PATTERN_NAMES = (
    "raster",
    "row-snake",
    "column-major",
    "column-snake",
    "zigzag",
    "spiral-cw",
    "spiral-ccw",
    "hilbert",
)


@dataclass(frozen=True, eq=False)
class ScanPath:
    """A bijective visiting order over the cells of a ``height x width`` plane.

    ``order`` is an ``(N, 2)`` array of ``(row, col)`` pairs.
    """

    pattern_id: int
    width: int
    height: int
    order: np.ndarray

    @property
    def flat_index(self) -> np.ndarray:
        """Row-major cell index for each step of the path."""
        return self.order[:, 0] * self.width + self.order[:, 1]

    @property
    def name(self) -> str:
        return PATTERN_NAMES[self.pattern_id]


def _raster(h, w):
    return [(r, c) for r in range(h) for c in range(w)]


def _row_snake(h, w):
    return [(r, c if r % 2 == 0 else w - 1 - c) for r in range(h) for c in range(w)]


def _column_major(h, w):
    return [(r, c) for c in range(w) for r in range(h)]


def _column_snake(h, w):
    return [(r if c % 2 == 0 else h - 1 - r, c) for c in range(w) for r in range(h)]


def _zigzag(h, w):
    cells = []
    for s in range(h + w - 1):
        lo, hi = max(0, s - w + 1), min(s, h - 1)
        rows = range(lo, hi + 1) if s % 2 else range(hi, lo - 1, -1)
        cells.extend((r, s - r) for r in rows)
    return cells


def _spiral(h, w, clockwise):
    top, bottom, left, right = 0, h - 1, 0, w - 1
    cells = []
    while top <= bottom and left <= right:
        if clockwise:
            cells.extend((top, c) for c in range(left, right + 1))
            cells.extend((r, right) for r in range(top + 1, bottom + 1))
            if top < bottom:
                cells.extend((bottom, c) for c in range(right - 1, left - 1, -1))
            if left < right:
                cells.extend((r, left) for r in range(bottom - 1, top, -1))
        else:
            cells.extend((top, c) for c in range(right, left - 1, -1))
            cells.extend((r, left) for r in range(top + 1, bottom + 1))
            if top < bottom:
                cells.extend((bottom, c) for c in range(left + 1, right + 1))
            if left < right:
                cells.extend((r, right) for r in range(bottom - 1, top, -1))
        top, bottom, left, right = top + 1, bottom - 1, left + 1, right - 1
    return cells


def _hilbert(n):
    # iterative distance -> (x, y) conversion, vectorised over all distances
    t = np.arange(n * n, dtype=np.int64)
    x = np.zeros_like(t)
    y = np.zeros_like(t)
    s = 1
    while s < n:
        rx = (t >> 1) & 1
        ry = (t ^ rx) & 1
        flip = (ry == 0) & (rx == 1)
        x = np.where(flip, s - 1 - x, x)
        y = np.where(flip, s - 1 - y, y)
        swap = ry == 0
        x, y = np.where(swap, y, x), np.where(swap, x, y)
        x += s * rx
        y += s * ry
        t >>= 2
        s <<= 1
    return np.stack([y, x], axis=1)


@lru_cache(maxsize=64)
def _cached_order(pattern_id, width, height):
    h, w = height, width
    if pattern_id == 0:
        cells = _raster(h, w)
    elif pattern_id == 1:
        cells = _row_snake(h, w)
    elif pattern_id == 2:
        cells = _column_major(h, w)
    elif pattern_id == 3:
        cells = _column_snake(h, w)
    elif pattern_id == 4:
        cells = _zigzag(h, w)
    elif pattern_id == 5:
        cells = _spiral(h, w, clockwise=True)
    elif pattern_id == 6:
        cells = _spiral(h, w, clockwise=False)
    else:
        if w != h or w & (w - 1):
            raise ValueError(f"Hilbert path needs a square power-of-two plane, got {w}x{h}")
        cells = _hilbert(w)
    order = np.asarray(cells, dtype=np.int64).reshape(-1, 2)
    order.setflags(write=False)
    return order


def generate_path(pattern_id: int, width: int, height: int) -> ScanPath:
    if not 0 <= pattern_id < NUM_PATTERNS:
        raise ValueError(f"unknown scan pattern id {pattern_id}")
    if width < 1 or height < 1:
        raise ValueError(f"invalid plane dimensions {width}x{height}")
    return ScanPath(pattern_id, width, height, _cached_order(pattern_id, width, height))


def _check_dims(path: ScanPath, height: int, width: int):
    if (path.height, path.width) != (height, width):
        raise ValueError(
            f"path is {path.width}x{path.height} but plane is {width}x{height}"
        )


def linearize(plane: BitPlane, path: ScanPath) -> np.ndarray:
    """Read the plane's bits in path order."""
    _check_dims(path, plane.height, plane.width)
    return plane.bits.reshape(-1)[path.flat_index]


def delinearize(bits, path: ScanPath, level: int = 0) -> BitPlane:
    """Write a path-ordered bit string back onto the plane grid."""
    bits = as_bits(bits)
    if bits.size != path.width * path.height:
        raise ValueError(
            f"expected {path.width * path.height} bits for a {path.width}x{path.height} plane, "
            f"got {bits.size}"
        )
    flat = np.empty(bits.size, dtype=np.uint8)
    flat[path.flat_index] = bits
    return BitPlane(level, flat.reshape(path.height, path.width))


def select_optimal_path(plane: BitPlane) -> tuple[ScanPath, int]:
    """Exhaustively pick the candidate path with the smallest run-encoded size.

    Ties go to the smallest pattern id.
    """
    from .rle2d import encoded_bit_count

    best = None
    for pid in range(NUM_PATTERNS):
        path = generate_path(pid, plane.width, plane.height)
        size = encoded_bit_count(plane, path)
        if best is None or size < best[1]:
            best = (path, size)
    return best
