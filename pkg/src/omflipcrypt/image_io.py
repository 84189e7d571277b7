"""Grayscale PGM images and the ciphertext container format.

Container layout (all integers big-endian unsigned)::

    b"OMFC1"  width:u32  height:u32  8 x { bit_length:u32  payload }

Each payload holds ``ceil(bit_length / 8)`` bytes, bits packed MSB-first with
zero padding. Records are stored in transmission order; which record belongs
to which bit plane is part of the key, not the container.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .bits import pack_bits, unpack_bits
from .errors import ContainerFormatError, ImageFormatError

CONTAINER_MAGIC = b"OMFC1"
NUM_PLANES = 8
MIN_SIZE = 2
MAX_SIZE = 512

_WHITESPACE = b" \t\n\r\v\f"


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def check_dimensions(width: int, height: int) -> None:
    if width != height:
        raise ImageFormatError(f"image must be square, got {width}x{height}")
    if not _is_pow2(width) or not MIN_SIZE <= width <= MAX_SIZE:
        raise ImageFormatError(
            f"side must be a power of two in [{MIN_SIZE}, {MAX_SIZE}], got {width}"
        )


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale raster, stored as a ``(height, width)`` uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ImageFormatError(f"expected a 2-D raster, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ImageFormatError("gray levels must lie in [0, 255]")
        check_dimensions(arr.shape[1], arr.shape[0])
        arr = np.array(arr, dtype=np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_flat(cls, width: int, height: int, values) -> GrayImage:
        values = np.asarray(values)
        if values.size != width * height:
            raise ImageFormatError(f"expected {width * height} pixels, got {values.size}")
        return cls(values.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


def _header_tokens(data: bytes, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last one.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos < n and data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            raise ImageFormatError("truncated PGM header")
        tokens.append(data[start:pos])
    if pos >= n or data[pos] not in _WHITESPACE:
        raise ImageFormatError("PGM header must end with a single whitespace byte")
    return tokens, pos + 1


def read_pgm(data: bytes) -> GrayImage:
    """Parse a binary (P5) PGM with maxval 255."""
    tokens, offset = _header_tokens(data, 4)
    if tokens[0] != b"P5":
        raise ImageFormatError(f"not a binary PGM (magic {tokens[0]!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise ImageFormatError("non-numeric PGM header field") from exc
    if maxval != 255:
        raise ImageFormatError(f"unsupported depth: maxval {maxval}, only 255 is accepted")
    check_dimensions(width, height)
    payload = data[offset:offset + width * height]
    if len(payload) < width * height:
        raise ImageFormatError(
            f"truncated PGM payload: {len(payload)} of {width * height} bytes"
        )
    return GrayImage.from_flat(width, height, np.frombuffer(payload, dtype=np.uint8))


def write_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def load_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(img: GrayImage, path) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img))


def write_container(planes, width: int, height: int) -> bytes:
    """Serialize 8 cipher bit strings, given in transmission order."""
    planes = list(planes)
    if len(planes) != NUM_PLANES:
        raise ContainerFormatError(f"expected {NUM_PLANES} plane records, got {len(planes)}")
    out = [CONTAINER_MAGIC, struct.pack(">II", width, height)]
    for bits in planes:
        out.append(struct.pack(">I", len(bits)))
        out.append(pack_bits(bits))
    return b"".join(out)


def parse_container(data: bytes):
    """Inverse of :func:`write_container`: returns ``(width, height, planes)``."""
    if data[:len(CONTAINER_MAGIC)] != CONTAINER_MAGIC:
        raise ContainerFormatError("bad container magic")
    pos = len(CONTAINER_MAGIC)
    if len(data) < pos + 8:
        raise ContainerFormatError("truncated container header")
    width, height = struct.unpack_from(">II", data, pos)
    pos += 8
    planes = []
    for k in range(NUM_PLANES):
        if len(data) < pos + 4:
            raise ContainerFormatError(f"container holds only {k} plane records")
        (bit_length,) = struct.unpack_from(">I", data, pos)
        pos += 4
        nbytes = -(-bit_length // 8)
        if len(data) < pos + nbytes:
            raise ContainerFormatError(f"truncated payload in plane record {k}")
        try:
            planes.append(unpack_bits(data[pos:pos + nbytes], bit_length))
        except ValueError as exc:
            raise ContainerFormatError(f"plane record {k}: {exc}") from exc
        pos += nbytes
    if pos != len(data):
        raise ContainerFormatError(f"{len(data) - pos} trailing bytes after plane records")
    return width, height, planes
