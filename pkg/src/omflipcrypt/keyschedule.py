"""Key material: generation from an image and a master seed, and the key file.

Key file layout (integers big-endian)::

    b"OMFK1"  version:u8=1  master_seed:u64  plane_order:8 x u8
    8 plane records in level order:
        level:u8 scan_pattern_id:u8 mode:u8 first_bit:u8 run_count:u32
        field_width:u8 block_size:u8 pad_bits:u8 scramble_seed:u64
        control_length:u16 control_bits (packed MSB-first)
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, replace

import numpy as np

from .bitplane import decompose
from .bits import pack_bits, unpack_bits
from .errors import KeyFormatError
from .image_io import NUM_PLANES, GrayImage
from .permnet import omega_source, omflip_source
from .rle2d import run_lengths
from .scanpath import NUM_PATTERNS, linearize, select_optimal_path
from .scramble import MASK64, MAX_BLOCK, MIN_BLOCK, Prng, choose_block_size

KEY_MAGIC = b"OMFK1"
KEY_VERSION = 1
CONTROL_LENGTH = 512
MIN_CONTROL_LENGTH = 300

_HEAD = struct.Struct(">5sBQ8s")
_RECORD = struct.Struct(">BBBBIBBBQH")


class Mode(enum.IntEnum):
    RLE = 0
    RAW = 1


@dataclass(frozen=True)
class PlaneKey:
    """Everything needed to encrypt or decrypt one bit plane.

    In RAW mode the linearized plane is scrambled directly and the run fields
    (``first_bit``, ``run_count``, ``field_width``) are zero.
    """

    level: int
    scan_pattern_id: int
    mode: Mode
    first_bit: int
    run_count: int
    field_width: int
    block_size: int
    pad_bits: int
    scramble_seed: int
    control_bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "control_bits", tuple(int(c) for c in self.control_bits))
        problems = []
        if not 0 <= self.level < NUM_PLANES:
            problems.append(f"level {self.level}")
        if not 0 <= self.scan_pattern_id < NUM_PATTERNS:
            problems.append(f"scan pattern id {self.scan_pattern_id}")
        if self.first_bit not in (0, 1):
            problems.append(f"first bit {self.first_bit}")
        if self.mode is Mode.RAW and (self.first_bit or self.run_count or self.field_width):
            problems.append("RAW plane with nonzero run fields")
        if self.mode is Mode.RLE and (self.run_count < 1 or not 1 <= self.field_width <= 32):
            problems.append(f"run fields {self.run_count} x {self.field_width} bits")
        if not MIN_BLOCK <= self.block_size <= MAX_BLOCK:
            problems.append(f"block size {self.block_size}")
        if not 0 <= self.pad_bits < MIN_BLOCK:
            problems.append(f"pad bits {self.pad_bits}")
        if not 0 <= self.scramble_seed <= MASK64:
            problems.append("scramble seed outside 64 bits")
        if not self.control_bits or set(self.control_bits) - {0, 1}:
            problems.append("control bits must be a non-empty 0/1 vector")
        if problems:
            raise KeyFormatError(f"invalid key for plane {self.level}: " + ", ".join(problems))

    @property
    def stream_length(self) -> int | None:
        """Bits entering the scrambler, or ``None`` for RAW (depends on image size)."""
        if self.mode is Mode.RLE:
            return self.run_count * self.field_width
        return None


@dataclass(frozen=True)
class ImageKey:
    master_seed: int
    plane_order: tuple[int, ...]
    plane_keys: tuple[PlaneKey, ...]

    def __post_init__(self):
        object.__setattr__(self, "plane_order", tuple(int(l) for l in self.plane_order))
        object.__setattr__(self, "plane_keys", tuple(self.plane_keys))
        if sorted(self.plane_order) != list(range(NUM_PLANES)):
            raise KeyFormatError(f"plane order {self.plane_order} is not a permutation of 0..7")
        if [pk.level for pk in self.plane_keys] != list(range(NUM_PLANES)):
            raise KeyFormatError("plane keys must be given for levels 0..7 in order")
        if not 0 <= self.master_seed <= MASK64:
            raise KeyFormatError("master seed outside 64 bits")

    def with_plane(self, plane_key: PlaneKey) -> ImageKey:
        keys = list(self.plane_keys)
        keys[plane_key.level] = plane_key
        return replace(self, plane_keys=tuple(keys))


def _shuffled_levels(prng: Prng) -> tuple[int, ...]:
    order = list(range(NUM_PLANES))
    for i in range(NUM_PLANES - 1, 0, -1):
        j = prng.next() % (i + 1)
        order[i], order[j] = order[j], order[i]
    return tuple(order)


def _control_bits(prng: Prng, stream_length: int, length: int) -> tuple[int, ...]:
    # the chain collapses to omega**(zeros - ones); redraw vectors that cancel
    # out, unless every vector of this length does (omega of order <= 2 and an
    # even length, e.g. 2- and 3-bit streams)
    omega = omega_source(stream_length)
    identity = np.arange(stream_length)
    trivial = length % 2 == 0 and np.array_equal(omega[omega], identity)
    while True:
        ctrl = prng.bits(length)
        if trivial or not np.array_equal(omflip_source(stream_length, ctrl), identity):
            return tuple(int(c) for c in ctrl)


def plane_key_for(plane, seed: int, control_length: int = CONTROL_LENGTH) -> PlaneKey:
    """Derive the key record of one plane from its per-plane seed."""
    prng = Prng(seed)
    scramble_seed = prng.next()
    path, _ = select_optimal_path(plane)
    runs = run_lengths(linearize(plane, path))
    width = int(runs.max()).bit_length()
    area = plane.width * plane.height
    if runs.size * width >= area:
        mode, first_bit, run_count, width, stream = Mode.RAW, 0, 0, 0, area
    else:
        mode = Mode.RLE
        first_bit = int(linearize(plane, path)[0])
        run_count = int(runs.size)
        stream = run_count * width
    block, pad = choose_block_size(stream)
    return PlaneKey(
        level=plane.level,
        scan_pattern_id=path.pattern_id,
        mode=mode,
        first_bit=first_bit,
        run_count=run_count,
        field_width=width,
        block_size=block,
        pad_bits=pad,
        scramble_seed=scramble_seed,
        control_bits=_control_bits(prng, stream + pad, control_length),
    )


def keygen(img: GrayImage, master_seed: int, control_length: int = CONTROL_LENGTH) -> ImageKey:
    """Deterministic key for ``img``.

    The master SplitMix64 stream yields one seed per plane (outputs 0..7) and
    then drives a Fisher-Yates shuffle of the transmission order. Each plane's
    own stream yields its scramble seed followed by its control bits.
    """
    if not 0 <= master_seed <= MASK64:
        raise ValueError("master seed must be a 64-bit unsigned integer")
    master = Prng(master_seed)
    seeds = [master.next() for _ in range(NUM_PLANES)]
    order = _shuffled_levels(master)
    keys = tuple(
        plane_key_for(plane, seeds[plane.level], control_length) for plane in decompose(img)
    )
    return ImageKey(master_seed, order, keys)


def serialize_key(key: ImageKey) -> bytes:
    out = [_HEAD.pack(KEY_MAGIC, KEY_VERSION, key.master_seed, bytes(key.plane_order))]
    for pk in key.plane_keys:
        if len(pk.control_bits) > 0xFFFF:
            raise KeyFormatError("control vector longer than 65535 bits")
        out.append(
            _RECORD.pack(
                pk.level, pk.scan_pattern_id, pk.mode, pk.first_bit, pk.run_count,
                pk.field_width, pk.block_size, pk.pad_bits, pk.scramble_seed,
                len(pk.control_bits),
            )
        )
        out.append(pack_bits(pk.control_bits))
    return b"".join(out)


def parse_key(data: bytes) -> ImageKey:
    if len(data) < _HEAD.size:
        raise KeyFormatError("truncated key header")
    magic, version, master_seed, order = _HEAD.unpack_from(data, 0)
    if magic != KEY_MAGIC:
        raise KeyFormatError("bad key magic")
    if version != KEY_VERSION:
        raise KeyFormatError(f"unsupported key version {version}")
    pos = _HEAD.size
    records = []
    for k in range(NUM_PLANES):
        if len(data) < pos + _RECORD.size:
            raise KeyFormatError(f"truncated key: only {k} plane records")
        fields = _RECORD.unpack_from(data, pos)
        pos += _RECORD.size
        n_ctrl = fields[-1]
        nbytes = -(-n_ctrl // 8)
        if len(data) < pos + nbytes:
            raise KeyFormatError(f"truncated control bits in plane record {k}")
        try:
            ctrl = unpack_bits(data[pos:pos + nbytes], n_ctrl)
        except ValueError as exc:
            raise KeyFormatError(f"plane record {k}: {exc}") from exc
        pos += nbytes
        level, pid, mode, first, runs, width, block, pad, seed, _ = fields
        if mode not in (Mode.RLE, Mode.RAW):
            raise KeyFormatError(f"unknown mode {mode} in plane record {k}")
        records.append(PlaneKey(level, pid, mode, first, runs, width, block, pad, seed, ctrl))
    if pos != len(data):
        raise KeyFormatError(f"{len(data) - pos} trailing bytes in key")
    return ImageKey(master_seed, tuple(order), tuple(records))


def load_key(path) -> ImageKey:
    with open(path, "rb") as fh:
        return parse_key(fh.read())


def save_key(key: ImageKey, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_key(key))
