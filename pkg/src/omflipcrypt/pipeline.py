"""Encryption and decryption pipelines.

Encryption of one plane: linearize along the keyed scan path, run-encode and
pack (RLE planes) or keep the raw bits (RAW planes), block-scramble, then run
the OMFLIP stage chain. Decryption reverses the four stages in opposite order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitplane import BitPlane, compose, decompose
from .errors import DecryptionError, KeyFormatError
from .image_io import NUM_PLANES, GrayImage, check_dimensions, parse_container, write_container
from .keyschedule import ImageKey, Mode, PlaneKey
from .permnet import omflip_apply, omflip_invert
from .rle2d import RunsEncoding, decode_runs, encode_runs, pack_runs, unpack_runs
from .scanpath import delinearize, generate_path, linearize
from .scramble import ScrambleParams, scramble, unscramble

STAGES = ("linearized", "packed", "scrambled", "omflipped")


@dataclass(frozen=True, eq=False)
class CipherContainer:
    """Cipher bit strings of all eight planes, in transmission order."""

    width: int
    height: int
    planes: tuple[np.ndarray, ...]

    def to_bytes(self) -> bytes:
        return write_container(self.planes, self.width, self.height)

    @classmethod
    def from_bytes(cls, data: bytes) -> CipherContainer:
        width, height, planes = parse_container(data)
        return cls(width, height, tuple(planes))

    def __eq__(self, other):
        if not isinstance(other, CipherContainer):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and all(
            np.array_equal(a, b) for a, b in zip(self.planes, other.planes, strict=True)
        )


def _scramble_params(pk: PlaneKey) -> ScrambleParams:
    return ScrambleParams(pk.block_size, pk.scramble_seed, pk.pad_bits)


def encrypt_plane(plane: BitPlane, pk: PlaneKey) -> dict[str, np.ndarray]:
    """Encrypt one plane, returning the bit string after every stage."""
    path = generate_path(pk.scan_pattern_id, plane.width, plane.height)
    linear = linearize(plane, path)
    if pk.mode is Mode.RLE:
        enc = encode_runs(linear)
        if (enc.first_bit, len(enc.runs)) != (pk.first_bit, pk.run_count) or (
            enc.field_width > pk.field_width
        ):
            raise KeyFormatError(
                f"plane {plane.level}: key expects {pk.run_count} runs of {pk.field_width} bits "
                f"starting with {pk.first_bit}, image gives {len(enc.runs)} runs of "
                f"{enc.field_width} bits starting with {enc.first_bit}"
            )
        packed = pack_runs(enc, pk.field_width)
    else:
        packed = linear
    if (packed.size + pk.pad_bits) % pk.block_size:
        raise KeyFormatError(
            f"plane {plane.level}: {packed.size} bits + {pk.pad_bits} pad is not a multiple "
            f"of block size {pk.block_size}"
        )
    scrambled = scramble(packed, _scramble_params(pk))
    return {
        "linearized": linear,
        "packed": packed,
        "scrambled": scrambled,
        "omflipped": omflip_apply(scrambled, pk.control_bits),
    }


def decrypt_plane(bits, pk: PlaneKey, width: int, height: int) -> BitPlane:
    """Invert :func:`encrypt_plane`; raises :class:`DecryptionError` on a bad key."""
    bits = np.asarray(bits, dtype=np.uint8)
    area = width * height
    where = f"plane {pk.level}"
    if bits.size < 2:
        raise DecryptionError(f"{where}: cipher stream of {bits.size} bits is too short")
    try:
        scrambled = omflip_invert(bits, pk.control_bits)
        packed = unscramble(scrambled, _scramble_params(pk))
    except ValueError as exc:
        raise DecryptionError(f"{where}: {exc}") from exc
    path = generate_path(pk.scan_pattern_id, width, height)
    if pk.mode is Mode.RAW:
        if packed.size != area:
            raise DecryptionError(f"{where}: RAW stream has {packed.size} bits, plane has {area}")
        return delinearize(packed, path, pk.level)
    try:
        runs = unpack_runs(packed, pk.field_width, pk.run_count)
    except ValueError as exc:
        raise DecryptionError(f"{where}: {exc}") from exc
    total = int(runs.sum())
    if total != area:
        raise DecryptionError(f"{where}: runs cover {total} cells, plane has {area}")
    linear = decode_runs(RunsEncoding(pk.first_bit, tuple(int(r) for r in runs)))
    return delinearize(linear, path, pk.level)


def encrypt(img: GrayImage, key: ImageKey) -> CipherContainer:
    cipher = [encrypt_plane(p, key.plane_keys[p.level])["omflipped"] for p in decompose(img)]
    return CipherContainer(img.width, img.height, tuple(cipher[l] for l in key.plane_order))


def decrypt(container: CipherContainer, key: ImageKey) -> GrayImage:
    if len(container.planes) != NUM_PLANES:
        raise DecryptionError(f"container holds {len(container.planes)} planes")
    try:
        check_dimensions(container.width, container.height)
    except ValueError as exc:
        raise DecryptionError(str(exc)) from exc
    by_level = dict(zip(key.plane_order, container.planes))
    planes = [
        decrypt_plane(by_level[l], key.plane_keys[l], container.width, container.height)
        for l in range(NUM_PLANES)
    ]
    return compose(planes)
