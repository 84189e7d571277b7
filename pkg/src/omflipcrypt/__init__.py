"""Bit-plane image cipher built from scan-path run encoding, keyed block
scrambling and omega/flip network permutation."""

from .bitplane import BitPlane, compose, decompose
from .errors import (
    ContainerFormatError,
    DecryptionError,
    ImageFormatError,
    KeyFormatError,
    OmflipCryptError,
)
from .image_io import GrayImage, load_pgm, parse_container, read_pgm, save_pgm, write_container, write_pgm
from .keyschedule import ImageKey, Mode, PlaneKey, keygen, load_key, parse_key, save_key, serialize_key
from .pipeline import CipherContainer, decrypt, encrypt

__version__ = "0.1.0"

__all__ = [
    "BitPlane",
    "CipherContainer",
    "ContainerFormatError",
    "DecryptionError",
    "GrayImage",
    "ImageFormatError",
    "ImageKey",
    "KeyFormatError",
    "Mode",
    "OmflipCryptError",
    "PlaneKey",
    "compose",
    "decompose",
    "decrypt",
    "encrypt",
    "keygen",
    "load_key",
    "load_pgm",
    "parse_container",
    "parse_key",
    "read_pgm",
    "save_key",
    "save_pgm",
    "serialize_key",
    "write_container",
    "write_pgm",
]
