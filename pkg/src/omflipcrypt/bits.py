"""Bit-string helpers.

A bit string is a 1-D ``numpy.uint8`` array holding only 0 and 1. Serialized
bit strings are packed most-significant-bit first within each byte.
"""

import numpy as np


def as_bits(bits) -> np.ndarray:
    """Coerce a sequence of 0/1 values to a 1-D uint8 bit array."""
    arr = np.asarray(bits, dtype=np.uint8).reshape(-1)
    if arr.size and arr.max() > 1:
        raise ValueError("bit strings may only contain 0 and 1")
    return arr


def pack_bits(bits) -> bytes:
    """Pack bits MSB-first; the final byte is zero padded."""
    return np.packbits(as_bits(bits), bitorder="big").tobytes()


def unpack_bits(data: bytes, bit_length: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`.

    Raises ``ValueError`` if ``data`` is too short or if any pad bit after
    ``bit_length`` is set.
    """
    nbytes = -(-bit_length // 8)
    if len(data) < nbytes:
        raise ValueError(f"need {nbytes} bytes for {bit_length} bits, got {len(data)}")
    full = np.unpackbits(np.frombuffer(data[:nbytes], dtype=np.uint8), bitorder="big")
    if full[bit_length:].any():
        raise ValueError("nonzero pad bits")
    return full[:bit_length].copy()


def int_to_bits(value: int, width: int) -> np.ndarray:
    """Big-endian ``width``-bit field of ``value``."""
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - k)) & 1 for k in range(width)], dtype=np.uint8)


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in as_bits(bits))


def str_to_bits(text: str) -> np.ndarray:
    """Parse a string of '0'/'1' characters; spaces and underscores are ignored."""
    cleaned = text.replace(" ", "").replace("_", "")
    if set(cleaned) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return np.array([c == "1" for c in cleaned], dtype=np.uint8)
