"""Keyed block scrambling of compressed bit strings.

The string is zero padded to a multiple of the block size ``x``, cut into
``x``-bit blocks, and block ``j`` is rearranged by permutation number
``r_j mod x!`` (lexicographic order), where ``r_j`` is the ``j``-th output of a
SplitMix64 generator seeded with the plane's scramble seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .bits import as_bits

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIN_BLOCK = 3
MAX_BLOCK = 8


class Prng:
    """SplitMix64 generator.

    >>> hex(Prng(0).next())
    '0xe220a8397b1dcdaf'
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def draw(self, n: int) -> np.ndarray:
        """Next ``n`` outputs as a uint64 array; same values as ``n`` calls to :meth:`next`."""
        steps = np.arange(1, n + 1, dtype=np.uint64)
        z = steps * np.uint64(GOLDEN_GAMMA) + np.uint64(self.state)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        self.state = (self.state + n * GOLDEN_GAMMA) & MASK64
        return z ^ (z >> np.uint64(31))

    def bits(self, n: int) -> np.ndarray:
        """``n`` bits taken MSB-first from successive 64-bit outputs."""
        words = self.draw(-(-n // 64)).astype(">u8")
        return np.unpackbits(words.view(np.uint8), bitorder="big")[:n]


def prng_next(p: Prng) -> int:
    return p.next()


@dataclass(frozen=True)
class ScrambleParams:
    block_size: int
    seed: int
    pad_bits: int = 0

    def __post_init__(self):
        if not MIN_BLOCK <= self.block_size <= MAX_BLOCK:
            raise ValueError(f"block size must be in [{MIN_BLOCK}, {MAX_BLOCK}], got {self.block_size}")
        if not 0 <= self.pad_bits < self.block_size:
            raise ValueError(f"pad of {self.pad_bits} bits is invalid for block size {self.block_size}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("scramble seed must be a 64-bit unsigned integer")


def choose_block_size(bit_length: int) -> tuple[int, int]:
    """Largest block size in 8..3 dividing ``bit_length``; else 3 with zero padding."""
    if bit_length < 1:
        raise ValueError("bit length must be positive")
    for x in range(MAX_BLOCK, MIN_BLOCK - 1, -1):
        if bit_length % x == 0:
            return x, 0
    return MIN_BLOCK, (MIN_BLOCK - bit_length % MIN_BLOCK) % MIN_BLOCK


def nth_permutation(x: int, index: int) -> tuple[int, ...]:
    """The ``index``-th permutation of ``range(x)`` in lexicographic order."""
    if not MIN_BLOCK <= x <= MAX_BLOCK:
        raise ValueError(f"x must be in [{MIN_BLOCK}, {MAX_BLOCK}], got {x}")
    if not 0 <= index < math.factorial(x):
        raise ValueError(f"permutation index {index} out of range for x={x}")
    pool = list(range(x))
    out = []
    for k in range(x - 1, -1, -1):
        digit, index = divmod(index, math.factorial(k))
        out.append(pool.pop(digit))
    return tuple(out)


@lru_cache(maxsize=None)
def _permutation_table(x: int) -> np.ndarray:
    table = np.array(list(permutations(range(x))), dtype=np.intp)
    table.setflags(write=False)
    return table


def _block_patterns(n_blocks: int, params: ScrambleParams) -> np.ndarray:
    x = params.block_size
    draws = Prng(params.seed).draw(n_blocks) % np.uint64(math.factorial(x))
    return _permutation_table(x)[draws.astype(np.intp)]


def scramble(bits, params: ScrambleParams) -> np.ndarray:
    """Pad, then permute each block as ``out[k] = in[p[k]]``."""
    bits = as_bits(bits)
    x = params.block_size
    if (bits.size + params.pad_bits) % x:
        raise ValueError(
            f"{bits.size} bits + {params.pad_bits} pad bits is not a multiple of {x}"
        )
    blocks = np.concatenate([bits, np.zeros(params.pad_bits, np.uint8)]).reshape(-1, x)
    perms = _block_patterns(len(blocks), params)
    rows = np.arange(len(blocks))[:, None]
    return blocks[rows, perms].reshape(-1)


def unscramble(bits, params: ScrambleParams) -> np.ndarray:
    """Inverse of :func:`scramble`; raises if the stripped pad bits are not zero."""
    bits = as_bits(bits)
    x = params.block_size
    if bits.size % x or bits.size < params.pad_bits:
        raise ValueError(f"{bits.size} bits do not split into {x}-bit blocks")
    blocks = bits.reshape(-1, x)
    perms = _block_patterns(len(blocks), params)
    rows = np.arange(len(blocks))[:, None]
    out = np.empty_like(blocks)
    out[rows, perms] = blocks
    out = out.reshape(-1)
    if params.pad_bits:
        if out[-params.pad_bits:].any():
            raise ValueError("nonzero pad bits after unscrambling")
        out = out[:-params.pad_bits]
    return out
