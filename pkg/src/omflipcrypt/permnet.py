"""Omega/flip network stages, chained OMFLIP permutation, and GRP.

Both stages act on a string of ``w`` symbols with ``lim = ceil(w / 2)``.
Using 1-based positions, the omega stage sends ``in(i) -> out(2i)`` and
``in(i + lim) -> out(2i + 1)`` for ``i = 1..lim``; the flip stage sends
``in(2i) -> out(i)`` and ``in(2i + 1) -> out(i + lim)``. Assignments that fall
outside ``1..w`` are skipped and the one remaining slot is patched:

* omega, even ``w``: ``out(1) = in(w)``;  odd ``w``: ``out(1) = in(lim)``
* flip,  even ``w``: ``out(w) = in(1)``;  odd ``w``: ``out(lim) = in(1)``

With these patches the flip stage is exactly the inverse of the omega stage.
A control vector selects one stage per bit (0 = omega, 1 = flip), applied left
to right.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .bits import as_bits

OMEGA = 0
FLIP = 1


def _check_width(w: int):
    if w < 2:
        raise ValueError(f"network stages need at least 2 inputs, got {w}")


@lru_cache(maxsize=256)
def omega_source(w: int) -> np.ndarray:
    """0-based gather map: ``omega_stage(s) == s[omega_source(len(s))]``."""
    _check_width(w)
    lim = -(-w // 2)
    src = np.full(w + 1, -1, dtype=np.intp)  # 1-based scratch, slot 0 unused
    for i in range(1, lim + 1):
        if 2 * i <= w:
            src[2 * i] = i
        if 2 * i + 1 <= w and i + lim <= w:
            src[2 * i + 1] = i + lim
    src[1] = 2 * lim if w % 2 == 0 else lim
    src = src[1:] - 1
    src.setflags(write=False)
    return src


@lru_cache(maxsize=256)
def flip_source(w: int) -> np.ndarray:
    """0-based gather map: ``flip_stage(s) == s[flip_source(len(s))]``."""
    _check_width(w)
    lim = -(-w // 2)
    src = np.full(w + 1, -1, dtype=np.intp)
    for i in range(1, lim + 1):
        if 2 * i <= w:
            src[i] = 2 * i
        if 2 * i + 1 <= w and i + lim <= w:
            src[i + lim] = 2 * i + 1
    if w % 2 == 0:
        src[w] = 1
    else:
        src[lim] = 1
    src = src[1:] - 1
    src.setflags(write=False)
    return src


def omega_stage(bits) -> np.ndarray:
    """One omega stage. Accepts any 1-D sequence of symbols, not only bits."""
    arr = np.asarray(bits)
    return arr[omega_source(arr.size)]


def flip_stage(bits) -> np.ndarray:
    arr = np.asarray(bits)
    return arr[flip_source(arr.size)]


def _ctrl_tuple(ctrl) -> tuple[int, ...]:
    ctrl = tuple(int(c) for c in as_bits(ctrl))
    if not ctrl:
        raise ValueError("control vector must not be empty")
    return ctrl


@lru_cache(maxsize=64)
def _chain_source(w: int, ctrl: tuple[int, ...]) -> np.ndarray:
    idx = np.arange(w)
    for c in ctrl:
        idx = idx[flip_source(w) if c else omega_source(w)]
    idx.setflags(write=False)
    return idx


def omflip_source(w: int, ctrl) -> np.ndarray:
    """Composite gather map of the whole stage chain selected by ``ctrl``."""
    _check_width(w)
    return _chain_source(w, _ctrl_tuple(ctrl))


def omflip_apply(bits, ctrl) -> np.ndarray:
    """Run ``bits`` through one stage per control bit (0 = omega, 1 = flip)."""
    arr = np.asarray(bits)
    return arr[omflip_source(arr.size, ctrl)]


def omflip_invert(bits, ctrl) -> np.ndarray:
    """Undo :func:`omflip_apply`: complemented control bits, in reverse order."""
    inverse = tuple(1 - c for c in reversed(_ctrl_tuple(ctrl)))
    return omflip_apply(bits, inverse)


def grp_permute(bits, mask) -> np.ndarray:
    """Stable gather: symbols under mask 0 first, then those under mask 1."""
    arr = np.asarray(bits)
    mask = as_bits(mask)
    if mask.size != arr.size:
        raise ValueError(f"mask has {mask.size} bits for {arr.size} inputs")
    return np.concatenate([arr[mask == 0], arr[mask == 1]])
