"""Field-checkable invariant suite, also exposed as ``omflipcrypt selftest``."""

from __future__ import annotations

import numpy as np

from .image_io import GrayImage
from .keyschedule import keygen
from .permnet import flip_stage, omega_stage, omflip_apply, omflip_invert
from .pipeline import decrypt, encrypt
from .rle2d import decode_runs, encode_runs, pack_runs, unpack_runs
from .scramble import ScrambleParams, choose_block_size, scramble, unscramble

STAGE_TABLES = [
    (omega_stage, "abcd", "dacb"),
    (omega_stage, "abcde", "cadbe"),
    (flip_stage, "abcd", "bdca"),
    (flip_stage, "abcde", "bdace"),
]


def _check_tables():
    for fn, src, want in STAGE_TABLES:
        got = "".join(fn(list(src)))
        if got != want:
            return f"{fn.__name__}({src}) = {got}, expected {want}"


def _check_inverse_sweep(rng):
    for w in range(2, 1025):
        s = rng.integers(0, 2, w, dtype=np.uint8)
        if not np.array_equal(flip_stage(omega_stage(s)), s):
            return f"flip(omega(s)) != s at w={w}"
        if not np.array_equal(omega_stage(flip_stage(s)), s):
            return f"omega(flip(s)) != s at w={w}"


def _check_stage_roundtrips(rng, count=200):
    for _ in range(count):
        s = rng.integers(0, 2, int(rng.integers(2, 2048)), dtype=np.uint8)
        enc = encode_runs(s)
        if not np.array_equal(decode_runs(enc), s):
            return "run decode(encode(s)) != s"
        runs = unpack_runs(pack_runs(enc), enc.field_width, len(enc.runs))
        if tuple(runs.tolist()) != enc.runs:
            return "unpack(pack(runs)) != runs"
        x, pad = choose_block_size(s.size)
        prm = ScrambleParams(x, int(rng.integers(0, 2**63)), pad)
        if not np.array_equal(unscramble(scramble(s, prm), prm), s):
            return "unscramble(scramble(s)) != s"
        ctrl = rng.integers(0, 2, int(rng.integers(1, 64)), dtype=np.uint8)
        if not np.array_equal(omflip_invert(omflip_apply(s, ctrl), ctrl), s):
            return "omflip_invert(omflip_apply(s)) != s"


def _check_image_roundtrip(rng):
    for side in (4, 16, 32):
        img = GrayImage(rng.integers(0, 256, (side, side), dtype=np.uint8))
        key = keygen(img, int(rng.integers(0, 2**63)))
        if decrypt(encrypt(img, key), key) != img:
            return f"decrypt(encrypt(img)) != img at {side}x{side}"


def run_selftest(seed: int = 0) -> list[tuple[str, bool, str]]:
    """Run every check; returns ``(name, passed, detail)`` triples."""
    rng = np.random.default_rng(seed)
    checks = [
        ("stage tables w=4,5", _check_tables),
        ("omega/flip inverse, w=2..1024", lambda: _check_inverse_sweep(rng)),
        ("stage roundtrips", lambda: _check_stage_roundtrips(rng)),
        ("image roundtrips", lambda: _check_image_roundtrip(rng)),
    ]
    results = []
    for name, fn in checks:
        problem = fn()
        results.append((name, problem is None, problem or "ok"))
    return results
