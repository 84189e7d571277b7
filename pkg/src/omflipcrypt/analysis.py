"""Cipher-stream statistics: binary entropy, stage-to-stage correlation
(OMFLIP and GRP) and control-bit key sensitivity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .bitplane import decompose
from .bits import as_bits
from .errors import OmflipCryptError
from .image_io import NUM_PLANES, GrayImage
from .keyschedule import ImageKey
from .permnet import grp_permute
from .pipeline import STAGES, decrypt, encrypt, encrypt_plane
from .scramble import Prng

GRP_MASK_SALT = 0x47525020_4D41534B  # "GRP MASK"


class UndefinedCorrelation(ValueError):
    """Correlation with a constant sequence (zero variance)."""


@dataclass(frozen=True, eq=False)
class StageTap:
    level: int
    stage: str
    bits: np.ndarray


def entropy_of_fraction(p: float) -> float:
    """``-p log2 p - (1-p) log2 (1-p)`` with ``0 log 0 = 0``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be a probability, got {p}")
    return -sum(q * math.log2(q) for q in (p, 1.0 - p) if q > 0.0)


def binary_entropy(bits) -> float:
    """Binary entropy of the ones-fraction of ``bits``."""
    bits = as_bits(bits)
    if bits.size == 0:
        raise ValueError("entropy of an empty bit string is undefined")
    return entropy_of_fraction(int(bits.sum()) / bits.size)


def correlation(a, b) -> float:
    """Pearson correlation of two equal-length 0/1 strings."""
    a = as_bits(a).astype(np.float64)
    b = as_bits(b).astype(np.float64)
    if a.size != b.size or a.size == 0:
        raise ValueError(f"need equal non-empty lengths, got {a.size} and {b.size}")
    da, db = a - a.mean(), b - b.mean()
    denom = math.sqrt(float(da @ da) * float(db @ db))
    if denom == 0.0:
        raise UndefinedCorrelation("one of the sequences is constant")
    return float(da @ db) / denom


def stage_taps(img: GrayImage, key: ImageKey) -> list[StageTap]:
    """Bit strings after each encryption stage, for every plane."""
    taps = []
    for plane in decompose(img):
        out = encrypt_plane(plane, key.plane_keys[plane.level])
        taps.extend(StageTap(plane.level, s, out[s]) for s in STAGES)
    return taps


def grp_mask(key: ImageKey, level: int, length: int) -> np.ndarray:
    """Pseudorandom GRP control mask for one plane, derived from its key."""
    return Prng(key.plane_keys[level].scramble_seed ^ GRP_MASK_SALT).bits(length)


def _perturb(key: ImageKey, level: int, positions) -> ImageKey:
    pk = key.plane_keys[level]
    ctrl = list(pk.control_bits)
    for i in positions:
        ctrl[i] ^= 1
    return key.with_plane(replace(pk, control_bits=tuple(ctrl)))


def key_sensitivity_probe(
    img: GrayImage,
    key: ImageKey,
    flip_count: int,
    *,
    level: int | None = None,
    rng=None,
    container=None,
) -> float:
    """Flip ``flip_count`` control bits of one plane, decrypt, and return the
    fraction of pixels that differ from ``img``.

    The plane is drawn at random unless ``level`` is given. A decryption that
    aborts on a structural error counts as a full mismatch (1.0). Pass the
    ciphertext as ``container`` to skip re-encrypting ``img``.
    """
    rng = np.random.default_rng(rng)
    if flip_count < 0:
        raise ValueError("flip_count must be non-negative")
    if level is None:
        level = int(rng.integers(NUM_PLANES))
    n_ctrl = len(key.plane_keys[level].control_bits)
    positions = rng.choice(n_ctrl, size=min(flip_count, n_ctrl), replace=False)
    perturbed = _perturb(key, level, positions)
    if container is None:
        container = encrypt(img, key)
    try:
        recovered = decrypt(container, perturbed)
    except OmflipCryptError:
        return 1.0
    return float(np.mean(recovered.pixels != img.pixels))


def key_sensitivity_trials(img, key, flip_count, trials, rng=None) -> np.ndarray:
    rng = np.random.default_rng(rng)
    container = encrypt(img, key)
    return np.array(
        [
            key_sensitivity_probe(img, key, flip_count, rng=rng, container=container)
            for _ in range(trials)
        ]
    )


@dataclass
class Report:
    entropy: dict[int, float] = field(default_factory=dict)
    omflip_correlation: dict[int, float | None] = field(default_factory=dict)
    grp_correlation: dict[int, float | None] = field(default_factory=dict)
    flip_count: int = 3
    sensitivity: np.ndarray | None = None

    def lines(self) -> list[str]:
        """Machine-readable ``metric,plane,stage,value`` lines."""
        def fmt(v):
            return "undefined" if v is None else f"{v:.7g}"

        out = [f"entropy,{l},omflipped,{fmt(v)}" for l, v in sorted(self.entropy.items())]
        out += [
            f"correlation,{l},scrambled-omflipped,{fmt(v)}"
            for l, v in sorted(self.omflip_correlation.items())
        ]
        out += [
            f"correlation,{l},scrambled-grp,{fmt(v)}"
            for l, v in sorted(self.grp_correlation.items())
        ]
        if self.sensitivity is not None and self.sensitivity.size:
            tag = f"flip{self.flip_count}"
            out.append(f"sensitivity,any,{tag}-incorrect-fraction,{fmt(np.mean(self.sensitivity > 0))}")
            out.append(f"sensitivity,any,{tag}-mean-mismatch,{fmt(np.mean(self.sensitivity))}")
        return out

    def text(self) -> str:
        def fmt(v):
            return "undefined" if v is None else f"{v:+.7f}"

        rows = ["plane  entropy   corr(OMFLIP)  corr(GRP)"]
        for l in range(NUM_PLANES - 1, -1, -1):
            rows.append(
                f"b{l}     {self.entropy[l]:.4f}    {fmt(self.omflip_correlation[l]):>11}"
                f"   {fmt(self.grp_correlation[l]):>11}"
            )
        if self.sensitivity is not None and self.sensitivity.size:
            rows.append(
                f"key sensitivity: {self.flip_count} flipped control bits -> incorrect "
                f"decryption in {np.mean(self.sensitivity > 0):.0%} of {self.sensitivity.size} "
                f"trials, mean pixel mismatch {np.mean(self.sensitivity):.4f}"
            )
        return "\n".join(rows)


def _safe_corr(a, b):
    try:
        return correlation(a, b)
    except UndefinedCorrelation:
        return None


def report(
    img: GrayImage, key: ImageKey, *, trials: int = 20, flip_count: int = 3, rng=0
) -> Report:
    """Per-plane entropy and correlation metrics plus a key-sensitivity run."""
    rep = Report(flip_count=flip_count)
    by_plane = {}
    for tap in stage_taps(img, key):
        by_plane.setdefault(tap.level, {})[tap.stage] = tap.bits
    for level, taps in by_plane.items():
        scrambled, cipher = taps["scrambled"], taps["omflipped"]
        rep.entropy[level] = binary_entropy(cipher)
        rep.omflip_correlation[level] = _safe_corr(scrambled, cipher)
        grp = grp_permute(scrambled, grp_mask(key, level, scrambled.size))
        rep.grp_correlation[level] = _safe_corr(scrambled, grp)
    if trials:
        rep.sensitivity = key_sensitivity_trials(img, key, flip_count, trials, rng)
    return rep
