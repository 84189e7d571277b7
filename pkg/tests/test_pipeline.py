from dataclasses import replace

import numpy as np
import pytest

from omflipcrypt import (
    CipherContainer,
    DecryptionError,
    GrayImage,
    KeyFormatError,
    Mode,
    decompose,
    decrypt,
    encrypt,
    keygen,
)
from omflipcrypt.permnet import omflip_apply
from omflipcrypt.pipeline import decrypt_plane, encrypt_plane
from omflipcrypt.scramble import ScrambleParams, scramble


def test_roundtrip_natural(natural_images):
    for img in natural_images.values():
        for seed in (0, 99):
            key = keygen(img, seed)
            container = encrypt(img, key)
            assert decrypt(container, key) == img
            assert decrypt(CipherContainer.from_bytes(container.to_bytes()), key) == img


@pytest.mark.parametrize("side", [2, 4, 8, 16, 64])
def test_roundtrip_random(side, rng):
    for _ in range(3):
        img = GrayImage(rng.integers(0, 256, (side, side), dtype=np.uint8))
        key = keygen(img, int(rng.integers(0, 2**63)))
        assert decrypt(encrypt(img, key), key) == img


def test_constant_images_roundtrip():
    for value in (0, 255, 170):
        img = GrayImage(np.full((8, 8), value, np.uint8))
        key = keygen(img, 4)
        assert decrypt(encrypt(img, key), key) == img


def test_stage_lengths_and_popcounts(natural_images):
    img = natural_images["camera"]
    key = keygen(img, 8)
    for plane in decompose(img):
        pk = key.plane_keys[plane.level]
        taps = encrypt_plane(plane, pk)
        assert taps["linearized"].size == img.width * img.height
        assert taps["scrambled"].size == taps["packed"].size + pk.pad_bits
        assert taps["omflipped"].size == taps["scrambled"].size
        assert taps["scrambled"].sum() == taps["packed"].sum()
        assert taps["omflipped"].sum() == taps["scrambled"].sum()
        if pk.mode is Mode.RLE:
            assert taps["packed"].size == pk.run_count * pk.field_width


def test_container_in_transmission_order(natural_images):
    img = natural_images["brick"]
    key = keygen(img, 12)
    container = encrypt(img, key)
    for slot, level in enumerate(key.plane_order):
        plane = decompose(img)[level]
        want = encrypt_plane(plane, key.plane_keys[level])["omflipped"]
        assert np.array_equal(container.planes[slot], want)


def test_different_seeds_give_different_ciphertexts(natural_images):
    img = natural_images["astronaut"]
    assert encrypt(img, keygen(img, 1)).to_bytes() != encrypt(img, keygen(img, 2)).to_bytes()


def test_key_for_other_image_rejected(natural_images):
    key = keygen(natural_images["camera"], 5)
    with pytest.raises(KeyFormatError):
        encrypt(natural_images["brick"], key)


def test_misordered_planes_fail_or_differ(natural_images):
    img = natural_images["camera"]
    key = keygen(img, 21)
    container = encrypt(img, key)
    order = list(key.plane_order)
    order[0], order[1] = order[1], order[0]
    wrong = replace(key, plane_order=tuple(order))
    try:
        assert decrypt(container, wrong) != img
    except DecryptionError:
        pass


def test_flipped_control_bits_break_decryption(natural_images):
    img = natural_images["camera"]
    key = keygen(img, 21)
    container = encrypt(img, key)
    pk = key.plane_keys[7]
    ctrl = list(pk.control_bits)
    for i in (3, 100, 400):
        ctrl[i] ^= 1
    wrong = key.with_plane(replace(pk, control_bits=tuple(ctrl)))
    try:
        assert decrypt(container, wrong) != img
    except DecryptionError:
        pass


def test_decrypt_plane_diagnostics(natural_images):
    img = natural_images["camera"]
    key = keygen(img, 3)
    rle = next(pk for pk in key.plane_keys if pk.mode is Mode.RLE)
    raw = next(pk for pk in key.plane_keys if pk.mode is Mode.RAW)
    good = encrypt_plane(decompose(img)[rle.level], rle)["omflipped"]
    with pytest.raises(DecryptionError, match="expected"):
        decrypt_plane(good, replace(rle, run_count=rle.run_count + 1), 128, 128)
    with pytest.raises(DecryptionError, match="RAW stream"):
        raw_bits = encrypt_plane(decompose(img)[raw.level], raw)["omflipped"]
        decrypt_plane(raw_bits, raw, 64, 64)
    with pytest.raises(DecryptionError, match="too short"):
        decrypt_plane(np.zeros(1, np.uint8), rle, 128, 128)


def test_zero_run_and_run_sum_errors():
    img = GrayImage(np.zeros((4, 4), np.uint8))
    key = keygen(img, 0)
    pk = key.plane_keys[0]
    # the only run is 16 = 10000 in 5 bits; forging 00001 gives a single run of 1
    forged = np.array([0, 0, 0, 0, 1], np.uint8)
    params = ScrambleParams(pk.block_size, pk.scramble_seed, pk.pad_bits)
    cipher = omflip_apply(scramble(forged, params), pk.control_bits)
    with pytest.raises(DecryptionError, match="cover 1 cells"):
        decrypt_plane(cipher, pk, 4, 4)
    zero = omflip_apply(scramble(np.zeros_like(forged), params), pk.control_bits)
    with pytest.raises(DecryptionError, match="zero-length"):
        decrypt_plane(zero, pk, 4, 4)
