import numpy as np
import pytest

from omflipcrypt import BitPlane, GrayImage, compose, decompose


def _single(value):
    return GrayImage(np.full((2, 2), value, np.uint8))


def test_decompose_170():
    planes = decompose(_single(170))
    assert [int(p.bits[0, 0]) for p in planes] == [0, 1, 0, 1, 0, 1, 0, 1]
    assert [p.level for p in planes] == list(range(8))


def test_decompose_extremes():
    assert all(p.bits.all() for p in decompose(_single(255)))
    assert [int(p.bits[0, 0]) for p in decompose(_single(1))] == [1, 0, 0, 0, 0, 0, 0, 0]


def test_compose_msb_only():
    planes = [BitPlane(l, np.zeros((4, 4), np.uint8)) for l in range(8)]
    bits = np.zeros((4, 4), np.uint8)
    bits[1, 2] = 1
    planes[7] = BitPlane(7, bits)
    img = compose(planes)
    assert img.pixels[1, 2] == 128
    assert img.pixels.sum() == 128


def test_compose_all_zero():
    planes = [BitPlane(l, np.zeros((4, 4), np.uint8)) for l in range(8)]
    assert compose(planes) == GrayImage(np.zeros((4, 4), np.uint8))


def test_roundtrip_random(rng):
    for side in (2, 8, 64):
        img = GrayImage(rng.integers(0, 256, (side, side), dtype=np.uint8))
        assert compose(decompose(img)) == img
        planes = decompose(img)
        for _ in range(20):
            m, n = rng.integers(0, side, 2)
            weighted = sum(int(p.bits[m, n]) << p.level for p in planes)
            assert weighted == img.pixels[m, n]


def test_compose_order_independent(rng):
    img = GrayImage(rng.integers(0, 256, (8, 8), dtype=np.uint8))
    planes = decompose(img)
    assert compose(planes[::-1]) == img


def test_compose_errors():
    planes = [BitPlane(l, np.zeros((4, 4), np.uint8)) for l in range(8)]
    with pytest.raises(ValueError, match="exactly once"):
        compose(planes[:7] + [BitPlane(0, np.zeros((4, 4), np.uint8))])
    with pytest.raises(ValueError, match="dimensions"):
        compose(planes[:7] + [BitPlane(7, np.zeros((8, 8), np.uint8))])
    with pytest.raises(ValueError):
        BitPlane(8, np.zeros((2, 2)))
    with pytest.raises(ValueError):
        BitPlane(0, np.full((2, 2), 2))
