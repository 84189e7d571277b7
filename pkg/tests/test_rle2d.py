import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omflipcrypt import BitPlane
from omflipcrypt.bits import str_to_bits
from omflipcrypt.rle2d import (
    RunsEncoding,
    decode_runs,
    encode_runs,
    encoded_bit_count,
    pack_runs,
    unpack_runs,
)
from omflipcrypt.scanpath import generate_path, linearize

bit_strings = st.lists(st.integers(0, 1), min_size=1, max_size=4096)


def brute_runs(bits):
    runs = []
    for b in bits:
        if runs and runs[-1][0] == b:
            runs[-1][1] += 1
        else:
            runs.append([b, 1])
    return [n for _, n in runs]


def test_encode_examples():
    enc = encode_runs([0, 0, 0, 1, 1, 0])
    assert (enc.first_bit, enc.runs, enc.max_run, enc.field_width) == (0, (3, 2, 1), 3, 2)
    enc = encode_runs([1] * 16)
    assert (enc.first_bit, enc.runs, enc.field_width) == (1, (16,), 5)
    enc = encode_runs([0, 1, 0, 1])
    assert (enc.runs, enc.field_width) == ((1, 1, 1, 1), 1)


def test_encode_empty_rejected():
    with pytest.raises(ValueError):
        encode_runs([])


def test_decode_examples():
    assert decode_runs(RunsEncoding(0, (3, 2, 1))).tolist() == [0, 0, 0, 1, 1, 0]
    assert decode_runs(RunsEncoding(1, (4,))).tolist() == [1, 1, 1, 1]
    with pytest.raises(ValueError):
        decode_runs(RunsEncoding(1, (4, 0, 2)))


def test_pack_examples():
    assert pack_runs(RunsEncoding(0, (3, 2, 1))).tolist() == str_to_bits("11 10 01").tolist()
    assert pack_runs(RunsEncoding(1, (16,))).tolist() == str_to_bits("10000").tolist()
    with pytest.raises(ValueError):
        pack_runs(RunsEncoding(0, (9,)), field_width=3)


def test_unpack_errors():
    with pytest.raises(ValueError, match="expected"):
        unpack_runs(str_to_bits("111"), 2, 2)
    with pytest.raises(ValueError, match="zero-length"):
        unpack_runs(str_to_bits("11 00 01"), 2, 3)


@settings(max_examples=200, deadline=None)
@given(bit_strings)
def test_encode_matches_brute_force_and_roundtrips(bits):
    enc = encode_runs(bits)
    assert list(enc.runs) == brute_runs(bits)
    assert enc.first_bit == bits[0]
    assert sum(enc.runs) == len(bits)
    assert decode_runs(enc).tolist() == bits


@settings(max_examples=200, deadline=None)
@given(bit_strings)
def test_pack_unpack_roundtrip_and_minimal_width(bits):
    enc = encode_runs(bits)
    b = enc.field_width
    assert enc.max_run < 2 ** b
    assert enc.max_run >= 2 ** (b - 1)  # does not fit in b - 1 bits
    packed = pack_runs(enc)
    assert packed.size == len(enc.runs) * b
    assert tuple(unpack_runs(packed, b, len(enc.runs)).tolist()) == enc.runs


def test_encoded_bit_count_examples():
    zero = BitPlane(0, np.zeros((4, 4), np.uint8))
    assert encoded_bit_count(zero, generate_path(0, 4, 4)) == 6
    # raster reads the checkerboard as 0,1,1,0: runs [1, 2, 1] in 2-bit fields
    checker = BitPlane(0, [[0, 1], [1, 0]])
    assert encoded_bit_count(checker, generate_path(0, 2, 2)) == 3 * 2 + 1
    alternating = BitPlane(0, [[0, 1], [0, 1]])
    assert encoded_bit_count(alternating, generate_path(0, 2, 2)) == 4 * 1 + 1


def test_encoded_bit_count_is_packed_length_plus_one(rng):
    for _ in range(40):
        side = int(rng.choice([2, 4, 8, 16, 32]))
        plane = BitPlane(0, (rng.random((side, side)) < rng.random()).astype(np.uint8))
        for pid in range(8):
            path = generate_path(pid, side, side)
            packed = pack_runs(encode_runs(linearize(plane, path)))
            assert encoded_bit_count(plane, path) == packed.size + 1
