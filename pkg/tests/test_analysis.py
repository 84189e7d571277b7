import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from omflipcrypt import GrayImage, keygen
from omflipcrypt.analysis import (
    Report,
    UndefinedCorrelation,
    binary_entropy,
    correlation,
    entropy_of_fraction,
    key_sensitivity_probe,
    report,
    stage_taps,
)


def test_entropy_examples():
    assert binary_entropy([0, 1] * 8) == 1.0
    assert binary_entropy([0] * 10) == 0.0
    assert binary_entropy([1] * 10) == 0.0
    # -0.25 log2 0.25 - 0.75 log2 0.75 = 0.5 + 0.75 log2(4/3)
    assert binary_entropy([1, 0, 0, 0]) == pytest.approx(0.5 + 0.75 * math.log2(4 / 3), abs=1e-12)
    assert binary_entropy([1, 0, 0, 0]) == pytest.approx(0.8113, abs=1e-4)
    with pytest.raises(ValueError):
        binary_entropy([])


@given(st.floats(0, 1))
def test_entropy_symmetric_and_bounded(p):
    h = entropy_of_fraction(p)
    assert 0.0 <= h <= 1.0
    assert h == pytest.approx(entropy_of_fraction(1 - p), abs=1e-12)


def test_entropy_monotone_up_to_half():
    ps = np.linspace(0, 0.5, 501)
    hs = [entropy_of_fraction(p) for p in ps]
    assert all(a < b for a, b in zip(hs, hs[1:]))


def test_correlation_examples(rng):
    a = rng.integers(0, 2, 1000)
    assert correlation(a, a) == pytest.approx(1.0)
    assert correlation(a, 1 - a) == pytest.approx(-1.0)
    b = rng.integers(0, 2, 1000)
    assert correlation(a, b) == pytest.approx(correlation(b, a))
    assert correlation(a, b) == pytest.approx(np.corrcoef(a, b)[0, 1])


def test_correlation_errors():
    with pytest.raises(UndefinedCorrelation):
        correlation([1, 1, 1], [0, 1, 0])
    with pytest.raises(ValueError):
        correlation([1, 0], [1, 0, 1])


def test_taps_cover_every_stage(natural_images):
    img = natural_images["camera"]
    taps = stage_taps(img, keygen(img, 1))
    assert len(taps) == 32
    for level in range(8):
        by_stage = {t.stage: t.bits for t in taps if t.level == level}
        assert by_stage["scrambled"].size == by_stage["omflipped"].size
        # permutation stages keep the ones count, so their entropies coincide
        assert binary_entropy(by_stage["scrambled"]) == binary_entropy(by_stage["omflipped"])


def test_sensitivity_probe(natural_images):
    img = natural_images["camera"]
    key = keygen(img, 17)
    assert key_sensitivity_probe(img, key, 0, rng=1) == 0.0
    assert key_sensitivity_probe(img, key, 3, level=7, rng=1) > 0.0
    assert key_sensitivity_probe(img, key, 8, rng=2) > 0.0


def test_report_on_natural_image(natural_images):
    img = natural_images["brick"]
    rep = report(img, keygen(img, 5), trials=5)
    lines = rep.lines()
    assert sum(l.startswith("entropy,") for l in lines) == 8
    assert sum(l.startswith("correlation,") for l in lines) == 16
    assert all(0.0 <= v <= 1.0 for v in rep.entropy.values())
    for line in lines:
        metric, plane, stage, value = line.split(",")
        float(value)
    text = rep.text()
    assert "b7" in text and "key sensitivity" in text


def test_report_on_all_zero_image():
    img = GrayImage(np.zeros((8, 8), np.uint8))
    rep = report(img, keygen(img, 5), trials=2)
    # one run of 64 packs to 1000000
    assert rep.entropy == {l: pytest.approx(entropy_of_fraction(1 / 7)) for l in range(8)}
    assert rep.sensitivity.size == 2


def test_undefined_correlations_are_flagged():
    rep = Report(
        entropy={l: 0.5 for l in range(8)},
        omflip_correlation={l: None for l in range(8)},
        grp_correlation={l: 0.25 for l in range(8)},
    )
    lines = rep.lines()
    assert "correlation,3,scrambled-omflipped,undefined" in lines
    assert "correlation,3,scrambled-grp,0.25" in lines
    assert "undefined" in rep.text()
