from pathlib import Path

import numpy as np
import pytest

from omflipcrypt import load_pgm

DATA = Path(__file__).parent / "data"
NATURAL = ("camera", "astronaut", "brick")


def pytest_configure(config):
    config._acceptance_results = []


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance_results", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(results, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}")


@pytest.fixture
def record_criterion(request):
    def record(number, ok, detail):
        request.config._acceptance_results.append((number, bool(ok), detail))
        return ok

    return record


@pytest.fixture(scope="session")
def natural_images():
    return {name: load_pgm(DATA / f"{name}128.pgm") for name in NATURAL}


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)
