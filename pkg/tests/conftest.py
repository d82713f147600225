import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


def random_distribution(rng, m, floor=0.0, ties=False, zeros=False):
    """Random probability vector; optionally with repeated and zero masses."""
    w = rng.random(m) ** rng.choice([1, 2, 4])
    if ties and m > 1:
        k = rng.integers(1, m)
        idx = rng.choice(m, size=k, replace=False)
        w[idx] = w[idx[0]]
    if zeros and m > 1:
        w[rng.choice(m, size=rng.integers(1, m), replace=False)] = 0.0
    if w.sum() == 0:
        w[0] = 1.0
    p = w / w.sum()
    if floor:
        p = np.maximum(p, floor)
        p /= p.sum()
    return p


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
