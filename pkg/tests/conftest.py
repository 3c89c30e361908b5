import numpy as np
import pytest

from nuframe import LatticePoint, matrix_seq

# Acceptance tests register one line per criterion here; the hook prints
# them after the run so pass/fail status survives output capture.
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])


def random_seq(lattice, n, rng, support=6, l_range=4):
    """Random finitely supported signal with standard-normal complex entries."""
    points = set()
    while len(points) < support:
        points.add((int(rng.integers(0, 2)), int(rng.integers(-l_range, l_range + 1))))
    entries = {
        LatticePoint(s, l): rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        for s, l in points
    }
    return matrix_seq(lattice, n, entries)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
