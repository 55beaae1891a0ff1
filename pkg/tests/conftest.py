import math

import numpy as np
import pytest

from vortexeit import MediumParams

RHO_STAR = 1.0 / math.sqrt(2.0)
F_STAR = RHO_STAR * math.exp(-0.5)
XI_STAR = math.pi / (1.0 / (1.0 - F_STAR) ** 2 - 1.0 / (1.0 + F_STAR) ** 2)


def expm_taylor(a, terms=30):
    """Scaling and squaring with a plain Taylor series; reference only."""
    a = np.asarray(a, dtype=complex)
    norm = np.max(np.sum(np.abs(a), axis=-2))
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    b = a / 2.0**s
    out = np.eye(a.shape[-1], dtype=complex)
    term = np.eye(a.shape[-1], dtype=complex)
    for k in range(1, terms):
        term = term @ b / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


@pytest.fixture
def baseline():
    return MediumParams(a=1.0, S=0.0, l=1, alpha=100.0, xi=XI_STAR)


@pytest.fixture
def rng():
    return np.random.default_rng(20131)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
