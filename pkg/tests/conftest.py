import math
import warnings

import numpy as np
import pytest

from colebrook_pade import DomainWarning, FlowConditions

GRID_RE = np.logspace(math.log10(4e3), 8.0, 20)
GRID_EPS = (0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.05)

_acceptance_lines: list[str] = []


def make_conditions(re, eps):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DomainWarning)
        return FlowConditions(float(re), float(eps))


@pytest.fixture(scope="session")
def grid():
    """20 log-spaced Re in [4e3, 1e8] x 7 roughness values, endpoints included."""
    return [make_conditions(re, eps) for re in GRID_RE for eps in GRID_EPS]


@pytest.fixture
def acceptance_report():
    def record(criterion, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        _acceptance_lines.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
