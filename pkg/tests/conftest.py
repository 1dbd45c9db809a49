"""Shared fixtures, plus a one-line-per-criterion summary of the acceptance suite."""

import re

import numpy as np
import pytest

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    match = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not match:
        return
    key = (int(match.group(1)), match.group(2).replace("_", " "))
    failed = report.failed
    if report.when == "call" or failed:
        _ACCEPTANCE[key] = _ACCEPTANCE.get(key, False) or failed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        status = "FAIL" if _ACCEPTANCE[key] else "PASS"
        terminalreporter.write_line(f"criterion {key[0]:2d} {status}: {key[1]}")
    passed = sum(not v for v in _ACCEPTANCE.values())
    terminalreporter.write_line(f"{passed}/{len(_ACCEPTANCE)} criteria passed")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def grid101():
    return np.linspace(0.0, 1.0, 101)


@pytest.fixture(scope="session")
def grid201():
    return np.linspace(0.0, 1.0, 201)
