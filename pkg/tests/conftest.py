from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from kschur.charpoly import QTPoly

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def qp(*coeffs: int) -> QTPoly:
    """q-polynomial from its coefficient list, constant term first."""
    return QTPoly.from_q({e: c for e, c in enumerate(coeffs) if c})


def qt(terms: dict) -> QTPoly:
    return QTPoly(terms)


_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n = marker.args[0]
    outcome = "PASS" if call.excinfo is None else "FAIL"
    _criteria[n] = (outcome, f"{call.duration:.1f}s")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        outcome, took = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {outcome} ({took})")


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("KSCHUR_CACHE_DIR", raising=False)
    return tmp_path / "cache"
