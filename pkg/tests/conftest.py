from __future__ import annotations

import time

import pytest

from cohomcheck.catalog import GroupCatalog
from cohomcheck.verify import Pipeline

ACCEPTANCE: dict[int, tuple[bool, str]] = {}
BUILD_SECONDS: dict[str, float] = {}


def record(criterion: int, ok: bool, detail: str = "") -> None:
    """Store the outcome of one acceptance criterion for the end-of-run summary."""
    prev = ACCEPTANCE.get(criterion)
    if prev is not None:
        ok = ok and prev[0]
        detail = "; ".join(d for d in (prev[1], detail) if d)
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def pipeline3() -> Pipeline:
    return Pipeline(3)


@pytest.fixture(scope="session")
def cat3(pipeline3) -> GroupCatalog:
    """The catalog shared with the pipeline, so homomorphisms match the cached resolutions."""
    return pipeline3.cat


def _timed(name: str, build):
    t0 = time.perf_counter()
    out = build()
    BUILD_SECONDS[name] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def ph2(pipeline3):
    """(resolution, ring table) of the projective image of H2 at p = 3, degree 6."""
    return _timed("ph2", lambda: pipeline3.ph2)


@pytest.fixture(scope="session")
def bh(pipeline3, ph2):
    return _timed("bh", lambda: pipeline3.bh)


@pytest.fixture(scope="session")
def h_resolution(pipeline3):
    """Minimal resolution of the order-729 group to degree 4 (about 2 minutes, 2.5 GB)."""
    return _timed("h", lambda: pipeline3.h_resolution)
