import os
import sys
from contextlib import contextmanager
from time import perf_counter

import pytest

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES: list[str] = []


@contextmanager
def _criterion(number: int, title: str, limit: float):
    """Time a block; record one PASS/FAIL line; fail on error or on exceeding ``limit`` seconds."""
    start = perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"criterion {number}: FAIL ({perf_counter() - start:.2f}s, limit {limit:g}s) {title} -- " \
               f"{type(exc).__name__}: {exc}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    elapsed = perf_counter() - start
    ok = elapsed < limit
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, limit {limit:g}s) {title}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    if not ok:
        pytest.fail(f"runtime {elapsed:.2f}s exceeds {limit:g}s")


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
