from contextlib import contextmanager
from time import perf_counter

import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and recording a
    PASS/FAIL line; exceeding ``limit`` seconds counts as a failure."""
    lines = request.config.stash.setdefault(_LINES, [])

    @contextmanager
    def run(number, title, limit=None):
        start = perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = perf_counter() - start
            if limit is not None and elapsed >= limit:
                raise AssertionError(f"took {elapsed:.2f}s, limit {limit}s")
            status = "PASS"
        finally:
            elapsed = perf_counter() - start
            bound = f", limit {limit}s" if limit is not None else ""
            line = f"{status}  criterion {number}: {title} ({elapsed:.2f}s{bound})"
            print(line)
            lines.append((number, line))

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
