from __future__ import annotations

import pytest

from ggcode import kernels

_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_log():
    def record(number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        print(_ACCEPTANCE[-1])

    return record


@pytest.fixture(params=kernels.BACKENDS)
def backend(request):
    """Run the test once per kernel backend."""
    previous = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
