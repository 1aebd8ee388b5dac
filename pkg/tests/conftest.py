from __future__ import annotations

import pytest

from finmorph.polyring import Ring

# criterion number -> (description, passed)
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def xy() -> Ring:
    return Ring(("x", "y"))


@pytest.fixture
def record_criterion(request):
    recorded = []

    def record(number: int, description: str, passed: bool) -> None:
        ACCEPTANCE_RESULTS[number] = (description, passed)
        recorded.append(number)
        assert passed, f"acceptance criterion {number} failed: {description}"

    yield record
    # a criterion that raised before recording still gets a FAIL line
    parts = request.node.name.split("_")
    if not recorded and len(parts) > 2 and parts[2].isdigit():
        ACCEPTANCE_RESULTS[int(parts[2])] = (f"{request.node.name} raised before recording", False)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        description, passed = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {description}")
