import pytest

from planebalance import standard_norms

BATTERY = standard_norms()
BATTERY_IDS = [name for name, _ in BATTERY]
BATTERY_NORMS = [norm for _, norm in BATTERY]


@pytest.fixture(params=BATTERY_NORMS, ids=BATTERY_IDS)
def norm(request):
    return request.param


ACCEPTANCE_RESULTS: list[tuple[str, str, bool]] = []


def record_acceptance(criterion: str, description: str, passed: bool) -> None:
    ACCEPTANCE_RESULTS.append((criterion, description, passed))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, description, passed in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {criterion} ({description}): {status}")
