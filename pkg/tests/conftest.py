from __future__ import annotations

import pytest

from tango.cli.objects import Objects
from tango.cli.scenario import load_default


@pytest.fixture(scope="session")
def scenario():
    return load_default()


@pytest.fixture(scope="session")
def objects(scenario):
    """One cache of the fixture sheaves shared by the whole session."""
    return Objects(scenario)


@pytest.fixture(scope="session")
def P5(scenario):
    return scenario.rings["P5"]


@pytest.fixture(scope="session")
def R(scenario):
    return scenario.rings["R"]


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion: ``criterion(n, ok, detail)`` prints and stores the verdict."""
    log = request.config.__dict__.setdefault("_tango_criteria", {})

    def record(n: int, ok: bool, detail: str = "") -> bool:
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
        print(line)
        log[n] = line
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_tango_criteria", None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(log):
        terminalreporter.write_line(log[n])
