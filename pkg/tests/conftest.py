import os
from pathlib import Path

import hypothesis
import pytest

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"


@pytest.fixture
def programs() -> Path:
    return PROGRAMS


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import result_lines

    lines = result_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
