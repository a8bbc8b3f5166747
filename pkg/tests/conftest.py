import os

import pytest
from hypothesis import HealthCheck, settings

from sshcond.presets import PRESETS

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance lines collected during the run, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=sorted(PRESETS))
def preset(request):
    return PRESETS[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
