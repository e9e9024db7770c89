"""Shared test configuration.

Hypothesis runs derandomized so every invocation of the suite reaches
identical verdicts.  The terminal-summary hook prints one PASS/FAIL
line per acceptance criterion (tests named test_criterion_NN_*) so the
gate can be read off the bottom of the run.
"""

import re

from hypothesis import HealthCheck, settings

settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    num, name = int(m.group(1)), m.group(2)
    if report.when == "call":
        _outcomes[num] = (name, report.outcome == "passed")
    elif report.when == "setup" and report.outcome != "passed":
        # collection/setup error counts as a failed criterion
        _outcomes[num] = (name, False)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        name, ok = _outcomes[num]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"criterion {num:02d} {name.replace('_', ' ')}: {verdict}")
