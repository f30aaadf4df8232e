import re
from collections import OrderedDict

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA = OrderedDict()
_PATTERN = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n = int(m.group(1))
        ok = report.outcome == "passed"
        entry = _CRITERIA.setdefault(n, [True, []])
        entry[0] &= ok
        if not ok:
            entry[1].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, failed = _CRITERIA[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  (" + ", ".join(failed) + ")"
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(12345)
