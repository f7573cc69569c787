import os
import sys
import tempfile
from pathlib import Path

# one shared catalog per test session, never the user's cache
os.environ.setdefault("QK_CATALOG", tempfile.mkdtemp(prefix="qk-catalog-"))
sys.path.insert(0, str(Path(__file__).parent))

import pytest  # noqa: E402

from quandlekit import io  # noqa: E402
from quandlekit.catalog import Catalog  # noqa: E402

_criteria = {}


@pytest.fixture(scope="session")
def catalog():
    return Catalog(os.environ["QK_CATALOG"])


@pytest.fixture
def fixture_path():
    return io.data_path


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_criterion_"):
        number = int(name.split("_")[2])
        _criteria[number] = (name, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        name, outcome = _criteria[number]
        label = name.split("_", 3)[3].replace("_", " ")
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {label}: {verdict}")
