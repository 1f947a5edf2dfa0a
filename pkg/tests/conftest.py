import numpy as np
import pytest

_ACCEPTANCE: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    label = marker.args[0]
    if report.passed:
        _ACCEPTANCE[label] = "PASS"
    else:
        msg = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else ""
        _ACCEPTANCE[label] = "FAIL  " + msg.splitlines()[0][:160] if msg else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{label}: {_ACCEPTANCE[label]}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
