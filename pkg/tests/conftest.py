"""Terminal reporting for the acceptance gate.

Tests marked ``criterion(number, title)`` get one ``acceptance NN PASS|FAIL``
line written through pytest's terminal reporter, so the verdicts stay visible
under any capture mode.
"""

import pytest

_config = None


def pytest_configure(config):
    global _config
    _config = config
    config.addinivalue_line(
        "markers",
        "criterion(number, title): acceptance criterion, one verdict line per run",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and report.when == "call":
        report.criterion = mark.args


@pytest.hookimpl(trylast=True)
def pytest_runtest_logreport(report):
    spec = getattr(report, "criterion", None)
    if spec is None or report.when != "call":
        return
    number, title = spec
    verdict = "PASS" if report.passed else "FAIL"
    line = f"acceptance {number:02d} {verdict} {title}"
    reporter = None
    if _config is not None:
        reporter = _config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.ensure_newline()
        reporter.write_line(line)
    else:
        print(line)
