"""Collects acceptance-criterion verdicts and prints them after the run."""
import pytest

ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None or rep.when != "call":
        return
    num, title = crit.args
    detail = getattr(item, "acceptance_detail", "")
    ACCEPTANCE[num] = ("PASS" if rep.passed else "FAIL", title, detail)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        verdict, title, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d} {verdict}: {title}" + (f" [{detail}]" if detail else ""))
