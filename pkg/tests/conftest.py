from __future__ import annotations

import pytest

from quotientope.fences import iter_essential_congruences


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow exhaustive checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    name = report.nodeid
    if "test_acceptance.py::test_criterion_" not in name:
        return
    num = int(name.split("test_criterion_")[1].split("_")[0])
    ACCEPTANCE.setdefault(num, []).append("pass" if report.passed else ("skip" if report.skipped else "fail"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        results = ACCEPTANCE[num]
        if "fail" in results:
            line = "FAIL"
        elif "pass" in results:
            line = "PASS" + (" (slow part skipped; use --runslow)" if "skip" in results else "")
        else:
            line = "SKIP"
        terminalreporter.write_line(f"criterion {num:2d}: {line}")


@pytest.fixture(scope="session")
def essential():
    """Essential congruences per n, enumerated once per session."""
    cache: dict[int, list] = {}

    def get(n: int) -> list:
        if n not in cache:
            cache[n] = list(iter_essential_congruences(n))
        return cache[n]

    return get
