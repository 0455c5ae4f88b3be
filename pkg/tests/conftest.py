import numpy as np
import pytest

from nearfield import ArrayGeometry

LAMBDA = 0.1


@pytest.fixture
def elaa():
    """225-element half-wavelength array at lambda = 0.1 m."""
    return ArrayGeometry.half_wavelength(225, LAMBDA)


@pytest.fixture
def ula16():
    return ArrayGeometry.half_wavelength(16, LAMBDA)


@pytest.fixture
def ula8():
    return ArrayGeometry.half_wavelength(8, LAMBDA)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# -- acceptance summary ------------------------------------------------------


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and report.when == "call":
        report.user_properties.append(("criterion", (mark.args[0], mark.args[1])))


def pytest_terminal_summary(terminalreporter):
    results = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", ()):
                if name == "criterion":
                    entry = results.setdefault(value, [])
                    entry.append((rep.nodeid.split("::")[-1], rep.passed))
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), checks in sorted(results.items()):
        failed = [name for name, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {num:>2} {status}  {title}  ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
