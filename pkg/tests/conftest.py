import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from disksever import Instance

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_instance(rng, n, L=10.0, rmin=1.0, rmax=1.0):
    centers = rng.uniform(0.0, L, size=(n, 2))
    radii = rng.uniform(rmin, rmax, size=n) if rmax > rmin else np.full(n, rmin)
    return Instance(centers, radii)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(name.split("_")[2])
        detail = dict(report.user_properties).get("detail", "")
        _criteria[num] = (report.outcome, detail, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        outcome, detail, secs = _criteria[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  [{secs:6.1f} s]  {detail}")
