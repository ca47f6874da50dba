import numpy as np
import pytest

from braidsep.representation import RepParams, family_rep
from braidsep.separation import catalog, published_params

EXCLUDED = (-1.0, 0.0, 2.0, 0.5)

FAMILY_VARIANTS = [(c, b) for c in range(1, 6) for b in (1, -1)]


def sample_params(rng, condition, branch, box=4.0, margin=0.05):
    """Uniform (a, f) in the box, kept `margin` away from excluded a and f = 0."""
    while True:
        a = complex(*rng.uniform(-box, box, 2))
        f = complex(*rng.uniform(-box, box, 2))
        if min(abs(a - x) for x in EXCLUDED) >= margin and abs(f) >= margin:
            return RepParams(condition, branch, a, f)


@pytest.fixture(scope="session")
def published_reps():
    return [family_rep(p) for p in published_params()]


@pytest.fixture(scope="session")
def knots():
    return {e.name: e for e in catalog()}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# -- acceptance reporting ----------------------------------------------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (report.when == "call" or report.failed):
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": 0})
    entry["passed" if report.passed else "failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        verdict = "PASS" if e["failed"] == 0 else "FAIL"
        total = e["passed"] + e["failed"]
        terminalreporter.write_line(
            f"criterion {number} ({e['title']}): {verdict} [{e['passed']}/{total} checks]")
