"""Shared fixtures plus a per-criterion PASS/FAIL summary for the acceptance suite."""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fewweight import gabidulin_tuple, make_field, make_subfield_view, build_linear_set  # noqa: E402

_criteria: dict[int, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.setdefault(marker.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict} ({sum(results)}/{len(results)} checks)")


def view_of(p, e, n):
    return make_subfield_view(make_field(p, e * n), e)


def gabidulin_set(q_p, e, n, r, s=1):
    return build_linear_set(gabidulin_tuple(view_of(q_p, e, n), r, s))


@pytest.fixture(scope="session")
def gab233():
    return gabidulin_set(2, 1, 3, 3)
