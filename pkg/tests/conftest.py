"""Collects acceptance outcomes and prints one line per criterion at the end."""

from collections import defaultdict

import pytest

TITLES = {
    1: "dimension formula and oracle rank",
    2: "structure constants against matrix products",
    3: "center dimension, bases and centrality",
    4: "semisimplicity predicate",
    5: "radical ideal and nilpotency index",
    6: "corner algebras and D idempotents",
    7: "Wedderburn blocks and matrix-unit law",
    8: "scheme axioms and algebra property suites",
}

_outcomes: dict[int, list[tuple[str, str, str]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            state = "xfail"
        else:
            state = report.outcome
        note = report.wasxfail if hasattr(report, "wasxfail") else ""
        _outcomes[marker.args[0]].append((item.name, state, note))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(TITLES):
        results = _outcomes.get(n)
        if not results:
            tr.write_line(f"criterion {n}: NOT RUN  {TITLES[n]}")
            continue
        ok = all(state == "passed" for _, state, _ in results)
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}")
        for name, state, note in results:
            if state != "passed":
                tr.write_line(f"    {state}: {name}" + (f"  ({note})" if note else ""))
