import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from simphom.serialize import load_builtin  # noqa: E402

_CRITERIA: dict[int, list[tuple[str, str, str]]] = {}


@pytest.fixture(scope="session")
def fs():
    return load_builtin()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args[:2]
    variant = mark.kwargs.get("variant", "")
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "FAIL"
        elif rep.passed:
            status = "PASS"
        else:
            status = "FAIL"
        _CRITERIA.setdefault(number, []).append((status, title, variant))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entries = _CRITERIA[number]
        status = "PASS" if all(e[0] == "PASS" for e in entries) else "FAIL"
        title = entries[0][1]
        notes = [f"{v}: {s}" for s, _, v in entries if v]
        tail = f"  [{'; '.join(notes)}]" if notes else ""
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}{tail}")
