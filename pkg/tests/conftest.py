from collections import OrderedDict

import pytest

CRITERIA = OrderedDict(
    [
        (1, "braid equation, n<=4, all classes, z in {-1,-0.9,0,0.37,1}"),
        (2, "Baxterized braid equation, 5x5 grid, n<=3"),
        (3, "unitarity, quadratic relation, Hecke relation at z=1"),
        (4, "periodicity R^4=-I, R^8=I, n<=4"),
        (5, "projectors and diagonalization, n<=3"),
        (6, "non-equivalence of the block sum, Schmidt rank of V"),
        (7, "odd 9x9 family: unitarity and Baxterized braid equation"),
        (8, "tower traces and per-block recursion"),
        (9, "RLL, RTT and constant FRT relations"),
        (10, "Hamiltonians"),
        (11, "Cayley potential closed forms and singular shifts"),
        (12, "noncommutative-space operator identities"),
        (13, "enhanced system and link-invariant properties"),
        (14, "entanglement"),
        (15, "phase canonicalization"),
        (16, "structured apply performance and accuracy"),
    ]
)

_outcomes: dict[int, list[tuple[str, bool]]] = {}
_notes: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(marker.args[0], []).append((item.name, rep.passed))


@pytest.fixture
def note():
    """Append a line to the acceptance summary."""
    return _notes.append


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, title in CRITERIA.items():
        results = _outcomes.get(num)
        if not results:
            tr.write_line(f"criterion {num:2d}: NOT RUN  {title}")
            continue
        failed = [name for name, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        extra = f"  (failed: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {num:2d}: {status}  {title}{extra}")
    for line in _notes:
        tr.write_line(f"note: {line}")
