import re
from collections import defaultdict

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_results = defaultdict(list)

CRITERIA = {
    1: "exact integrability of both foliations",
    2: "blow-up reproduction",
    3: "conjugacy identities on the complex grid",
    4: "dicritical classifier",
    5: "eigenvalue and index arithmetic",
    6: "numeric conservation",
    7: "singular-locus claims",
    8: "CLI contract",
}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        _results[int(m.group(1))].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        runs = _results.get(n)
        if not runs:
            continue
        failed = [name for name, outcome in runs if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {n} ({CRITERIA[n]}): {status}"
        if failed:
            line += "  [" + ", ".join(failed) + "]"
        terminalreporter.write_line(line)
