import pytest

CRITERIA = {
    "AC1": "golden polynomial tables reproduced by the oracle",
    "AC2": "oracle = recursion = closed form, n <= 8",
    "AC3": "multivariate engines vs oracle and direct construction",
    "AC4": "symmetry orbits give identical polynomials, n <= 7",
    "AC5": "q-analogues vs (x,q) oracle, collapse and inequality",
    "AC6": "sequence identities, n <= 8",
    "AC7": "restricted classes: B-classes, avoiders, block convolutions",
    "AC8": "EGF pipelines reproduce oracle and printed series",
    "AC9": "soft reports are structured and never hard-fail",
    "AC10": "insertion identities, involutions, mass, determinism",
}

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    name = mark.args[0]
    entry = _results.setdefault(name, {"passed": 0, "failed": [], "unattainable": []})
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            entry["unattainable"].append(f"{item.name}: {rep.wasxfail}")
        elif rep.failed:
            entry["failed"].append(item.name)
        elif rep.passed:
            entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, desc in CRITERIA.items():
        r = _results.get(name)
        if r is None:
            continue
        status = "PASS" if not r["failed"] and not r["unattainable"] else "FAIL"
        line = f"{name:<5} {status}  {desc} ({r['passed']} checks passed"
        if r["failed"]:
            line += f", failed: {', '.join(r['failed'])}"
        line += ")"
        tr.write_line(line)
        for why in r["unattainable"]:
            tr.write_line(f"        unattainable as written -> {why}")
