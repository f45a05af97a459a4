_acceptance_results: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance_results[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for nodeid in sorted(_acceptance_results):
        name = nodeid.split("::")[-1]
        if name.startswith("test_"):
            name = name[len("test_") :]
        status = "PASS" if _acceptance_results[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {name}: {status}")
