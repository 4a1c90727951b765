"""Collects acceptance-criterion outcomes and prints one line per criterion."""

_outcomes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    for key, (number, title) in report.user_properties:
        if key != "criterion":
            continue
        # a skipped call counts as a failure
        if report.when == "call" or report.failed:
            _, ok, seconds = _outcomes.get(number, (title, True, 0.0))
            _outcomes[number] = (title, ok and report.passed, seconds + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        title, ok, seconds = _outcomes[number]
        terminalreporter.write_line(
            f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.2f}s)")
