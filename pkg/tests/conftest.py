"""Collects acceptance-criterion outcomes and prints them after the run."""

_criterion_lines = []


def record_criterion(line: str) -> None:
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if not _criterion_lines:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for line in sorted(_criterion_lines):
        terminalreporter.write_line(line)
