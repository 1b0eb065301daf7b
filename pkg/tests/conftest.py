def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.REPORT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
