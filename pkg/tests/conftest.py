import hypothesis

hypothesis.settings.register_profile(
    "numeric", deadline=None, max_examples=60, print_blob=True
)
hypothesis.settings.load_profile("numeric")

# Collected by test_acceptance via record_criterion(); echoed after the run
# so each criterion's pass/fail line is visible without -s.
ACCEPTANCE_LINES: list[str] = []


def record_criterion(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
