from hypothesis import settings

from helpers import ACCEPTANCE_LINES

settings.register_profile("repo", deadline=None, max_examples=80)
settings.load_profile("repo")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
