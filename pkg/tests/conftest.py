import os

import hypothesis

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=500)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import lines

    summary = lines()
    if summary:
        terminalreporter.section("acceptance criteria")
        for line in summary:
            terminalreporter.write_line(line)
