import pytest


@pytest.fixture
def announce(request):
    """Write a line straight through the terminal reporter so it shows up
    even while stdout capture is active."""
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def _announce(line: str) -> None:
        if reporter is not None:
            reporter.ensure_newline()
            reporter.write_line(line)
        else:
            print(line)

    return _announce
