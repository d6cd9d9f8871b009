import pytest

from lampkit.construction import build
from lampkit.io import parse_recipe_inline

ACCEPTANCE_LINES: list[str] = []


def lattice(text: str):
    """Build the lattice of an inline recipe such as ``grid 2 2; fork 0 0 1``."""
    return build(parse_recipe_inline(text))


@pytest.fixture
def record():
    """Collect one acceptance verdict line for the terminal summary."""

    def add(line: str) -> None:
        print(line)
        ACCEPTANCE_LINES.append(line)

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
