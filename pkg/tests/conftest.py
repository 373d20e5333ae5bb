import os

import pytest
from hypothesis import settings

settings.register_profile("galrep", deadline=None, max_examples=50, derandomize=True)
settings.load_profile("galrep")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("GALREP_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="long reproduction; set GALREP_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict(capsys):
    """Print and remember one PASS/FAIL line per acceptance criterion."""

    def emit(label: str, ok: bool | None, detail: str = "") -> bool | None:
        tag = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        line = f"[{tag}] {label}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
