from __future__ import annotations

import pytest

from symquiver.cli import fixture_spec


@pytest.fixture(scope="session")
def spec():
    """Factory for the shipped problem files: spec("b2"), spec("c3", kind="Pi")."""
    cache = {}

    def make(name: str, kind: str = "H", field=None):
        key = (name, kind, field)
        if key not in cache:
            cache[key] = fixture_spec(name, kind=kind, field=field)
        return cache[key]

    return make


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
