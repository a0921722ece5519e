from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

from ccsn.parser import parse_program
from ccsn.syntax import Calculus

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"

X1 = "run (b1 || b2); stop"
X2 = "chan c1 c2;\nrun ((((b1;(c1&c2)) || ~c1)\\c1) || ~c2); (b2+b3)"
X3 = "chan c1 c2;\nrun (((c1&c2) || ~c1)\\c1) || ~c2"
X4 = "chan c1 c2 c3;\nrun ((((~c1&c2);b1) || (c1&~c3))\\c1) || ((~c2&c3);b2)"


@pytest.fixture
def x1():
    return parse_program(X1)


@pytest.fixture
def x2():
    return parse_program(X2)


@pytest.fixture
def x3():
    return parse_program(X3)


@pytest.fixture
def x4():
    return parse_program(X4, Calculus.CCSNPLUS)


@pytest.fixture
def programs_dir() -> Path:
    return PROGRAMS


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
