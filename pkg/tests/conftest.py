import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from so21sr import kernels  # noqa: E402

_ACCEPTANCE = []


def record_criterion(number, title, passed, detail):
    line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    _ACCEPTANCE.append((number, line))
    print(line)
    return passed


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
