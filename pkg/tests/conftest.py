import numpy as np
import pytest

from orepoly import build_context

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ctx4():
    return build_context(2, 2, s=1)


@pytest.fixture(scope="session")
def ctx9():
    return build_context(3, 2, s=1)


@pytest.fixture(scope="session")
def ctx16():
    """GF(16) with Frobenius: r = 4, q = 2."""
    return build_context(2, 4, s=1)


@pytest.fixture(scope="session")
def ctx256():
    return build_context(2, 8, s=1)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def report():
    """Print one PASS/FAIL line per acceptance criterion and keep it for the summary."""
    def emit(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} {label}" + (f" ({detail})" if detail else "")
        print(line)
        _ACCEPTANCE_LINES.append(line)
        return ok
    return emit


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
