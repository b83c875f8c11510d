import numpy as np
import pytest

from circhopf.hopf.algebra import function_algebra, group_algebra
from circhopf.hopf.groups import GROUPS


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def shipped_hopf():
    """The twelve group and function algebras, exact backend."""
    out = {}
    for name, build in GROUPS.items():
        out[f"group_{name}"] = group_algebra(build())
        out[f"fun_{name}"] = function_algebra(build())
    return out


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
