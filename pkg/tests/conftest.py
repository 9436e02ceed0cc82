from importlib import resources

import pytest

from quotbench import quiver as qv
from quotbench.category import module_category_handle
from quotbench.mesh import build_mesh
from quotbench.stable import StableCategory


def data_path(name):
    return str(resources.files("quotbench") / "data" / name)


@pytest.fixture(scope="session")
def algebra_a():
    """kQ/(αβα, βαβ) on the two-cycle quiver."""
    return qv.load_algebra(data_path("example-4-1-algebra.json"))


@pytest.fixture(scope="session")
def mod_a(algebra_a):
    return qv.knit_module_category(algebra_a)


@pytest.fixture(scope="session")
def mod_a_handle(mod_a):
    return module_category_handle(mod_a)


@pytest.fixture(scope="session")
def stable_a(mod_a):
    return StableCategory(mod_a)


@pytest.fixture(scope="session")
def stable_cat(stable_a):
    return stable_a.cat


@pytest.fixture(scope="session")
def ka3():
    return qv.load_algebra(data_path("kA3.json"))


@pytest.fixture(scope="session")
def mod_ka3(ka3):
    return qv.knit_module_category(ka3)


@pytest.fixture(scope="session")
def ka3_handle(mod_ka3):
    return module_category_handle(mod_ka3)


@pytest.fixture(scope="session")
def orbit_a3():
    return build_mesh(data_path("example-4-2-orbit-A3.json"))


@pytest.fixture(scope="session")
def pentagon():
    return build_mesh(data_path("cluster-A2-pentagon.json"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
