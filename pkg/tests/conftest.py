import numpy as np
import pytest

from roadsight import _kernels
from roadsight.synth import synth_dataset

ACCEPTANCE_RESULTS = []

BACKENDS = [pytest.param(_kernels.python_backend, id="python")]
if _kernels.compiled_backend is not None:
    BACKENDS.append(pytest.param(_kernels.compiled_backend, id="cython"))


@pytest.fixture(scope="session")
def small_dataset(tmp_path_factory):
    """A 24-frame synthetic dataset shared by the slower tests."""
    root = tmp_path_factory.mktemp("synth24")
    synth_dataset(root, 24, 5)
    return root


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test with each available kernel backend patched in."""
    mod = request.param
    for name in ("label_components", "trace_boundary", "hysteresis"):
        monkeypatch.setattr(_kernels, name, getattr(mod, name))
    return mod


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
