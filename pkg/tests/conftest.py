import pytest

from bdops import backend


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # JIT compilation happens here, not inside timed tests
    backend.warmup()


@pytest.fixture(params=backend.available_backends())
def each_backend(request):
    previous = backend.backend_name()
    backend.set_backend(request.param)
    backend.warmup()
    yield request.param
    backend.set_backend(previous)
