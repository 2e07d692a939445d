import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(params=["python", "compiled"])
def backend(request):
    from gentoda.algebra import kernel

    if request.param not in kernel.available_backends():
        pytest.skip("compiled kernel not built")
    previous = kernel.active_backend()
    kernel.set_backend(request.param)
    yield request.param
    kernel.set_backend(previous)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS, format_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _ in CRITERIA:
        if name in RESULTS:
            terminalreporter.write_line(format_line(name))
