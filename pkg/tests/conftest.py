import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# acceptance results are collected here and reported once at the end of the run
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        ACCEPTANCE[number] = (title, ok, detail)
        print(f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} {detail}".rstrip())

    return record


@pytest.fixture
def numpy_backend():
    from levisphere import _kernels

    prev = _kernels.set_backend("numpy")
    yield
    _kernels.set_backend(prev)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        )
