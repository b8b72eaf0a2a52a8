import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(results):
        parts = results[crit]
        failed = [p for p, ok, _ in parts if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = "; ".join(f"{p}: {d}" for p, ok, d in parts if not ok) or "; ".join(p for p, _, _ in parts)
        terminalreporter.write_line(f"criterion {crit:2d}: {status}  {detail}")
