import mpmath
import pytest

from mzv_identities.numerics import PrecisionContext

# the oracle side of every comparison runs in mpmath's global context, well
# above the 224 working bits of the default PrecisionContext
mpmath.mp.prec = 400

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(192)


def oracle(x):
    """Re-bind a value from a private context to mpmath's global context."""
    return mpmath.mp.make_mpf(x._mpf_) if hasattr(x, "_mpf_") else mpmath.mpf(x)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
