import pytest
from hypothesis import settings, strategies as st

from fairalloc import PublicGoodsInstance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    """Log one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _fix_rows(rows):
    return [r if any(r) else [1] + r[1:] for r in rows]


@st.composite
def valuation_rows(draw, n, m, max_v=4):
    rows = draw(st.lists(st.lists(st.integers(0, max_v), min_size=m, max_size=m), min_size=n, max_size=n))
    return _fix_rows(rows)


@st.composite
def public_instances(draw, min_n=1, max_n=3, max_m=6, max_v=4, k_at_least_n=False):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(n if k_at_least_n else 1, max(max_m, n)))
    rows = draw(valuation_rows(n, m, max_v))
    k = draw(st.integers(n if k_at_least_n else 0, m))
    return PublicGoodsInstance.with_k(rows, k)
