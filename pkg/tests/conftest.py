import hypothesis.strategies as st
import numpy as np
import pytest

from framelab import Frame

ACCEPTANCE_RESULTS = []


@st.composite
def frame_params(draw, m_values=(2, 3, 4), fields=("R", "C"), extra=2):
    m = draw(st.sampled_from(m_values))
    n = draw(st.integers(m + 1, 2 * m + extra))
    field = draw(st.sampled_from(fields))
    seed = draw(st.integers(0, 2**32 - 1))
    return m, n, field, seed


def e(i, m):
    v = np.zeros(m)
    v[i] = 1.0
    return v


@pytest.fixture
def e1e2e1():
    return Frame.from_array(np.column_stack([e(0, 2), e(1, 2), e(0, 2)]))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
