import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from quantree.experiments import build_paper_example
from quantree.graph import MetricGraph

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@st.composite
def trees(draw, max_edges=8, lo=0.2, hi=2.0, equal_lengths=False):
    """Random metric trees: vertex i+1 hangs off a drawn earlier vertex."""
    n = draw(st.integers(1, max_edges))
    parents = [draw(st.integers(0, i)) for i in range(n)]
    if equal_lengths:
        lengths = [draw(st.floats(lo, hi))] * n
    else:
        lengths = [draw(st.floats(lo, hi)) for _ in range(n)]
    return MetricGraph(n + 1, tuple((p, i + 1, L) for i, (p, L) in enumerate(zip(parents, lengths))))


@pytest.fixture(scope="session")
def paper05():
    return build_paper_example(0.05)
