import numpy as np
from hypothesis import strategies as st

from triadnet import DirectedGraph


@st.composite
def digraphs(draw, min_n=3, max_n=10):
    """Random directed graphs with real hypothesis shrinking over arcs."""
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1), max_size=n * (n - 1)))
    a = np.zeros((n, n), dtype=np.uint8)
    slots = [(i, j) for i in range(n) for j in range(n) if i != j]
    for (i, j), b in zip(slots, bits):
        a[i, j] = b
    return DirectedGraph(a)


def random_digraph(rng, n, density=None):
    """Seeded random digraph for Monte Carlo style tests."""
    if density is None:
        density = rng.uniform(0.05, 0.95)
    a = (rng.random((n, n)) < density).astype(np.uint8)
    np.fill_diagonal(a, 0)
    return DirectedGraph(a)
