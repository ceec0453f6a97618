from hypothesis import strategies as st

from bicliquesat import BipartiteGraph


def complete(n, m):
    return BipartiteGraph(n, [range(n)] * m)


@st.composite
def graphs(draw, max_left=5, max_right=5):
    n = draw(st.integers(0, max_left))
    m = draw(st.integers(0, max_right))
    adj = [draw(st.sets(st.integers(0, n - 1), max_size=n)) if n else set() for _ in range(m)]
    return BipartiteGraph(n, [sorted(a) for a in adj])


def all_labelled_graphs(max_left, max_right):
    """Every bipartite graph on vertex sets ``0..n-1`` and ``0..m-1`` with
    ``n <= max_left`` and ``m <= max_right``."""
    for n in range(max_left + 1):
        for m in range(max_right + 1):
            for mask in range(1 << (n * m)):
                yield BipartiteGraph(n, [[v for v in range(n) if mask >> (c * n + v) & 1] for c in range(m)])
