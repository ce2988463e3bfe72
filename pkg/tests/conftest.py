import itertools

from hypothesis import strategies as hst

from obslab.graph_core import Graph


@hst.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(hst.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    picks = draw(hst.lists(hst.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, picks) if keep]
    return Graph.from_edges(n, edges)


def brute_force_treewidth(g: Graph) -> int:
    """Minimum over every elimination order of the largest neighborhood met
    while eliminating into the fill graph, simulated with plain sets; an
    oracle independent of the solver's bitmask machinery."""
    if g.n == 0:
        return -1
    best = None
    for order in itertools.permutations(range(g.n)):
        adj = {v: set(g.neighbors(v)) for v in range(g.n)}
        removed: set[int] = set()
        width = -1
        for v in order:
            nb = adj[v] - removed
            width = max(width, len(nb))
            for a in nb:
                adj[a] |= nb - {a}
            removed.add(v)
        if best is None or width < best:
            best = width
    return best
