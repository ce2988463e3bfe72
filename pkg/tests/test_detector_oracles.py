"""Dual-route checks: each path-growing detector against an independent
pattern-library search built on the induced-subgraph matcher."""

from hypothesis import given, settings

from obslab import detectors as det
from obslab.generators import random_graph
from obslab.graph_core import Graph
from obslab.rng import SplitMix

from .conftest import graphs


def _theta_patterns(max_n=8):
    """All theta graphs on at most max_n vertices: two ends joined by three
    chains of chosen lengths >= 2."""
    out = []
    for l1 in range(2, max_n):
        for l2 in range(l1, max_n):
            for l3 in range(l2, max_n):
                n = 2 + (l1 - 1) + (l2 - 1) + (l3 - 1)
                if n > max_n:
                    continue
                edges = []
                nxt = 2
                for ln in (l1, l2, l3):
                    prev = 0
                    for _ in range(ln - 1):
                        edges.append((prev, nxt))
                        prev = nxt
                        nxt += 1
                    edges.append((prev, 1))
                out.append(Graph.from_edges(n, edges))
    return out


def _prism_patterns(max_n=8):
    """All prisms on at most max_n vertices: two triangles matched by three
    chains of chosen lengths >= 1."""
    out = []
    for l1 in range(1, max_n):
        for l2 in range(l1, max_n):
            for l3 in range(l2, max_n):
                n = 6 + (l1 - 1) + (l2 - 1) + (l3 - 1)
                if n > max_n:
                    continue
                edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
                nxt = 6
                for i, ln in enumerate((l1, l2, l3)):
                    prev = i
                    for _ in range(ln - 1):
                        edges.append((prev, nxt))
                        prev = nxt
                        nxt += 1
                    edges.append((prev, 3 + i))
                out.append(Graph.from_edges(n, edges))
    return out


THETAS = _theta_patterns()
PRISMS = _prism_patterns()


@given(graphs(max_n=8))
@settings(max_examples=80, deadline=None)
def test_theta_matches_pattern_library(g):
    found = det.find_theta(g)
    oracle = any(
        p.n <= g.n and det.contains_induced(g, p) is not None for p in THETAS
    )
    assert (found is not None) == oracle
    if found is not None:
        assert det.validate_witness(g, found)


@given(graphs(max_n=8))
@settings(max_examples=80, deadline=None)
def test_prism_matches_pattern_library(g):
    found = det.find_prism(g)
    oracle = any(
        p.n <= g.n and det.contains_induced(g, p) is not None for p in PRISMS
    )
    assert (found is not None) == oracle
    if found is not None:
        assert det.validate_witness(g, found)


def test_even_hole_routes_agree_at_production_sizes():
    # above the subset cutoff the detector switches to path growing; compare
    # the two routes directly there
    rng = SplitMix(17)
    for _ in range(6):
        n = 19 + rng.below(3)
        g = random_graph(n, rng.next_u64(), 1 + rng.below(2), 10)
        w = det.find_even_hole(g)
        subset = det._even_hole_by_subsets(g)
        assert (w is not None) == (subset is not None)
        if w is not None:
            assert det.validate_witness(g, w)
            assert len(w.vertices) == len(subset.vertices)  # both shortest-first


def test_pattern_library_sizes():
    assert min(p.n for p in THETAS) == 5  # the smallest theta is K_{2,3}
    assert min(p.n for p in PRISMS) == 6
    assert all(det.find_theta(p) is not None for p in THETAS)
    assert all(det.find_prism(p) is not None for p in PRISMS)


def test_even_wheel_routes_agree_at_production_sizes():
    rng = SplitMix(23)
    hits = 0
    for _ in range(6):
        n = 19 + rng.below(2)
        g = random_graph(n, rng.next_u64(), 25 + rng.below(10), 100)
        w = det.find_even_wheel(g, budget=10_000_000)
        brute = _brute_even_wheel(g)
        assert (w is not None) == brute
        if w is not None:
            hits += 1
            assert det.validate_witness(g, w)
    assert hits > 0


def _brute_even_wheel(g):
    import itertools

    from obslab.graph_core import mask_of

    for h in range(g.n):
        if g.degree(h) < 4:
            continue
        rest = [v for v in range(g.n) if v != h]
        for size in range(4, g.n):
            for sub in itertools.combinations(rest, size):
                smask = mask_of(sub)
                k = (g.adj[h] & smask).bit_count()
                if k < 4 or k % 2:
                    continue
                if det._is_cycle_subset(g, sub, smask) is not None:
                    return True
    return False
