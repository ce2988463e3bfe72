import itertools

import pytest
from hypothesis import given, settings

from obslab import detectors as det
from obslab.errors import InvalidInput, ScaleLimit
from obslab.generators import (
    complete,
    complete_bipartite,
    cone,
    cycle,
    k_tree_random,
    path_graph,
    random_digraph,
    random_graph,
    wall,
)
from obslab.graph_core import Digraph, Graph, line_graph, set_relation
from obslab.rng import SplitMix

from .conftest import graphs


def _oracle_even_hole(g):
    """Subset scan written independently of the detector internals."""
    for size in range(4, g.n + 1, 2):
        for sub in itertools.combinations(range(g.n), size):
            deg = {v: sum(1 for u in sub if g.has_edge(u, v)) for v in sub}
            if any(d != 2 for d in deg.values()):
                continue
            seen = {sub[0]}
            frontier = [sub[0]]
            while frontier:
                v = frontier.pop()
                for u in sub:
                    if u not in seen and g.has_edge(u, v):
                        seen.add(u)
                        frontier.append(u)
            if len(seen) == size:
                return True
    return False


def test_chordal_and_holes():
    ok, order = det.is_chordal(complete(4))
    assert ok and sorted(order) == [0, 1, 2, 3]
    assert det.is_chordal(cycle(4))[0] is False
    w = det.find_hole(cycle(4))
    assert w is not None and det.validate_witness(cycle(4), w)
    assert det.find_hole(complete(4)) is None
    for seed in range(8):
        g = k_tree_random(2, 4 + seed, seed)
        assert det.is_chordal(g)[0]


def test_even_hole_cases():
    assert det.find_even_hole(cycle(4)) is not None
    assert det.find_even_hole(cycle(5)) is None
    w = det.find_even_hole(complete_bipartite(2, 3))
    assert w is not None and len(w.vertices) == 4
    assert det.find_even_hole(cone(path_graph(3))) is None  # diamond


@given(graphs(max_n=10))
@settings(max_examples=60, deadline=None)
def test_even_hole_matches_oracle(g):
    w = det.find_even_hole(g)
    assert (w is not None) == _oracle_even_hole(g)
    if w is not None:
        assert det.validate_witness(g, w)


@given(graphs(min_n=4, max_n=12))
@settings(max_examples=30, deadline=None)
def test_even_hole_dfs_route_agrees_with_subsets(g):
    # drive the path-growing route below its usual cutoff and compare
    subset = det._even_hole_by_subsets(g)
    budget = det._Budget(det.DEFAULT_BUDGET, "test")
    dfs_found = None
    for target in range(4, g.n + 1, 2):
        for order in det._cycles_of_length(g, target, budget):
            dfs_found = order
            break
        if dfs_found:
            break
    assert (subset is not None) == (dfs_found is not None)
    if subset is not None:
        assert len(subset.vertices) == len(dfs_found)


def test_theta_cases():
    w = det.find_theta(complete_bipartite(2, 3))
    assert w is not None and det.validate_witness(complete_bipartite(2, 3), w)
    assert det.find_theta(complete(4)) is None
    assert det.find_theta(complete(5)) is None
    assert det.find_theta(cycle(6)) is None


def _random_theta(seed):
    """A standalone theta with seeded path lengths."""
    rng = SplitMix(seed)
    lens = [2 + rng.below(3) for _ in range(3)]
    edges = []
    nxt = 2
    for ln in lens:
        prev = 0
        for _ in range(ln - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def test_every_theta_has_even_hole():
    for seed in range(200):
        g = _random_theta(seed)
        w = det.find_theta(g)
        assert w is not None and det.validate_witness(g, w)
        h = det.find_even_hole(g)
        assert h is not None and det.validate_witness(g, h)


def test_prism_cases():
    lg, _ = line_graph(complete_bipartite(2, 3))
    w = det.find_prism(lg)
    assert w is not None and det.validate_witness(lg, w)
    assert det.find_prism(complete(5)) is None
    assert det.find_prism(cycle(6)) is None
    k33 = complete(3)
    prism6 = Graph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )
    w = det.find_prism(prism6)
    assert w is not None and det.validate_witness(prism6, w)


def test_even_wheel_cases():
    w = det.find_even_wheel(cone(cycle(4)))
    assert w is not None and det.validate_witness(cone(cycle(4)), w)
    assert det.find_even_wheel(cone(cycle(5))) is None
    assert det.find_even_wheel(wall(3)) is None
    w = det.find_even_wheel(cone(cycle(6)))
    assert w is not None and w.detail_map()["hub"] == 6


def test_clique_and_biclique():
    assert det.find_clique(complete(5), 5) is not None
    assert det.find_clique(complete(5), 6) is None
    assert det.find_clique(cycle(5), 3) is None
    w = det.find_induced_biclique(cycle(4), 2, 2)
    assert w is not None and det.validate_witness(cycle(4), w)
    assert det.find_induced_biclique(cone(path_graph(3)), 2, 2) is None
    with pytest.raises(InvalidInput):
        det.find_clique(complete(3), 0)


def test_membership_cases():
    assert det.membership_E_t(cycle(7), 3) is None
    w = det.membership_E_t(complete(4), 4)
    assert w is not None and w.kind == "clique"
    w = det.membership_E_t(cycle(4), None)
    assert w is not None and w.kind == "biclique"


def test_scale_guard():
    big = complete(70)
    with pytest.raises(ScaleLimit):
        det.find_even_hole(big)
    with pytest.raises(ScaleLimit):
        det.find_theta(big, guard=64)


def test_k_tree_checks():
    diamond = cone(path_graph(3))
    assert det.is_k_tree(diamond, 2) and det.is_k_forest(diamond, 2)
    assert not det.is_k_forest(complete(4), 2)
    assert not det.is_k_tree(cycle(5), 2)
    assert det.is_k_tree(complete(3), 2)
    assert not det.is_k_tree(complete_bipartite(2, 3), 2)
    gem = cone(path_graph(4))
    assert det.is_k_tree(gem, 2)


def test_contains_induced_cases():
    assert det.contains_induced(complete(4), complete(3)) is not None
    emb = det.contains_induced(cycle(6), path_graph(4))
    assert emb is not None
    vs = [emb[i] for i in range(4)]
    for i, j in itertools.combinations(range(4), 2):
        assert cycle(6).has_edge(vs[i], vs[j]) == (abs(i - j) == 1)
    assert det.contains_induced(wall(2), cycle(4)) is None
    w = det.find_even_hole(wall(2))
    assert w is not None and len(w.vertices) > 4  # girth exceeds four
    with pytest.raises(InvalidInput):
        det.contains_induced(complete(3), complete(4))


@given(graphs(min_n=1, max_n=7), graphs(min_n=1, max_n=4))
@settings(max_examples=60, deadline=None)
def test_contains_induced_matches_exhaustive(g, h):
    if h.n > g.n:
        g, h = h, g
    emb = det.contains_induced(g, h)
    brute = False
    for sub in itertools.permutations(range(g.n), h.n):
        if all(
            g.has_edge(sub[a], sub[b]) == h.has_edge(a, b)
            for a, b in itertools.combinations(range(h.n), 2)
        ):
            brute = True
            break
    assert (emb is not None) == brute
    if emb is not None:
        for a, b in itertools.combinations(range(h.n), 2):
            assert g.has_edge(emb[a], emb[b]) == h.has_edge(a, b)


def test_clique_or_stable():
    tag, w = det.find_clique_or_stable(complete(4), 3, 5)
    assert tag == "clique" and det.validate_witness(complete(4), w)
    tag, w = det.find_clique_or_stable(Graph(3, (0, 0, 0)), 2, 3)
    assert tag == "stable"
    tag, w = det.find_clique_or_stable(complete(2), 3, 2)
    assert tag == "neither" and w is None  # below the guarantee threshold


def test_anticomplete_family():
    matching = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    sets = [[0, 1], [2, 3], [4, 5]]
    assert det.anticomplete_family(matching, sets, 3) == [0, 1, 2]
    tangled = complete(4)
    assert det.anticomplete_family(tangled, [[0], [1]], 2) is None
    with pytest.raises(InvalidInput):
        det.anticomplete_family(matching, [[0, 1], [1, 2]], 1)


def test_anticomplete_family_planted():
    rng = SplitMix(4)
    n = 60
    sets = [[3 * i, 3 * i + 1, 3 * i + 2] for i in range(20)]
    # noise: tangle the first fifteen triples pairwise, keep the last five clean
    edges = [(0, 1), (1, 2)]
    for a in range(15):
        for b in range(a + 1, 15):
            if rng.chance(2, 3):
                edges.append((3 * a + rng.below(3), 3 * b + rng.below(3)))
    g = Graph.from_edges(n, edges)
    got = det.anticomplete_family(g, sets, 5)
    assert got is not None and len(got) == 5
    for a, b in itertools.combinations(got, 2):
        assert set_relation(g, sets[a], sets[b]) == "anticomplete"


def test_acyclic_tournament_or_stable():
    trans = Digraph.from_arcs(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    tag, chain = det.acyclic_tournament_or_stable(trans, 4, 2)
    assert tag == "tournament" and chain == (0, 1, 2, 3)
    arcless = Digraph.from_arcs(3, [])
    tag, stab = det.acyclic_tournament_or_stable(arcless, 2, 3)
    assert tag == "stable" and len(stab) == 3
    rng = SplitMix(9)
    for _ in range(60):
        d = random_digraph(16, rng.next_u64(), 1 + rng.below(9), 10)
        tag, _ = det.acyclic_tournament_or_stable(d, 2, 2)
        assert tag != "neither"


@given(graphs(min_n=1, max_n=8))
@settings(max_examples=60, deadline=None)
def test_witnesses_revalidate(g):
    for finder in (det.find_hole, det.find_even_hole, det.find_theta, det.find_prism, det.find_even_wheel):
        w = finder(g)
        if w is not None:
            assert det.validate_witness(g, w)


def test_deterministic_witnesses():
    rng = SplitMix(2)
    for _ in range(20):
        g = random_graph(9, rng.next_u64(), 1, 2)
        assert det.find_even_hole(g) == det.find_even_hole(g)
        assert det.find_theta(g) == det.find_theta(g)
