"""Deterministic constructors for every named graph family, planted-structure
synthesizers for the extractor tests, and isomorphism-free enumeration of
small graphs.

Randomized families take an explicit seed and draw from the package splitmix
stream; identical seeds reproduce identical graphs forever.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInput, ScaleLimit
from .graph_core import Graph, bits, check_vertex_set, line_graph, mask_of, subdivide
from .rng import SplitMix
from .structures import Crystal, Phantom, ekey


@dataclass(frozen=True)
class WallSpec:
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise InvalidInput("wall side parameter must be >= 1")


@dataclass(frozen=True)
class CrystalSpec:
    k: int
    arms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.k < 1 or self.k != len(self.arms):
            raise InvalidInput("need k >= 1 double stars, one arm pair each")
        if any(a < 1 or b < 1 for a, b in self.arms):
            raise InvalidInput("leaf counts must be >= 1")


# -- elementary families -----------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidInput("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(s: int, t: int) -> Graph:
    if s < 1 or t < 1:
        raise InvalidInput("biclique sides must be >= 1")
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidInput("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cone(f: Graph) -> Graph:
    """f plus one universal vertex (appended last)."""
    apex = f.n
    edges = list(f.edges()) + [(v, apex) for v in range(f.n)]
    return Graph.from_edges(f.n + 1, edges)


def double_star(a: int, b: int) -> tuple[Graph, tuple[int, int]]:
    """Two adjacent centers with a and b pendant leaves; returns the middle edge."""
    if a < 1 or b < 1:
        raise InvalidInput("double star needs at least one leaf per center")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Graph.from_edges(2 + a + b, edges), (0, 1)


def tree_T(d: int, r: int) -> tuple[Graph, int]:
    """Rooted tree of radius r: root degree d, inner vertices degree d+1.

    Returns (graph, root).  All leaves sit at distance exactly r.
    """
    if d < 1 or r < 0:
        raise InvalidInput("need d >= 1 and r >= 0")
    edges = []
    level = [0]
    nxt = 1
    for _ in range(r):
        fresh = []
        for v in level:
            for _ in range(d):
                edges.append((v, nxt))
                fresh.append(nxt)
                nxt += 1
        level = fresh
    return Graph.from_edges(nxt, edges), 0


def crystal_graph(spec: CrystalSpec) -> Graph:
    """Coned double stars glued along their (shared) middle edge.

    Vertices: 0,1 are the glued middle-edge ends; then per arm an apex and
    its two leaf groups.
    """
    edges = [(0, 1)]
    nxt = 2
    for a, b in spec.arms:
        apex = nxt
        nxt += 1
        edges += [(apex, 0), (apex, 1)]
        for _ in range(a):
            edges += [(nxt, 0), (nxt, apex)]
            nxt += 1
        for _ in range(b):
            edges += [(nxt, 1), (nxt, apex)]
            nxt += 1
    return Graph.from_edges(nxt, edges)


# -- walls and basic obstructions ----------------------------------------------


def _brick_wall(h: int, w: int | None = None) -> Graph:
    """Brick wall with h rows and w columns of bricks: (h+1) x (2w+2) grid,
    alternating verticals deleted, degree-one vertices trimmed."""
    if w is None:
        w = h
    rows, cols = h + 1, 2 * w + 2
    vid = {(r, c): r * cols + c for r in range(rows) for c in range(cols)}
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((vid[(r, c)], vid[(r, c + 1)]))
    for r in range(rows - 1):
        for c in range(cols):
            if c % 2 == r % 2:
                edges.append((vid[(r, c)], vid[(r + 1, c)]))
    g = Graph.from_edges(rows * cols, edges)
    keep = g.full_mask()
    while True:
        drop = 0
        for v in bits(keep):
            if (g.adj[v] & keep).bit_count() <= 1:
                drop |= 1 << v
        if not drop:
            break
        keep &= ~drop
    old = list(bits(keep))
    index = {v: i for i, v in enumerate(old)}
    out = [(index[u], index[v]) for u, v in g.edges() if (keep >> u) & 1 and (keep >> v) & 1]
    return Graph.from_edges(len(old), out)


def wall(spec: WallSpec | int) -> Graph:
    """The t-by-t hexagonal wall, calibrated so its treewidth is exactly t.

    The raw square brick family with h brick rows has treewidth h+1 (checked
    by the exact solver for h <= 2), so the parameter is shifted internally:
    wall(t) is the brick wall with t-1 rows and t columns of bricks for
    t >= 2 (keeping a degree-three vertex in every member), and wall(1) is
    the single elementary brick, a six-cycle.
    """
    t = spec.t if isinstance(spec, WallSpec) else WallSpec(spec).t
    if t == 1:
        return _brick_wall(1, 1)
    return _brick_wall(t - 1, t)


def seeded_subdivision(g: Graph, seed: int) -> Graph:
    """Subdivide every edge 1 or 2 times, chosen by a splitmix stream."""
    rng = SplitMix(seed)
    return subdivide(g, {e: 1 + rng.below(2) for e in g.edges()})


def basic_obstruction(t: int, kind: str, seed: int = 0) -> Graph:
    """One of the four t-basic obstruction families; seed drives the
    subdivision choices of the wall-based kinds."""
    if t < 1:
        raise InvalidInput("obstruction parameter must be >= 1")
    if kind == "complete":
        return complete(t + 1)
    if kind == "biclique":
        return complete_bipartite(t, t)
    if kind == "wall":
        return seeded_subdivision(wall(t), seed)
    if kind == "line_of_wall":
        return line_graph(seeded_subdivision(wall(t), seed))[0]
    raise InvalidInput(f"unknown obstruction kind {kind!r}")


# -- k-trees ------------------------------------------------------------------


def k_tree_random(k: int, n: int, seed: int) -> Graph:
    """Grow from K_k by attaching each new vertex to a uniformly chosen
    existing k-clique."""
    if k < 1 or n < k:
        raise InvalidInput("need n >= k >= 1")
    rng = SplitMix(seed)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    cliques = [tuple(range(k))]
    for v in range(k, n):
        base = cliques[rng.below(len(cliques))]
        for u in base:
            edges.append((u, v))
        for drop in range(k):
            cliques.append(tuple(sorted(set(base) - {base[drop]} | {v})))
    return Graph.from_edges(n, edges)


def _wl_key(g: Graph, rounds: int = 3) -> tuple:
    colors = [g.degree(v) for v in range(g.n)]
    for _ in range(rounds):
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranking[s] for s in sigs]
    return (g.n, g.m, tuple(sorted(colors)))


def _isomorphic(g: Graph, h: Graph) -> bool:
    from .detectors import contains_induced

    if g.n != h.n or g.m != h.m:
        return False
    return contains_induced(g, h, guard=max(g.n, 1)) is not None


def k_tree_enumerate(k: int, n: int):
    """All k-trees on n vertices, one per isomorphism class for n <= 12
    (beyond that the stream may repeat classes)."""
    if k < 1 or n < k:
        raise InvalidInput("need n >= k >= 1")
    dedup = n <= 12
    level = [complete(k)]
    for size in range(k + 1, n + 1):
        grown: list[Graph] = []
        seen: dict[tuple, list[Graph]] = {}
        for g in level:
            for clique in itertools.combinations(range(g.n), k):
                cm = mask_of(clique)
                if not all((g.adj[u] & cm) == cm & ~(1 << u) for u in clique):
                    continue
                cand = Graph.from_edges(g.n + 1, list(g.edges()) + [(u, g.n) for u in clique])
                if not dedup:
                    grown.append(cand)
                    continue
                key = _wl_key(cand)
                bucket = seen.setdefault(key, [])
                if any(_isomorphic(cand, other) for other in bucket):
                    continue
                bucket.append(cand)
                grown.append(cand)
        level = grown
    yield from level


# -- random graphs ----------------------------------------------------------------


def random_graph(n: int, seed: int, num: int = 1, den: int = 2) -> Graph:
    """Seeded Erdos-Renyi-style graph with edge probability num/den."""
    rng = SplitMix(seed)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.chance(num, den)
    ]
    return Graph.from_edges(n, edges)


def random_digraph(n: int, seed: int, num: int = 1, den: int = 2):
    from .graph_core import Digraph

    rng = SplitMix(seed)
    arcs = [
        (i, j) for i in range(n) for j in range(n) if i != j and rng.chance(num, den)
    ]
    return Digraph.from_arcs(n, arcs)


# -- exhaustive small-graph enumeration up to isomorphism ----------------------------


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[int, int], int]:
    out = {}
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            out[(i, j)] = k
            k += 1
    return out


@lru_cache(maxsize=None)
def _perm_sources(n: int) -> np.ndarray:
    """Row p, column k: source bit of pair k under permutation p."""
    pi = _pair_index(n)
    perms = list(itertools.permutations(range(n)))
    src = np.empty((len(perms), len(pi)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for (i, j), k in pi.items():
            a, b = perm[i], perm[j]
            if a > b:
                a, b = b, a
            src[p, k] = pi[(a, b)]
    return src


def _edge_mask(g: Graph) -> int:
    pi = _pair_index(g.n)
    m = 0
    for e in g.edges():
        m |= 1 << pi[e]
    return m


def _graph_from_edge_mask(n: int, emask: int) -> Graph:
    pi = _pair_index(n)
    rev = {k: e for e, k in pi.items()}
    return Graph.from_edges(n, [rev[k] for k in bits(emask)])


def canonical_key(g: Graph) -> int:
    """Minimum edge-bitmask over all vertex relabelings (n <= 8)."""
    if g.n > 8:
        raise ScaleLimit("canonical_key enumerates all permutations; n <= 8 only")
    if g.n <= 1:
        return 0
    src = _perm_sources(g.n)
    e = _edge_mask(g)
    vals = _canonical_batch(np.array([e], dtype=np.int64), src)
    return int(vals[0])


def _canonical_batch(emasks: np.ndarray, src: np.ndarray) -> np.ndarray:
    kbits = src.shape[1]
    out = np.empty(len(emasks), dtype=np.int64)
    chunk = max(1, 2_000_000 // src.shape[0])
    for lo in range(0, len(emasks), chunk):
        block = emasks[lo : lo + chunk, None]
        vals = np.zeros((block.shape[0], src.shape[0]), dtype=np.int64)
        for k in range(kbits):
            vals |= ((block >> src[None, :, k]) & 1) << k
        out[lo : lo + chunk] = vals.min(axis=1)
    return out


_ISO_CACHE: dict[int, list[Graph]] = {}


def enumerate_graphs(n: int) -> list[Graph]:
    """All graphs on n vertices up to isomorphism, canonical representatives,
    built by one-vertex extensions of the (n-1)-vertex classes.

    Fast through n = 7 (the 1044 classes take a few seconds); n = 8 works
    but the permutation-minimum canonicalization makes it a many-minute run.
    """
    if n > 8:
        raise ScaleLimit("exhaustive enumeration supported for n <= 8")
    if n in _ISO_CACHE:
        return _ISO_CACHE[n]
    if n <= 1:
        reps = [Graph(n, tuple([0] * n))]
        _ISO_CACHE[n] = reps
        return reps
    prev = enumerate_graphs(n - 1)
    pi = _pair_index(n)
    cands = []
    for g in prev:
        base = 0
        for e in g.edges():
            base |= 1 << pi[e]
        for nb in range(1 << (n - 1)):
            extra = base
            for i in bits(nb):
                extra |= 1 << pi[(i, n - 1)]
            cands.append(extra)
    src = _perm_sources(n)
    keys = _canonical_batch(np.array(cands, dtype=np.int64), src)
    reps = [_graph_from_edge_mask(n, int(k)) for k in sorted(set(int(v) for v in keys))]
    _ISO_CACHE[n] = reps
    return reps


# -- planted structures ---------------------------------------------------------------


def plant_phantom_in(
    host: Graph,
    z0_vertices,
    d: int,
    r: int,
    seed: int = 0,
    density: str = "minimal",
) -> tuple[Graph, Phantom]:
    """Extend host with fresh layered material so z0 carries a (z0, d, r)
    phantom; in coned mode a seeded choice of anchor-apex edges additionally
    gets its set completed to the opposite anchor at the first level where
    such edges exist, forcing the tree branch of the cone-tree recursion."""
    if d < 1 or r < 0:
        raise InvalidInput("need d >= 1 and r >= 0")
    if density not in ("minimal", "coned"):
        raise InvalidInput(f"unknown density mode {density!r}")
    z0 = frozenset(z0_vertices)
    check_vertex_set(host, z0)
    rng = SplitMix(seed)
    adj = list(host.adj)
    n = host.n

    def add_vertex() -> int:
        nonlocal n
        adj.append(0)
        n += 1
        return n - 1

    def add_edge(u: int, v: int) -> None:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    def edges_inside(vset) -> list[tuple[int, int]]:
        vm = mask_of(vset)
        out = []
        for u in bits(vm):
            for v in bits(adj[u] & vm):
                if v > u:
                    out.append((u, v))
        return out

    base_edges = edges_inside(z0)
    anchors = base_edges[0] if base_edges else None
    densified = False
    layers = [z0]
    maps = []
    cur = set(z0)
    for level in range(1, r + 1):
        inside = edges_inside(cur if level > 1 else z0)
        gamma: dict[tuple[int, int], frozenset[int]] = {}
        for e in sorted(inside):
            fresh = [add_vertex() for _ in range(d)]
            for w in fresh:
                add_edge(e[0], w)
                add_edge(e[1], w)
            gamma[ekey(*e)] = frozenset(fresh)
        if density == "coned" and not densified and anchors is not None:
            a1, a2 = anchors
            eligible = []
            for e in sorted(gamma):
                u, v = e
                others = {u, v} - {a1, a2}
                if len(others) != 1:
                    continue
                (w,) = others
                if adj[w] >> a1 & 1 and adj[w] >> a2 & 1:
                    eligible.append(e)
            if eligible:
                chosen = [e for e in eligible if rng.chance(1, 2)] or [eligible[0]]
                for e in chosen:
                    opp = a2 if a1 in e else a1
                    for w in gamma[e]:
                        add_edge(opp, w)
                densified = True
        for s in gamma.values():
            cur |= s
        layers.append(frozenset(cur))
        maps.append(gamma)
    grown = Graph(n, tuple(adj))
    return grown, Phantom(tuple(layers), tuple(maps), d)


def plant_phantom(
    z0graph: Graph, d: int, r: int, seed: int = 0, density: str = "minimal"
) -> tuple[Graph, Phantom]:
    """Build a graph containing a (V(z0graph), d, r) phantom over a copy of
    z0graph; minimal mode attaches each fresh vertex to its edge ends only."""
    return plant_phantom_in(z0graph, range(z0graph.n), d, r, seed, density)


def plant_crystal(
    f: int, g: int, noise_seed: int | None = None, noise_num: int = 1, noise_den: int = 8
) -> tuple[Graph, Crystal]:
    """A host graph carrying an (f,g)-crystal at the edge 0-1, apexes complete
    to both anchors; seeded noise adds side-internal and apex-apex edges that
    never violate the defining clauses but usually destroy clearness."""
    if f < 1 or g < 1:
        raise InvalidInput("need f >= 1 and g >= 1")
    z1, z2 = 0, 1
    edges = [(z1, z2)]
    apexes = list(range(2, 2 + f))
    nxt = 2 + f
    sides = {}
    noise_pool = list(apexes)
    for z in apexes:
        edges += [(z, z1), (z, z2)]
        s1 = list(range(nxt, nxt + g))
        nxt += g
        s2 = list(range(nxt, nxt + g))
        nxt += g
        for x in s1:
            edges += [(x, z1), (x, z)]
        for x in s2:
            edges += [(x, z2), (x, z)]
        sides[z] = (frozenset(s1), frozenset(s2))
        noise_pool += s1 + s2
    if noise_seed is not None:
        rng = SplitMix(noise_seed)
        apex_of = {}
        for z in apexes:
            for x in sides[z][0] | sides[z][1]:
                apex_of[x] = z
        existing = set(edges)
        for i in range(len(noise_pool)):
            for j in range(i + 1, len(noise_pool)):
                u, v = noise_pool[i], noise_pool[j]
                # an edge from a side vertex to a foreign apex would change
                # that vertex's trace on the foreign triple, which stays legal,
                # so every pool pair is allowed
                if (u, v) in existing:
                    continue
                if rng.chance(noise_num, noise_den):
                    edges.append((u, v))
    host = Graph.from_edges(nxt, edges)
    return host, Crystal(z1, z2, tuple(apexes), sides)
