"""Exhaustive recognizers for the forbidden and required induced structures.

Every searcher is exact: it returns a witness that re-validates against the
structure's definition, or certifies absence by exhausting its search space.
Inputs beyond the vertex guard (or searches beyond the node budget) raise
ScaleLimit rather than answering wrongly.

Determinism: all searches iterate vertices in increasing index order and, for
the cycle/path searchers, in increasing target length, so witnesses are
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InvalidInput, ScaleLimit
from .graph_core import (
    Digraph,
    Graph,
    bits,
    check_vertex_set,
    induced_subgraph,
    is_anticomplete_to,
    is_clique,
    is_stable_set,
    mask_of,
    path_from_vertices,
)

DEFAULT_GUARD = 64
DEFAULT_BUDGET = 5_000_000

# subset scans are used up to this size, path-growing searches beyond it
_SUBSET_CUTOFF = 18


def _check_scale(g: Graph, guard: int, what: str) -> None:
    if g.n > guard:
        raise ScaleLimit(f"{what}: {g.n} vertices exceeds the guard of {guard}")


class _Budget:
    __slots__ = ("left", "what")

    def __init__(self, nodes: int, what: str):
        self.left = nodes
        self.what = what

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise ScaleLimit(f"{self.what}: search budget exhausted")


@dataclass(frozen=True)
class Witness:
    """A found structure; roles label each vertex, detail keeps ordered data
    (cycle order, path sequences) so the witness re-validates independently."""

    kind: str
    vertices: tuple[int, ...]
    roles: dict[int, str] = field(default_factory=dict)
    detail: tuple = ()

    def detail_map(self) -> dict:
        return dict(self.detail)


# -- chordality and holes -----------------------------------------------------


def maximum_cardinality_order(g: Graph) -> list[int]:
    """Elimination order from maximum-cardinality search (reversed visit order)."""
    n = g.n
    weight = [0] * n
    seen = 0
    visit = []
    for _ in range(n):
        best = -1
        for v in range(n):
            if not (seen >> v) & 1 and (best == -1 or weight[v] > weight[best]):
                best = v
        visit.append(best)
        seen |= 1 << best
        for u in bits(g.adj[best] & ~seen):
            weight[u] += 1
    visit.reverse()
    return visit


def _is_perfect_elimination(g: Graph, order: list[int]) -> bool:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    eliminated = 0
    for v in order:
        eliminated |= 1 << v
        nbrs = g.adj[v] & ~eliminated
        if not nbrs:
            continue
        u = min(bits(nbrs), key=lambda w: pos[w])
        rest = nbrs & ~(1 << u)
        if rest & ~g.adj[u]:
            return False
    return True


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality via maximum-cardinality elimination; the order certifies it."""
    order = maximum_cardinality_order(g)
    if _is_perfect_elimination(g, order):
        return True, order
    return False, None


def find_hole(g: Graph) -> Witness | None:
    """Some induced cycle on >= 4 vertices, or None on chordal graphs.

    For each two-edge path a-b-c with a,c non-adjacent, a hole through b
    exists iff a and c stay connected once the rest of N[b] is removed; the
    shortest such connection closes an induced cycle.
    """
    chordal, _ = is_chordal(g)
    if chordal:
        return None
    for b in range(g.n):
        nb = g.neighbors(b)
        for ai in range(len(nb)):
            for ci in range(ai + 1, len(nb)):
                a, c = nb[ai], nb[ci]
                if g.has_edge(a, c):
                    continue
                allowed = g.full_mask() & ~((g.adj[b] | (1 << b)) & ~mask_of((a, c)))
                seq = _shortest_path(g, a, c, allowed)
                if seq is not None:
                    cycle = (b, *seq)
                    return Witness(
                        "hole",
                        tuple(sorted(cycle)),
                        {v: "hole" for v in cycle},
                        (("cycle", cycle),),
                    )
    raise AssertionError("non-chordal graph must contain a hole")


def _shortest_path(g: Graph, src: int, dst: int, allowed: int) -> tuple[int, ...] | None:
    """Shortest src-dst path inside allowed (both endpoints must be allowed)."""
    if not ((allowed >> src) & 1 and (allowed >> dst) & 1):
        return None
    prev = {src: -1}
    frontier = [src]
    seen = 1 << src
    while frontier:
        nxt = []
        for v in frontier:
            for u in bits(g.adj[v] & allowed & ~seen):
                seen |= 1 << u
                prev[u] = v
                nxt.append(u)
                if u == dst:
                    seq = [u]
                    while prev[seq[-1]] != -1:
                        seq.append(prev[seq[-1]])
                    return tuple(reversed(seq))
        frontier = nxt
    return None


# -- even holes ----------------------------------------------------------------


def _is_cycle_subset(g: Graph, subset: tuple[int, ...], smask: int) -> tuple[int, ...] | None:
    """Cycle order if the subset induces a single cycle, else None."""
    for v in subset:
        if (g.adj[v] & smask).bit_count() != 2:
            return None
    start = subset[0]
    order = [start]
    prev = -1
    cur = start
    for _ in range(len(subset) - 1):
        step = g.adj[cur] & smask
        if prev >= 0:
            step &= ~(1 << prev)
        nxt = (step & -step).bit_length() - 1
        order.append(nxt)
        prev, cur = cur, nxt
    if len(set(order)) != len(subset):
        return None
    return tuple(order)


def _even_hole_by_subsets(g: Graph) -> Witness | None:
    n = g.n
    for size in range(4, n + 1, 2):
        for subset in combinations(range(n), size):
            smask = mask_of(subset)
            order = _is_cycle_subset(g, subset, smask)
            if order is not None:
                return Witness(
                    "even-hole", subset, {v: "hole" for v in subset}, (("cycle", order),)
                )
    return None


def _cycles_of_length(g: Graph, target: int, budget: _Budget) -> Iterator[tuple[int, ...]]:
    """Induced cycles of exactly the target length, canonical root = minimum
    vertex, in deterministic order.  Distance-to-root pruning keeps the walk
    near-geodesic on sparse inputs."""
    n = g.n
    for root in range(n):
        # only vertices above the root may appear, making the root canonical
        dist = g.bfs_dist(root, g.full_mask() & ~((1 << root) - 1))
        rbit = 1 << root
        path = [root]
        pmask = rbit

        def extend(end: int, interior_ban: int) -> Iterator[tuple[int, ...]]:
            nonlocal pmask
            budget.spend()
            k = len(path)
            if k == target:
                if g.adj[end] & rbit:
                    yield tuple(path)
                return
            cand = g.adj[end] & ~interior_ban & ~pmask
            for v in bits(cand):
                if v <= root:
                    continue
                if dist[v] < 0 or dist[v] > target - k:
                    continue
                closes = bool(g.adj[v] & rbit)
                if closes and k not in (1, target - 1):
                    continue
                path.append(v)
                pmask |= 1 << v
                # the root's own neighborhood is not banned: adjacency to the
                # root means closure and is policed by the position check
                yield from extend(v, interior_ban | (0 if k == 1 else g.adj[end]))
                path.pop()
                pmask ^= 1 << v
            return

        yield from extend(root, 0)


def find_even_hole(
    g: Graph, guard: int = DEFAULT_GUARD, budget: int = DEFAULT_BUDGET
) -> Witness | None:
    """Shortest-first search for a hole on an even number of vertices."""
    _check_scale(g, guard, "find_even_hole")
    if g.n <= _SUBSET_CUTOFF:
        return _even_hole_by_subsets(g)
    b = _Budget(budget, "find_even_hole")
    for target in range(4, g.n + 1, 2):
        for order in _cycles_of_length(g, target, b):
            return Witness(
                "even-hole", tuple(sorted(order)), {v: "hole" for v in order}, (("cycle", order),)
            )
    return None


# -- induced path enumeration (shared by theta / prism) -------------------------


def _induced_paths(
    g: Graph,
    src: int,
    dst: int,
    interior_allowed: int,
    max_len: int,
    budget: _Budget,
) -> Iterator[tuple[int, ...]]:
    """Induced src-dst paths of length <= max_len whose interiors stay in the
    allowed mask.  Deterministic ascending-vertex order, distance pruned."""
    if max_len < 1:
        return
    if g.has_edge(src, dst):
        yield (src, dst)
        # the direct edge makes every longer sequence non-induced
        return
    pool = interior_allowed & ~(1 << src) & ~(1 << dst)
    dist = g.bfs_dist(dst, pool | (1 << src) | (1 << dst))
    if dist[src] < 0 or dist[src] > max_len:
        return
    path = [src]
    pmask = 1 << src
    dbit = 1 << dst

    def extend(end: int, interior_ban: int) -> Iterator[tuple[int, ...]]:
        nonlocal pmask
        budget.spend()
        k = len(path)  # vertices so far; the next edge is number k
        cand = g.adj[end] & pool & ~interior_ban & ~pmask
        for v in bits(cand):
            if dist[v] < 0 or k + dist[v] > max_len:
                continue
            touches_dst = bool(g.adj[v] & dbit)
            path.append(v)
            pmask |= 1 << v
            if touches_dst:
                yield (*path, dst)
                # any continuation would leave a chord back to dst
            else:
                yield from extend(v, interior_ban | g.adj[end])
            path.pop()
            pmask ^= 1 << v

    yield from extend(src, 0)


# -- theta ------------------------------------------------------------------------


def find_theta(
    g: Graph, guard: int = DEFAULT_GUARD, budget: int = DEFAULT_BUDGET
) -> Witness | None:
    """Two non-adjacent ends joined by three induced paths of length >= 2 with
    pairwise disjoint, pairwise anticomplete interiors."""
    _check_scale(g, guard, "find_theta")
    b = _Budget(budget, "find_theta")
    ends = [v for v in range(g.n) if g.degree(v) >= 3]
    full = g.full_mask()
    for cap in range(2, g.n + 1):
        for a in ends:
            for z in ends:
                if z <= a or g.has_edge(a, z):
                    continue
                pool0 = full & ~mask_of((a, z))
                for p1 in _induced_paths(g, a, z, pool0, cap, b):
                    if len(p1) < 3:
                        continue
                    int1 = mask_of(p1[1:-1])
                    ban1 = int1
                    for v in bits(int1):
                        ban1 |= g.adj[v]
                    pool1 = pool0 & ~ban1
                    for p2 in _induced_paths(g, a, z, pool1, cap, b):
                        if len(p2) < 3:
                            continue
                        int2 = mask_of(p2[1:-1])
                        ban2 = int2
                        for v in bits(int2):
                            ban2 |= g.adj[v]
                        pool2 = pool1 & ~ban2
                        for p3 in _induced_paths(g, a, z, pool2, cap, b):
                            if len(p3) < 3:
                                continue
                            if max(len(p1), len(p2), len(p3)) - 1 != cap:
                                continue  # found at an earlier cap already
                            verts = set(p1) | set(p2) | set(p3)
                            roles = {v: "interior" for v in verts}
                            roles[a] = "end"
                            roles[z] = "end"
                            return Witness(
                                "theta",
                                tuple(sorted(verts)),
                                roles,
                                (("ends", (a, z)), ("paths", (p1, p2, p3))),
                            )
    return None


# -- prism --------------------------------------------------------------------------


def _triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        for v in bits(g.adj[u] >> (u + 1) << (u + 1)):
            common = g.adj[u] & g.adj[v]
            for w in bits(common >> (v + 1) << (v + 1)):
                out.append((u, v, w))
    return out


def find_prism(
    g: Graph, guard: int = DEFAULT_GUARD, budget: int = DEFAULT_BUDGET
) -> Witness | None:
    """Two disjoint triangles joined by three paths in the line-graph-of-theta
    pattern: paths pairwise anticomplete apart from their own triangle corners."""
    _check_scale(g, guard, "find_prism")
    b = _Budget(budget, "find_prism")
    tris = _triangles(g)
    full = g.full_mask()
    tri_pairs = []
    for i in range(len(tris)):
        t1m = mask_of(tris[i])
        for j in range(i + 1, len(tris)):
            if not t1m & mask_of(tris[j]):
                tri_pairs.append((tris[i], tris[j]))
    for cap in range(1, g.n + 1):
        for t1, t2 in tri_pairs:
            t1m, t2m = mask_of(t1), mask_of(t2)
            for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
                ends = [(t1[i], t2[perm[i]]) for i in range(3)]
                # corners may touch only their matched partner across the triangles
                ok = True
                for i in range(3):
                    for j in range(3):
                        if i != j and g.has_edge(t1[i], t2[perm[j]]):
                            ok = False
                if not ok:
                    continue
                found = _prism_paths(g, ends, t1m | t2m, cap, full, b)
                if found is not None:
                    p1, p2, p3 = found
                    if max(len(p1), len(p2), len(p3)) - 1 != cap:
                        continue
                    verts = set(t1) | set(t2) | set(p1) | set(p2) | set(p3)
                    roles = {v: "interior" for v in verts}
                    for v in t1:
                        roles[v] = "triangle0"
                    for v in t2:
                        roles[v] = "triangle1"
                    return Witness(
                        "prism",
                        tuple(sorted(verts)),
                        roles,
                        (("triangles", (t1, tuple(t2[perm[i]] for i in range(3)))), ("paths", (p1, p2, p3))),
                    )
    return None


def _prism_paths(g, ends, corner_mask, cap, full, budget):
    """Three matched corner-to-corner paths with prism-pattern separation."""
    (a1, b1), (a2, b2), (a3, b3) = ends

    def pool_for(i, banned):
        # interiors must avoid all six corners and every other corner's neighborhood
        others = corner_mask & ~mask_of((ends[i][0], ends[i][1]))
        ban = corner_mask | banned
        for v in bits(others):
            ban |= g.adj[v]
        return full & ~ban

    for p1 in _induced_paths(g, a1, b1, pool_for(0, 0), cap, budget):
        int1 = mask_of(p1[1:-1])
        ban1 = int1
        for v in bits(int1):
            ban1 |= g.adj[v]
        for p2 in _induced_paths(g, a2, b2, pool_for(1, ban1), cap, budget):
            int2 = mask_of(p2[1:-1])
            ban2 = ban1 | int2
            for v in bits(int2):
                ban2 |= g.adj[v]
            for p3 in _induced_paths(g, a3, b3, pool_for(2, ban2), cap, budget):
                return p1, p2, p3
    return None


# -- even wheels -----------------------------------------------------------------


def find_even_wheel(
    g: Graph, guard: int = DEFAULT_GUARD, budget: int = DEFAULT_BUDGET
) -> Witness | None:
    """A hole plus an outside hub with an even number >= 4 of neighbors on it."""
    _check_scale(g, guard, "find_even_wheel")
    hubs = [h for h in range(g.n) if g.degree(h) >= 4]
    if not hubs:
        return None
    if g.n <= _SUBSET_CUTOFF:
        for h in hubs:
            rest = [v for v in range(g.n) if v != h]
            for size in range(4, g.n):
                for subset in combinations(rest, size):
                    smask = mask_of(subset)
                    k = (g.adj[h] & smask).bit_count()
                    if k < 4 or k % 2:
                        continue
                    order = _is_cycle_subset(g, subset, smask)
                    if order is not None:
                        roles = {v: "rim" for v in subset}
                        roles[h] = "hub"
                        return Witness(
                            "even-wheel",
                            tuple(sorted((h, *subset))),
                            roles,
                            (("hub", h), ("cycle", order)),
                        )
        return None
    b = _Budget(budget, "find_even_wheel")
    for h in hubs:
        sub, idx = _delete_vertex(g, h)
        back = {v: u for u, v in idx.items()}
        hub_mask = mask_of(idx[u] for u in bits(g.adj[h]))
        for target in range(4, sub.n + 1):
            for order in _cycles_of_length(sub, target, b):
                k = (mask_of(order) & hub_mask).bit_count()
                if k >= 4 and k % 2 == 0:
                    rim = tuple(back[v] for v in order)
                    roles = {v: "rim" for v in rim}
                    roles[h] = "hub"
                    return Witness(
                        "even-wheel",
                        tuple(sorted((h, *rim))),
                        roles,
                        (("hub", h), ("cycle", rim)),
                    )
    return None


def _delete_vertex(g: Graph, v: int):
    keep = [u for u in range(g.n) if u != v]
    return induced_subgraph(g, keep)


# -- cliques and bicliques ----------------------------------------------------------


def max_clique(g: Graph, stop_at: int | None = None) -> tuple[int, ...]:
    """A maximum clique (or any clique of size stop_at, which ends the search
    early) by branch and bound with greedy coloring bounds."""
    best: list[tuple[int, ...]] = [()]

    def color_bound(pmask: int) -> list[tuple[int, int]]:
        order = []
        color = 0
        work = pmask
        while work:
            color += 1
            q = work
            while q:
                v = (q & -q).bit_length() - 1
                order.append((v, color))
                q &= ~g.adj[v] & ~(1 << v)
                work &= ~(1 << v)
        return order

    def expand(rstack: list[int], pmask: int) -> bool:
        if stop_at is not None and len(best[0]) >= stop_at:
            return True
        if not pmask:
            if len(rstack) > len(best[0]):
                best[0] = tuple(rstack)
            return stop_at is not None and len(best[0]) >= stop_at
        order = color_bound(pmask)
        local = pmask
        for v, color in reversed(order):
            if len(rstack) + color <= len(best[0]):
                return False
            if not (local >> v) & 1:
                continue
            rstack.append(v)
            if expand(rstack, local & g.adj[v]):
                rstack.pop()
                return True
            rstack.pop()
            local &= ~(1 << v)
        return False

    expand([], g.full_mask())
    return tuple(sorted(best[0]))


def find_clique(g: Graph, c: int, guard: int = DEFAULT_GUARD) -> Witness | None:
    """A clique on exactly c vertices, or certified absence."""
    if c < 1:
        raise InvalidInput("clique size must be >= 1")
    _check_scale(g, guard, "find_clique")
    if c > g.n:
        return None
    got = max_clique(g, stop_at=c)
    if len(got) >= c:
        sel = got[:c]
        return Witness("clique", tuple(sel), {v: "clique" for v in sel})
    return None


def find_induced_biclique(g: Graph, s: int, t: int, guard: int = DEFAULT_GUARD) -> Witness | None:
    """An induced complete bipartite subgraph with stable sides of sizes s, t."""
    if s < 1 or t < 1:
        raise InvalidInput("biclique side sizes must be >= 1")
    _check_scale(g, guard, "find_induced_biclique")
    n = g.n
    for side_a in combinations(range(n), s):
        am = mask_of(side_a)
        if not is_stable_set(g, side_a):
            continue
        common = g.full_mask() & ~am
        for a in side_a:
            common &= g.adj[a]
        if common.bit_count() < t:
            continue
        pool = list(bits(common))
        for side_b in combinations(pool, t):
            if not is_stable_set(g, side_b):
                continue
            roles = {v: "side0" for v in side_a}
            roles.update({v: "side1" for v in side_b})
            return Witness(
                "biclique",
                tuple(sorted(side_a + side_b)),
                roles,
                (("sides", (side_a, side_b)),),
            )
    return None


# -- class membership ------------------------------------------------------------------


def membership_E_t(
    g: Graph, t: int | None = None, guard: int = DEFAULT_GUARD, budget: int = DEFAULT_BUDGET
) -> Witness | None:
    """None iff the graph avoids induced K_{2,2}, theta, prism, even wheel and,
    when t is given, K_t; otherwise the first witness in that fixed order."""
    w = find_induced_biclique(g, 2, 2, guard)
    if w is not None:
        return w
    w = find_theta(g, guard, budget)
    if w is not None:
        return w
    w = find_prism(g, guard, budget)
    if w is not None:
        return w
    w = find_even_wheel(g, guard, budget)
    if w is not None:
        return w
    if t is not None:
        w = find_clique(g, t, guard)
        if w is not None:
            return w
    return None


# -- k-trees and k-forests ----------------------------------------------------------------


def is_k_tree(h: Graph, k: int) -> bool:
    """Greedy reverse elimination: repeatedly delete a vertex whose
    neighborhood is a k-clique; accept iff the remainder is K_k."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    if h.n < k:
        return False
    active = h.full_mask()
    count = h.n
    changed = True
    while count > k and changed:
        changed = False
        for v in bits(active):
            nb = h.adj[v] & active
            if nb.bit_count() != k:
                continue
            if all((h.adj[u] & nb) == nb & ~(1 << u) for u in bits(nb)):
                active &= ~(1 << v)
                count -= 1
                changed = True
                break
    if count != k:
        return False
    verts = list(bits(active))
    return is_clique(h, verts)


def is_k_forest(h: Graph, k: int) -> bool:
    """Chordal and K_{k+2}-free."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    chordal, _ = is_chordal(h)
    if not chordal:
        return False
    return len(max_clique(h, stop_at=k + 2)) < k + 2


# -- induced subgraph isomorphism --------------------------------------------------------------


def contains_induced(g: Graph, h: Graph, guard: int = DEFAULT_GUARD) -> dict[int, int] | None:
    """Injective map of h into g preserving adjacency and non-adjacency, or
    certified absence, by backtracking with degree and neighborhood pruning."""
    if h.n > g.n:
        raise InvalidInput("pattern has more vertices than the host")
    _check_scale(g, guard, "contains_induced")
    if h.n == 0:
        return {}
    # order: most-constrained first, then prefer vertices touching the assigned prefix
    first = max(range(h.n), key=lambda v: (h.degree(v), -v))
    order = [first]
    placed = {first}
    while len(order) < h.n:
        cand = max(
            (v for v in range(h.n) if v not in placed),
            key=lambda v: (sum(1 for u in h.neighbors(v) if u in placed), h.degree(v), -v),
        )
        order.append(cand)
        placed.add(cand)
    gdeg = [g.degree(v) for v in range(g.n)]
    assign: dict[int, int] = {}

    def backtrack(i: int, used: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        pool = ~used & g.full_mask()
        for w in h.neighbors(u):
            if w in assign:
                pool &= g.adj[assign[w]]
        for w in range(h.n):
            if w in assign and w not in h.neighbors(u) and w != u:
                pool &= ~g.adj[assign[w]]
        du = h.degree(u)
        for v in bits(pool):
            if gdeg[v] < du:
                continue
            assign[u] = v
            if backtrack(i + 1, used | (1 << v)):
                return True
            del assign[u]
        return False

    if backtrack(0, 0):
        return dict(assign)
    return None


# -- Ramsey-type primitives ------------------------------------------------------------------------


def find_clique_or_stable(
    g: Graph, c: int, s: int, guard: int = DEFAULT_GUARD
) -> tuple[str, Witness | None]:
    """("clique", w) or ("stable", w); ("neither", None) is legal only below
    the c**s guarantee threshold, above it the search must succeed."""
    w = find_clique(g, c, guard)
    if w is not None:
        return "clique", w
    wc = find_clique(g.complement(), s, guard)
    if wc is not None:
        verts = wc.vertices
        return "stable", Witness("stable", verts, {v: "stable" for v in verts})
    if g.n >= c**s:
        raise AssertionError(
            f"no {c}-clique and no stable {s}-set on {g.n} >= {c}**{s} vertices: detector bug"
        )
    return "neither", None


def anticomplete_family(
    g: Graph, sets: list[Iterable[int]], q: int
) -> list[int] | None:
    """Indices of q sets pairwise anticomplete in g, smallest-index-first
    backtracking over the conflict relation; None when no such family exists."""
    masks = [check_vertex_set(g, s) for s in sets]
    taken = 0
    for m in masks:
        if m & taken:
            raise InvalidInput("anticomplete_family requires pairwise disjoint sets")
        taken |= m
    closed = []
    for m in masks:
        reach = m
        for v in bits(m):
            reach |= g.adj[v]
        closed.append(reach)
    k = len(masks)
    compat = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if not (closed[i] & masks[j]):
                compat[i] |= 1 << j
                compat[j] |= 1 << i

    chosen: list[int] = []

    def backtrack(start: int, pool: int) -> bool:
        if len(chosen) == q:
            return True
        for i in bits(pool >> start << start):
            rest = pool & compat[i] & ~((1 << (i + 1)) - 1)
            if len(chosen) + 1 + rest.bit_count() < q:
                continue
            chosen.append(i)
            if backtrack(i + 1, pool & compat[i]):
                return True
            chosen.pop()
        return False

    if backtrack(0, (1 << k) - 1):
        return list(chosen)
    return None


def acyclic_tournament_or_stable(
    d: Digraph, c: int, s: int, guard: int = DEFAULT_GUARD
) -> tuple[str, tuple[int, ...] | None]:
    """("tournament", chain) with every forward arc present along the chain,
    or ("stable", set) with no arcs at all among the set; ("neither", None)
    only below the c**(c**s) guarantee threshold."""
    if d.n > guard:
        raise ScaleLimit(f"acyclic_tournament_or_stable: {d.n} vertices exceeds {guard}")
    chain: list[int] = []

    def grow(pool: int) -> bool:
        if len(chain) == c:
            return True
        for v in bits(pool):
            chain.append(v)
            if grow(pool & d.out[v] & ~(1 << v)):
                return True
            chain.pop()
        return False

    if grow((1 << d.n) - 1):
        return "tournament", tuple(chain)
    underlying = Graph(d.n, tuple(d.out[v] | d.inn[v] for v in range(d.n)))
    w = find_clique(underlying.complement(), s, guard)
    if w is not None:
        return "stable", w.vertices
    if d.n >= c ** (c**s):
        raise AssertionError(
            f"no transitive {c}-chain and no arcless {s}-set on {d.n} vertices: detector bug"
        )
    return "neither", None


# -- witness re-validation ----------------------------------------------------------------------------


def _check_cycle(g: Graph, order: tuple[int, ...], even: bool | None) -> bool:
    k = len(order)
    if k < 4 or len(set(order)) != k:
        return False
    if even is True and k % 2:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(order[i], order[j])
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


def validate_witness(g: Graph, w: Witness) -> bool:
    """Re-check a witness against its definition, independent of any search."""
    d = w.detail_map()
    if w.kind == "hole":
        return _check_cycle(g, d["cycle"], None)
    if w.kind == "even-hole":
        return _check_cycle(g, d["cycle"], True)
    if w.kind == "even-wheel":
        hub, cyc = d["hub"], d["cycle"]
        if hub in cyc or not _check_cycle(g, cyc, None):
            return False
        k = (g.adj[hub] & mask_of(cyc)).bit_count()
        return k >= 4 and k % 2 == 0
    if w.kind == "clique":
        return is_clique(g, w.vertices)
    if w.kind == "stable":
        return is_stable_set(g, w.vertices)
    if w.kind == "biclique":
        a, b = d["sides"]
        return (
            is_stable_set(g, a)
            and is_stable_set(g, b)
            and all(g.has_edge(u, v) for u in a for v in b)
        )
    if w.kind == "theta":
        (a, z) = d["ends"]
        paths = d["paths"]
        if g.has_edge(a, z) or len(paths) != 3:
            return False
        interiors = []
        for seq in paths:
            if seq[0] != a or seq[-1] != z or len(seq) < 3:
                return False
            try:
                path_from_vertices(g, seq)
            except InvalidInput:
                return False
            interiors.append(mask_of(seq[1:-1]))
        for i in range(3):
            for j in range(i + 1, 3):
                if interiors[i] & interiors[j]:
                    return False
                if not is_anticomplete_to(g, interiors[i], interiors[j]):
                    return False
        return True
    if w.kind == "prism":
        t1, t2 = d["triangles"]
        paths = d["paths"]
        verts = set(t1) | set(t2)
        for seq in paths:
            verts |= set(seq)
        expected = set()
        for tri in (t1, t2):
            if not is_clique(g, tri) or len(set(tri)) != 3:
                return False
            expected |= {frozenset(e) for e in combinations(tri, 2)}
        for i, seq in enumerate(paths):
            if seq[0] != t1[i] or seq[-1] != t2[i]:
                return False
            expected |= {frozenset(e) for e in zip(seq, seq[1:])}
        actual = {
            frozenset((u, v)) for u in verts for v in verts if u < v and g.has_edge(u, v)
        }
        return actual == expected
    raise InvalidInput(f"unknown witness kind {w.kind!r}")
