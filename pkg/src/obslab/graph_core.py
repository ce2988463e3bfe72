"""Bitset-backed simple graphs and the set primitives every other module consumes.

Vertices are dense integers 0..n-1.  Adjacency is stored as one Python int
per vertex (bit v of ``adj[u]`` set iff uv is an edge), which makes
neighborhood intersection, stability checks and subset enumeration cheap:
all the detectors downstream are subset-enumeration bound.

Graphs are immutable after construction; every operation here is pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import InvalidInput


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Finite simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, adj: tuple[int, ...]):
        self.n = n
        self.adj = adj
        self._edges: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InvalidInput(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-loop at {u} not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    # -- basic accessors ------------------------------------------------

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            out = []
            for u in range(self.n):
                rest = self.adj[u] >> (u + 1)
                for k in bits(rest):
                    out.append((u, u + 1 + k))
            self._edges = tuple(out)
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    # -- derived graphs -------------------------------------------------

    def complement(self) -> "Graph":
        full = self.full_mask()
        return Graph(self.n, tuple((full & ~a & ~(1 << v)) for v, a in enumerate(self.adj)))

    def relabel(self, perm: list[int]) -> "Graph":
        """New graph where old vertex v becomes perm[v]."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(self.n, tuple(adj))

    # -- traversal ------------------------------------------------------

    def bfs_dist(self, src: int, allowed: int | None = None) -> list[int]:
        """Distances from src inside the allowed mask; -1 where unreachable."""
        if allowed is None:
            allowed = self.full_mask()
        dist = [-1] * self.n
        if not (allowed >> src) & 1:
            return dist
        dist[src] = 0
        frontier = 1 << src
        seen = frontier
        d = 0
        while frontier:
            d += 1
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            nxt &= allowed & ~seen
            for v in bits(nxt):
                dist[v] = d
            seen |= nxt
            frontier = nxt
        return dist

    def component_mask(self, src: int, allowed: int | None = None) -> int:
        if allowed is None:
            allowed = self.full_mask()
        comp = (1 << src) & allowed
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            nxt &= allowed & ~comp
            comp |= nxt
            frontier = nxt
        return comp

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return self.component_mask(0) == self.full_mask()

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def check_vertex_set(g: Graph, xs: Iterable[int]) -> int:
    """Validate xs against g and return it as a bitmask."""
    m = 0
    for v in xs:
        if not (0 <= v < g.n):
            raise InvalidInput(f"vertex {v} out of range for n={g.n}")
        m |= 1 << v
    return m


# -- set predicates -------------------------------------------------------


def is_complete_to(g: Graph, xs: Iterable[int] | int, ys: Iterable[int] | int) -> bool:
    """Every cross pair adjacent (vacuously true when either side is empty)."""
    xm = xs if isinstance(xs, int) else check_vertex_set(g, xs)
    ym = ys if isinstance(ys, int) else check_vertex_set(g, ys)
    return all((g.adj[v] & ym) == ym for v in bits(xm))


def is_anticomplete_to(g: Graph, xs: Iterable[int] | int, ys: Iterable[int] | int) -> bool:
    """No cross pair adjacent (vacuously true when either side is empty)."""
    xm = xs if isinstance(xs, int) else check_vertex_set(g, xs)
    ym = ys if isinstance(ys, int) else check_vertex_set(g, ys)
    return all(not (g.adj[v] & ym) for v in bits(xm))


def set_relation(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> str:
    """One of "complete" / "anticomplete" / "mixed" for two disjoint sets.

    With no cross pairs at all (either side empty) both definitions hold
    vacuously; "complete" is returned.
    """
    xm = check_vertex_set(g, xs)
    ym = check_vertex_set(g, ys)
    if xm & ym:
        raise InvalidInput("set_relation requires disjoint sets")
    total = 0
    present = 0
    for v in bits(xm):
        total += ym.bit_count()
        present += (g.adj[v] & ym).bit_count()
    if present == total:
        return "complete"
    if present == 0:
        return "anticomplete"
    return "mixed"


def is_stable_set(g: Graph, xs: Iterable[int]) -> bool:
    xm = check_vertex_set(g, xs)
    return all(not (g.adj[v] & xm) for v in bits(xm))


def is_clique(g: Graph, xs: Iterable[int]) -> bool:
    xm = check_vertex_set(g, xs)
    return all((g.adj[v] & xm) == xm & ~(1 << v) for v in bits(xm))


# -- constructions --------------------------------------------------------


def induced_subgraph(g: Graph, xs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on xs plus the old-to-new index map."""
    xm = check_vertex_set(g, xs)
    old = list(bits(xm))
    index = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        row = 0
        for u in bits(g.adj[v] & xm):
            row |= 1 << index[u]
        adj.append(row)
    return Graph(len(old), tuple(adj)), index


def line_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Line graph plus the map from new vertices back to old edges."""
    edges = g.edges()
    k = len(edges)
    adj = [0] * k
    for i in range(k):
        a, b = edges[i]
        for j in range(i + 1, k):
            c, d = edges[j]
            if a in (c, d) or b in (c, d):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(k, tuple(adj)), edges


def subdivide(g: Graph, times: Mapping[tuple[int, int], int]) -> Graph:
    """Replace each keyed edge uv by a path with times[(u,v)] new inner vertices.

    Keys must be edges of g (either orientation); unkeyed edges are kept as
    they are, as is a key mapped to 0.  Original vertices keep their indices.
    """
    counts: dict[tuple[int, int], int] = {}
    for (u, v), k in times.items():
        if u > v:
            u, v = v, u
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise InvalidInput(f"({u},{v}) is not an edge of the graph")
        if k < 0:
            raise InvalidInput("subdivision count must be nonnegative")
        counts[(u, v)] = k
    new_edges: list[tuple[int, int]] = []
    nxt = g.n
    for u, v in g.edges():
        k = counts.get((u, v), 0)
        if k == 0:
            new_edges.append((u, v))
            continue
        chain = [u] + list(range(nxt, nxt + k)) + [v]
        nxt += k
        new_edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, new_edges)


def subdivide_all(g: Graph, k: int = 1) -> Graph:
    """Subdivide every edge k times (one-round full subdivision for k=1)."""
    return subdivide(g, {e: k for e in g.edges()})


# -- induced paths --------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """An induced path, stored as its vertex sequence.

    Construct through path_from_vertices so the inducedness invariant holds:
    consecutive vertices adjacent, non-consecutive ones non-adjacent.
    """

    vertices: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def path_from_vertices(g: Graph, seq: Iterable[int]) -> Path:
    vs = tuple(seq)
    if len(vs) != len(set(vs)):
        raise InvalidInput("path repeats a vertex")
    check_vertex_set(g, vs)
    for i, u in enumerate(vs):
        for j in range(i + 1, len(vs)):
            adjacent = g.has_edge(u, vs[j])
            if (j == i + 1) != adjacent:
                raise InvalidInput(f"sequence is not an induced path at ({u},{vs[j]})")
    return Path(vs)


# -- digraphs --------------------------------------------------------------


class Digraph:
    """Directed graph; (u,v) and (v,u) may coexist, self-arcs may not."""

    __slots__ = ("n", "out", "inn")

    def __init__(self, n: int, out: tuple[int, ...], inn: tuple[int, ...]):
        self.n = n
        self.out = out
        self.inn = inn

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-arc at {u} not allowed")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        return cls(n, tuple(out), tuple(inn))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={sum(a.bit_count() for a in self.out)})"


# -- serialization ---------------------------------------------------------


def graph_to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_json_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed graph object: {exc}") from exc
    return Graph.from_edges(n, edges)


def dumps_graph(g: Graph) -> str:
    """Canonical JSON text: {"n": ..., "edges": [[u,v] ...]} with u<v, lex sorted."""
    return json.dumps(graph_to_json_obj(g), separators=(",", ":"))


def loads_graph(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed graph JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InvalidInput("graph JSON must be an object")
    return graph_from_json_obj(obj)


def to_edge_list(g: Graph) -> str:
    """Plain text format: "n m" header then one "u v" line per edge."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise InvalidInput("edge-list text needs an 'n m' header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise InvalidInput(f"malformed edge-list text: {exc}") from exc
    if len(edges) != m:
        raise InvalidInput(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)
