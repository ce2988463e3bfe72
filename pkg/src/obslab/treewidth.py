"""Exact desk-scale treewidth with certifying decompositions, plus cheap
upper and lower bounds for graphs beyond the exact range.

The exact solver runs a subset dynamic program over elimination prefixes:
the best achievable width of a prefix S extends by any next vertex v at cost
|reach(S, v)|, the set of outside vertices v sees directly or through S.
Bound-sandwich shortcuts and pruning by the heuristic upper bound keep the
table small on the sparse inputs this package cares about.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detectors import max_clique
from .errors import InvalidInput, ScaleLimit
from .graph_core import Graph, bits, mask_of

DEFAULT_EXACT_GUARD = 22


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed 0..k-1 plus tree edges between bag indices."""

    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


@dataclass(frozen=True)
class DecompositionViolation:
    axiom: str
    detail: str


def _reach_mask(adj: tuple[int, ...], prefix: int, v: int) -> int:
    """Vertices outside prefix+v adjacent to v directly or through prefix."""
    reach = adj[v]
    frontier = reach & prefix
    seen_inside = frontier
    while frontier:
        grown = 0
        for u in bits(frontier):
            grown |= adj[u]
        reach |= grown
        frontier = grown & prefix & ~seen_inside
        seen_inside |= frontier
    return reach & ~prefix & ~(1 << v)


def elimination_width(g: Graph, order: list[int]) -> int:
    prefix = 0
    width = -1
    for v in order:
        q = _reach_mask(g.adj, prefix, v).bit_count()
        if q > width:
            width = q
        prefix |= 1 << v
    return width


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Standard fill-in decomposition: one bag per vertex, linked to the bag
    of the earliest-eliminated vertex it still sees."""
    n = g.n
    if n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    prefix = 0
    bag_masks = []
    for v in order:
        bag_masks.append(_reach_mask(g.adj, prefix, v) | (1 << v))
        prefix |= 1 << v
    edges = []
    for i, v in enumerate(order):
        rest = bag_masks[i] & ~(1 << v)
        if rest:
            j = min(pos[u] for u in bits(rest))
            edges.append((i, j))
        elif i + 1 < n:
            edges.append((i, i + 1))
    bags = tuple(frozenset(bits(bm)) for bm in bag_masks)
    return TreeDecomposition(bags, tuple(sorted(tuple(sorted(e)) for e in edges)))


def _greedy_order(g: Graph, rule: str) -> list[int]:
    """Elimination order by min-degree or min-fill on the evolving fill graph."""
    n = g.n
    adj = list(g.adj)
    active = g.full_mask()
    order = []
    for _ in range(n):
        best_key = None
        best_v = -1
        for v in bits(active):
            nb = adj[v] & active
            if rule == "degree":
                key = (nb.bit_count(), v)
            else:
                fill = 0
                for u in bits(nb):
                    fill += (nb & ~adj[u] & ~(1 << u)).bit_count()
                key = (fill // 2, nb.bit_count(), v)
            if best_key is None or key < best_key:
                best_key = key
                best_v = v
        v = best_v
        nb = adj[v] & active
        for u in bits(nb):
            adj[u] |= nb & ~(1 << u)
        active &= ~(1 << v)
        order.append(v)
    return order


def degeneracy(g: Graph) -> int:
    """Max over the min-degree removal sequence; a treewidth lower bound."""
    active = g.full_mask()
    out = 0
    for _ in range(g.n):
        v = min(bits(active), key=lambda u: ((g.adj[u] & active).bit_count(), u))
        out = max(out, (g.adj[v] & active).bit_count())
        active &= ~(1 << v)
    return out


def tw_upper(g: Graph) -> tuple[int, TreeDecomposition]:
    """Best of min-fill and min-degree elimination, with its decomposition."""
    if g.n == 0:
        return -1, TreeDecomposition((frozenset(),), ())
    best = None
    for rule in ("fill", "degree"):
        order = _greedy_order(g, rule)
        td = decomposition_from_order(g, order)
        if best is None or td.width < best[0]:
            best = (td.width, td)
    return best


def tw_lower(g: Graph) -> int:
    """max(clique number - 1, degeneracy); always <= true treewidth."""
    if g.n == 0:
        return -1
    deg = degeneracy(g)
    if g.n <= 128:
        return max(deg, len(max_clique(g)) - 1)
    return deg


def treewidth_exact(
    g: Graph, guard: int = DEFAULT_EXACT_GUARD
) -> tuple[int, TreeDecomposition]:
    """Optimal width with a certifying decomposition."""
    n = g.n
    if n > guard:
        raise ScaleLimit(f"treewidth_exact: {n} vertices exceeds the guard of {guard}")
    if n == 0:
        return -1, TreeDecomposition((frozenset(),), ())
    lb = tw_lower(g)
    ub, td = tw_upper(g)
    if lb >= ub:
        return ub, td
    full = g.full_mask()
    adj = g.adj
    cur: dict[int, int] = {0: -1}
    parent: dict[int, int] = {}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for prefix in sorted(cur):
            w = cur[prefix]
            for v in bits(full & ~prefix):
                q = _reach_mask(adj, prefix, v).bit_count()
                nw = w if w > q else q
                if nw >= ub:
                    continue
                grown = prefix | (1 << v)
                old = nxt.get(grown)
                if old is None or nw < old:
                    nxt[grown] = nw
                    parent[grown] = v
        cur = nxt
        if not cur:
            break
    if full in cur:
        rev = []
        s = full
        while s:
            v = parent[s]
            rev.append(v)
            s ^= 1 << v
        order = rev[::-1]
        td2 = decomposition_from_order(g, order)
        assert td2.width == cur[full], "reconstruction disagrees with the table"
        return cur[full], td2
    return ub, td


def verify_decomposition(g: Graph, td: TreeDecomposition) -> DecompositionViolation | None:
    """Literal check of the three axioms; None means valid."""
    k = len(td.bags)
    if k == 0:
        return DecompositionViolation("tree-shape", "no bags")
    for a, b in td.edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return DecompositionViolation("tree-shape", f"bad tree edge ({a},{b})")
    if len(td.edges) != k - 1 or not _tree_connected(k, td.edges):
        return DecompositionViolation("tree-shape", "bag graph is not a tree")
    covered = 0
    for b in td.bags:
        covered |= mask_of(b)
    for v in range(g.n):
        if not (covered >> v) & 1:
            return DecompositionViolation("vertex-coverage", f"vertex {v} is in no bag")
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags):
            return DecompositionViolation("edge-coverage", f"edge ({u},{v}) is in no bag")
    nbrs = [[] for _ in range(k)]
    for a, b in td.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for v in range(g.n):
        holding = [i for i in range(k) if v in td.bags[i]]
        seen = {holding[0]}
        stack = [holding[0]]
        members = set(holding)
        while stack:
            i = stack.pop()
            for j in nbrs[i]:
                if j in members and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != len(holding):
            return DecompositionViolation("connectivity", f"bags holding {v} are disconnected")
    return None


def _tree_connected(k: int, edges) -> bool:
    if k == 1:
        return True
    nbrs = [[] for _ in range(k)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in nbrs[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == k


# -- PACE-style text ---------------------------------------------------------


def to_pace(td: TreeDecomposition, n: int) -> str:
    """PACE-style text, 1-based bag ids and vertex labels."""
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def from_pace(text: str) -> tuple[TreeDecomposition, int]:
    """Parse the PACE-style text back into (decomposition, vertex count)."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise InvalidInput("malformed or repeated solution line")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            bags[int(parts[1]) - 1] = frozenset(int(v) - 1 for v in parts[2:])
        else:
            if len(parts) != 2:
                raise InvalidInput(f"malformed tree edge line: {line!r}")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if header is None:
        raise InvalidInput("missing solution line")
    nbags, _, n = header
    if sorted(bags) != list(range(nbags)):
        raise InvalidInput("bag ids must be 1..k, each exactly once")
    td = TreeDecomposition(
        tuple(bags[i] for i in range(nbags)), tuple(sorted(tuple(sorted(e)) for e in edges))
    )
    return td, n
