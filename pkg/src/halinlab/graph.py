"""Immutable simple undirected graphs over dense vertex ids 0..n-1.

Every other module consumes this representation.  Graphs are hashable,
comparable and safe to share between threads; all queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import PreconditionError

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple graph: no loops, no parallel edges, symmetric adjacency."""

    __slots__ = ("n", "_edges", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise PreconditionError("vertex count must be nonnegative")
        seen: set[Edge] = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            e = _norm_edge(u, v)
            if e in seen:
                raise PreconditionError(f"duplicate edge {e}")
            seen.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._edges = frozenset(seen)
        self._adj = tuple(frozenset(s) for s in adj)
        # Neighbor bitmasks speed up the solvers and connectivity checks.
        self._masks = tuple(
            sum(1 << w for w in s) for s in self._adj
        )

    # -- basic queries ----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> list[Edge]:
        return sorted(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self._edges if u != v else False

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    # -- derived graphs ---------------------------------------------------

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        """New graph with additional edges (duplicates ignored)."""
        combined = set(self._edges)
        for u, v in extra:
            combined.add(_norm_edge(u, v))
        return Graph(self.n, combined)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph induced on `vertices`; returns (graph, old-id list).

        Vertex i of the result corresponds to old id `mapping[i]`
        (mapping is sorted ascending).
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u, v in self._edges
            if u in index and v in index
        ]
        return Graph(len(keep), edges), keep

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self._component_of(0)) == self.n

    def _component_of(self, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def connected_components(self) -> list[list[int]]:
        out: list[list[int]] = []
        left = set(range(self.n))
        while left:
            comp = self._component_of(min(left))
            out.append(sorted(comp))
            left -= comp
        return out

    # -- constructors -----------------------------------------------------

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph(n, combinations(range(n), 2))

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, ())

    @staticmethod
    def complete_bipartite(a: int, b: int) -> "Graph":
        return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph(n, ((i, i + 1) for i in range(n - 1)))

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise PreconditionError("cycle needs at least 3 vertices")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def star(leaves: int) -> "Graph":
        return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


@dataclass(frozen=True)
class VertexSetPair:
    """Two disjoint vertex subsets of a common host graph."""

    left: frozenset[int]
    right: frozenset[int]

    def __init__(self, left: Iterable[int], right: Iterable[int]):
        object.__setattr__(self, "left", frozenset(left))
        object.__setattr__(self, "right", frozenset(right))
        if self.left & self.right:
            raise PreconditionError("vertex sets must be disjoint")

    def validate_for(self, g: Graph) -> None:
        for v in self.left | self.right:
            if not 0 <= v < g.n:
                raise PreconditionError(f"vertex {v} out of range for n={g.n}")


def degree_between(g: Graph, p: VertexSetPair) -> tuple[int, int, int]:
    """(min, max) over `p.left` of degree into `p.right`, plus the
    number of edges between the two sets."""
    p.validate_for(g)
    right = p.right
    degs = [len(g.neighbors(u) & right) for u in sorted(p.left)]
    edge_count = sum(degs)
    if not degs:
        return (0, 0, 0)
    return (min(degs), max(degs), edge_count)


def bipartition(g: Graph) -> VertexSetPair | None:
    """2-coloring as a VertexSetPair, or None if an odd cycle exists.

    Within each connected component the lowest-indexed vertex lands on
    the left side, making the output deterministic.
    """
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    left = [v for v in range(g.n) if color[v] == 0]
    right = [v for v in range(g.n) if color[v] == 1]
    return VertexSetPair(left, right)


# -- vertex connectivity ---------------------------------------------------
#
# Decided by max-flow over the vertex-split network (each inner vertex
# becomes an arc of capacity 1).  Flow search stops as soon as k paths
# exist, so `vertex_connectivity_at_least` is cheap for small k.


def _local_connectivity_at_least(g: Graph, s: int, t: int, k: int) -> bool:
    """True iff there are >= k internally vertex-disjoint s-t paths.

    Requires s != t and s,t nonadjacent (callers guarantee this).
    """
    n = g.n
    # Node ids: v_in = 2v, v_out = 2v+1.  Residual capacities in a dict.
    INF = 1 << 30
    cap: dict[tuple[int, int], int] = {}

    def add(u: int, v: int, c: int) -> None:
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)

    for v in range(n):
        add(2 * v, 2 * v + 1, 1 if v not in (s, t) else INF)
    for u, v in g.edges():
        add(2 * u + 1, 2 * v, INF)
        add(2 * v + 1, 2 * u, INF)

    adj: dict[int, list[int]] = {}
    for (u, v) in cap:
        adj.setdefault(u, []).append(v)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < k:
        # BFS augmenting path on the residual network.
        parent = {source: source}
        queue = [source]
        while queue and sink not in parent:
            nxt = []
            for u in queue:
                for v in adj.get(u, ()):
                    if v not in parent and cap[(u, v)] > 0:
                        parent[v] = u
                        nxt.append(v)
            queue = nxt
        if sink not in parent:
            return False
        v = sink
        while v != source:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1
    return True


def vertex_connectivity_at_least(g: Graph, k: int) -> bool:
    """True iff the vertex connectivity of g is at least k.

    Conventions: an empty or 1-vertex graph is 0-connected and K_n is
    (n-1)-connected, so the answer is monotone nonincreasing in k.
    """
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    if k == 0:
        return True
    if g.n <= k:
        return False
    if not g.is_connected():
        return False
    nonedges = [
        (u, v)
        for u, v in combinations(range(g.n), 2)
        if not g.has_edge(u, v)
    ]
    if not nonedges:
        return True  # complete graph, connectivity n-1 >= k since n > k
    # A minimum cut misses some vertex v of minimum degree, in which case
    # it separates v from a non-neighbor, or it contains v, in which case
    # it separates two non-adjacent neighbors of v.
    if g.min_degree() < k:
        return False
    v = min(range(g.n), key=g.degree)
    for u in sorted(set(range(g.n)) - g.neighbors(v) - {v}):
        if not _local_connectivity_at_least(g, v, u, k):
            return False
    for x, y in combinations(sorted(g.neighbors(v)), 2):
        if not g.has_edge(x, y):
            if not _local_connectivity_at_least(g, x, y, k):
                return False
    return True


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity (0 for empty/disconnected, n-1 for K_n)."""
    if g.n == 0:
        return 0
    k = 0
    while vertex_connectivity_at_least(g, k + 1):
        k += 1
    return k


def iter_all_graphs(n: int) -> Iterator[Graph]:
    """All labeled simple graphs on n vertices (2^(n(n-1)/2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))
