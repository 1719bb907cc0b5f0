"""Exact solvers: HIST existence, SGHG existence, Hamiltonian path oracle.

The tree search branches on edges in lexicographic order (include before
exclude), so the first solution found is also the lexicographically least
one; canonical-first mode therefore coincides with first-found under the
single-threaded scheduler.  Degree state per vertex drives the pruning:
a vertex frozen at tree-degree 2 kills the branch immediately, and in
SGHG mode the evolving committed-leaf set must stay cyclically feasible
(two potential-leaf neighbors each, one component) at every node.

Budgets make "unknown" a first-class outcome distinct from a proved "none".
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterator

from .certify import HalinCertificate, TreeCertificate
from .errors import BudgetExhausted, PreconditionError
from .graph import Graph, VertexSetPair

MODE_FIRST = "first"
MODE_CANONICAL = "canonical"
MODE_EXHAUSTIVE = "exhaustive"

_MODE_ALIASES = {
    "first": MODE_FIRST,
    "canonical": MODE_CANONICAL,
    "canonical-first": MODE_CANONICAL,
    "exhaustive": MODE_EXHAUSTIVE,
    "exhaustive-count": MODE_EXHAUSTIVE,
}


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int | None = None
    time_limit: float | None = None
    mode: str = MODE_FIRST

    def normalized_mode(self) -> str:
        try:
            return _MODE_ALIASES[self.mode]
        except KeyError:
            raise PreconditionError(f"unknown search mode {self.mode!r}") from None


#: No limits, first-found: a complete existence proof when it terminates.
UNBOUNDED = SearchBudget(mode=MODE_CANONICAL)

#: No limits, enumerate and count every solution.
EXHAUSTIVE = SearchBudget(mode=MODE_EXHAUSTIVE)


@dataclass
class SearchResult:
    """status is 'found', 'none' (proved), or 'unknown' (budget ran out)."""

    status: str
    certificate: TreeCertificate | HalinCertificate | None = None
    nodes: int = 0
    solution_count: int | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Stop(Exception):
    """Internal: first-mode search satisfied."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _TreeSearch:
    """Edge include/exclude DFS enumerating spanning HISTs of g.

    `on_solution` fires with the current include stack at every spanning
    HIST; it may raise _Stop to abort the traversal.
    """

    def __init__(
        self,
        g: Graph,
        cycle_mode: bool,
        node_limit: int | None,
        time_limit: float | None,
    ):
        self.g = g
        self.n = g.n
        self.edges = g.edges()
        self.m = len(self.edges)
        self.cycle_mode = cycle_mode
        self.node_limit = node_limit
        self.deadline = time.monotonic() + time_limit if time_limit else None
        self.nodes = 0
        n = g.n
        self.deg = [0] * n
        self.und = [0] * n
        for u, v in self.edges:
            self.und[u] += 1
            self.und[v] += 1
        self.parent = list(range(n))
        self.rank = [1] * n
        self.included: list[tuple[int, int]] = []
        self.avail = [g.neighbor_mask(v) for v in range(n)]
        self.full = (1 << n) - 1
        self.needy = 0  # vertices currently at tree-degree exactly 2
        self.potential = self.full  # deg <= 1, may still end as a leaf
        self.committed = 0  # deg == 1 with no undecided edges left

    # -- bookkeeping -------------------------------------------------------

    def tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExhausted(f"node limit {self.node_limit} hit")
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExhausted("time limit hit")

    def _find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            x = p[x]
        return x

    def _connected_avail(self) -> bool:
        avail = self.avail
        visited = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= avail[v]
            nxt &= ~visited
            visited |= nxt
            frontier = nxt
        return visited == self.full

    def _cycle_feasible(self) -> bool:
        pot = self.potential
        if pot.bit_count() < 3:
            return False
        com = self.committed
        if not com:
            return True
        masks = self.g._masks
        for v in _bits(com):
            if (masks[v] & pot).bit_count() < 2:
                return False
        if com & (com - 1):  # two or more committed leaves
            start = com & -com
            visited = start
            frontier = start
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= masks[v]
                nxt &= pot & ~visited
                visited |= nxt
                frontier = nxt
            if com & ~visited:
                return False
        return True

    # -- search ------------------------------------------------------------

    def run(self, on_solution: Callable[[list[tuple[int, int]]], None]) -> None:
        if self.n == 0 or self.m < self.n - 1:
            return
        if not self._connected_avail():
            return
        try:
            self._dfs(0, on_solution)
        except _Stop:
            pass

    def _dfs(self, i: int, on_solution) -> None:
        self.tick()
        included = self.included
        n1 = self.n - 1
        if len(included) == n1:
            if self.needy == 0:
                on_solution(included)
            return
        if i == self.m:
            return
        missing = n1 - len(included)
        if self.m - i < missing or self.needy > 2 * missing:
            return
        u, v = self.edges[i]
        deg, und = self.deg, self.und

        # include branch
        ru, rv = self._find(u), self._find(v)
        if ru != rv:
            if self.rank[ru] > self.rank[rv]:
                ru, rv = rv, ru
            self.parent[ru] = rv
            self.rank[rv] += self.rank[ru]
            included.append((u, v))
            old_potential, old_committed = self.potential, self.committed
            feasible = True
            for w in (u, v):
                deg[w] += 1
                und[w] -= 1
                dw = deg[w]
                if dw == 2:
                    self.needy += 1
                    self.potential &= ~(1 << w)
                    if und[w] == 0:
                        feasible = False
                elif dw == 3:
                    self.needy -= 1
                elif dw == 1 and und[w] == 0:
                    self.committed |= 1 << w
            if feasible and self.cycle_mode:
                feasible = self._cycle_feasible()
            if feasible:
                self._dfs(i + 1, on_solution)
            for w in (u, v):
                dw = deg[w]
                if dw == 2:
                    self.needy -= 1
                elif dw == 3:
                    self.needy += 1
                deg[w] -= 1
                und[w] += 1
            self.potential, self.committed = old_potential, old_committed
            included.pop()
            self.parent[ru] = ru
            self.rank[rv] -= self.rank[ru]

        # exclude branch
        self.avail[u] &= ~(1 << v)
        self.avail[v] &= ~(1 << u)
        und[u] -= 1
        und[v] -= 1
        old_committed = self.committed
        feasible = True
        for w in (u, v):
            if und[w] == 0:
                dw = deg[w]
                if dw == 0 or dw == 2:
                    feasible = False
                elif dw == 1:
                    self.committed |= 1 << w
        if feasible:
            feasible = self._connected_avail()
        if feasible and self.cycle_mode:
            feasible = self._cycle_feasible()
        if feasible:
            self._dfs(i + 1, on_solution)
        self.committed = old_committed
        und[u] += 1
        und[v] += 1
        self.avail[u] |= 1 << v
        self.avail[v] |= 1 << u

    def leaf_set(self) -> list[int]:
        return [w for w in range(self.n) if self.deg[w] == 1]


# -- Hamiltonian cycles on a vertex subset -----------------------------------


def _ham_cycles_on(
    g: Graph,
    vertices: list[int],
    tick: Callable[[], None] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Hamiltonian cycles of g[vertices], one per rotation/reflection class.

    Cycles are emitted in lexicographic order of their normalized vertex
    sequence (starting at the smallest vertex, smaller neighbor first).
    """
    verts = sorted(vertices)
    k = len(verts)
    if k < 3:
        return
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * k
    vset = set(verts)
    for v in verts:
        for w in g.neighbors(v):
            if w in vset:
                adj[index[v]] |= 1 << index[w]
    full = (1 << k) - 1
    path = [0]

    def dfs(cur: int, used: int) -> Iterator[tuple[int, ...]]:
        if tick is not None:
            tick()
        if used == full:
            if adj[cur] & 1 and path[1] < path[-1]:
                yield tuple(verts[i] for i in path)
            return
        free = ~used & full
        # Any unreached vertex that cannot be entered and left kills this
        # branch; so does a disconnection of the unreached region.
        usable = free | (1 << cur) | 1
        for w in _bits(free):
            if (adj[w] & usable & ~(1 << w)).bit_count() < 2:
                return
        visited = 1 << cur
        frontier = visited
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= adj[x]
            nxt &= free & ~visited
            visited |= nxt
            frontier = nxt
        if free & ~visited:
            return
        for nxt in _bits(adj[cur] & free):
            path.append(nxt)
            yield from dfs(nxt, used | (1 << nxt))
            path.pop()

    yield from dfs(0, 1)


# -- public solvers -----------------------------------------------------------


def find_hist(g: Graph, budget: SearchBudget = UNBOUNDED) -> SearchResult:
    """Search for a spanning tree with no degree-2 vertex.

    Any mode that terminates without a budget overrun proves its answer;
    exhaustive mode additionally counts all solutions.
    """
    mode = budget.normalized_mode()
    search = _TreeSearch(g, False, budget.node_limit, budget.time_limit)
    state = {"first": None, "count": 0}

    def on_solution(tree_edges: list[tuple[int, int]]) -> None:
        state["count"] += 1
        if state["first"] is None:
            state["first"] = TreeCertificate(g.n, tree_edges)
        if mode != MODE_EXHAUSTIVE:
            raise _Stop

    try:
        search.run(on_solution)
    except BudgetExhausted:
        if state["first"] is None:
            return SearchResult("unknown", None, search.nodes)
        # A found certificate survives a later budget overrun.
        return SearchResult("found", state["first"], search.nodes, state["count"])
    if state["first"] is None:
        return SearchResult("none", None, search.nodes, 0)
    count = state["count"] if mode == MODE_EXHAUSTIVE else None
    return SearchResult("found", state["first"], search.nodes, count)


def find_sghg(g: Graph, budget: SearchBudget = UNBOUNDED) -> SearchResult:
    """Search for a spanning generalized Halin subgraph certificate."""
    mode = budget.normalized_mode()
    search = _TreeSearch(g, True, budget.node_limit, budget.time_limit)
    state = {"first": None, "count": 0}

    def on_solution(tree_edges: list[tuple[int, int]]) -> None:
        leaves = search.leaf_set()
        for cycle in _ham_cycles_on(g, leaves, search.tick):
            state["count"] += 1
            if state["first"] is None:
                state["first"] = HalinCertificate(
                    TreeCertificate(g.n, list(tree_edges)), cycle
                )
            if mode != MODE_EXHAUSTIVE:
                raise _Stop

    try:
        search.run(on_solution)
    except BudgetExhausted:
        if state["first"] is None:
            return SearchResult("unknown", None, search.nodes)
        return SearchResult("found", state["first"], search.nodes, state["count"])
    if state["first"] is None:
        return SearchResult("none", None, search.nodes, 0)
    count = state["count"] if mode == MODE_EXHAUSTIVE else None
    return SearchResult("found", state["first"], search.nodes, count)


def ham_path_oracle(g: Graph, x: int, y: int) -> tuple[int, ...] | None:
    """Exhaustive Hamiltonian (x,y)-path search; None proves nonexistence."""
    if x == y:
        raise PreconditionError("endpoints must differ")
    n = g.n
    if not (0 <= x < n and 0 <= y < n):
        raise PreconditionError("endpoint out of range")
    if n == 2:
        return (x, y) if g.has_edge(x, y) else None
    masks = g._masks
    full = (1 << n) - 1
    path = [x]
    ybit = 1 << y

    def dfs(cur: int, used: int) -> tuple[int, ...] | None:
        if used == full:
            return tuple(path) if cur == y else None
        free = ~used & full
        usable = free | (1 << cur)
        for w in _bits(free):
            need = 1 if w == y else 2
            if (masks[w] & usable & ~(1 << w)).bit_count() < need:
                return None
        visited = 1 << cur
        frontier = visited
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            nxt &= free & ~visited
            visited |= nxt
            frontier = nxt
        if free & ~visited:
            return None
        for nxt in _bits(masks[cur] & free):
            if nxt == y and (used | ybit) != full:
                continue
            path.append(nxt)
            hit = dfs(nxt, used | (1 << nxt))
            if hit is not None:
                return hit
            path.pop()
        return None

    return dfs(x, 1 << x)


def balanced_leaf_hist_exists(
    g: Graph, partition: VertexSetPair, budget: SearchBudget = UNBOUNDED
) -> bool:
    """True iff some HIST has equally many leaves on both partition sides.

    Exhaustive over all HISTs of g; the partition must be a genuine
    bipartition (spanning, no internal edges).
    """
    left, right = partition.left, partition.right
    if left | right != set(range(g.n)) or left & right:
        raise PreconditionError("partition must cover the vertex set")
    for u, v in g.edges():
        if (u in left) == (v in left):
            raise PreconditionError(f"edge {u}-{v} inside one partition side")
    search = _TreeSearch(g, False, budget.node_limit, budget.time_limit)
    state = {"hit": False}

    def on_solution(_tree_edges) -> None:
        leaves = search.leaf_set()
        in_left = sum(1 for v in leaves if v in left)
        if 2 * in_left == len(leaves):
            state["hit"] = True
            raise _Stop

    search.run(on_solution)
    return state["hit"]
