"""Deterministic builders behind the constructive existence arguments.

Each builder replaces an asymptotic parameter cascade with an explicit
integer plan whose feasibility is a checkable precondition, then follows
the underlying proof verbatim: greedy block decompositions fill minimum
sizes first and hand the remainder out one vertex at a time left to
right, and every anchor choice takes the lexicographically smallest valid
candidate.  A guaranteed step that fails while its verified preconditions
hold raises FalsificationError and is never silently retried.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .certify import StarPack, TreeCertificate
from .errors import FalsificationError, PreconditionError
from .graph import Graph

Edge = tuple[int, int]


# -- dense-host HIST ----------------------------------------------------------


@dataclass(frozen=True)
class DenseHistParams:
    """Slack fraction and prescribed high-degree root.

    The guaranteed regime needs alpha_prime < 1/24 and
    n * (1/3 - 8 * alpha_prime) > 6; outside it the builder still runs,
    but an absorption failure is reported as an infeasible instance
    instead of a falsification.
    """

    alpha_prime: float
    root: int

    def min_degree_floor(self, n: int) -> int:
        return math.ceil((2 / 3 - self.alpha_prime) * n)

    def guarantee_holds(self, n: int) -> bool:
        return n > 0 and 8 * self.alpha_prime + 6 / n < 1 / 3


def absorb_pair(
    h: Graph, v1: set[int] | frozenset[int], alpha_prime: float
) -> tuple[int, int, int]:
    """Two outside vertices with a common neighbor inside v1.

    Preconditions: min degree of h at least (2/3 - a')n, |v1| at least
    (2/3 - a')n - 1 with |v1| = n (mod 2), and the outside even and
    nonempty.  Returns the lexicographically first valid (u, w, anchor).
    """
    n = h.n
    v1 = frozenset(v1)
    if not 0 < alpha_prime < 0.5:
        raise PreconditionError("alpha_prime must be in (0, 0.5)")
    if h.min_degree() < math.ceil((2 / 3 - alpha_prime) * n):
        raise PreconditionError("host min degree below the required floor")
    if len(v1) < (2 / 3 - alpha_prime) * n - 1:
        raise PreconditionError("inside set too small")
    if len(v1) % 2 != n % 2:
        raise PreconditionError("inside set has the wrong parity")
    v0 = sorted(set(range(n)) - v1)
    if not v0 or len(v0) % 2 != 0:
        raise PreconditionError("outside set must be nonempty and even")
    for i, u in enumerate(v0):
        for w in v0[i + 1 :]:
            common = h.neighbors(u) & h.neighbors(w) & v1
            if common:
                return (u, w, min(common))
    if 8 * alpha_prime + 6 / n < 1 / 3:
        raise FalsificationError(
            "no absorbable pair despite the guaranteed regime",
            {"n": n, "alpha_prime": alpha_prime, "v1": sorted(v1)},
        )
    raise PreconditionError(
        "no absorbable pair; instance is outside the guaranteed regime"
    )


def dense_hist(h: Graph, params: DenseHistParams) -> TreeCertificate:
    """HIST of a dense host: a parity-adjusted star at the root, then
    repeated absorption of outside pairs through common neighbors.

    Postconditions (asserted): root tree-degree >= (2/3 - a')n - 1 and
    at most (1/6 + a'/2)n + 2 internal vertices.
    """
    n = h.n
    root = params.root
    if not 0 <= root < n:
        raise PreconditionError("root out of range")
    floor = params.min_degree_floor(n)
    if h.min_degree() < floor:
        raise PreconditionError(
            f"host min degree {h.min_degree()} below required {floor}"
        )
    neighbors = sorted(h.neighbors(root))
    if n % 2 != (len(neighbors) + 1) % 2:
        neighbors = neighbors[:-1]  # drop the largest id to fix parity
    if len(neighbors) < 3:
        raise PreconditionError("root degree too small for a star center")
    edges: list[Edge] = [(root, w) for w in neighbors]
    inside = {root, *neighbors}
    while len(inside) < n:
        u, w, anchor = absorb_pair(h, inside, params.alpha_prime)
        edges.append((min(anchor, u), max(anchor, u)))
        edges.append((min(anchor, w), max(anchor, w)))
        inside.add(u)
        inside.add(w)
    tree = TreeCertificate(n, edges)
    deg = tree.degrees()
    if deg[root] < (2 / 3 - params.alpha_prime) * n - 1:
        raise FalsificationError(
            "root degree postcondition failed", {"deg": deg[root], "n": n}
        )
    internal = sum(1 for v in range(n) if deg[v] >= 2)
    if internal > (1 / 6 + params.alpha_prime / 2) * n + 2:
        raise FalsificationError(
            "internal-count postcondition failed", {"internal": internal, "n": n}
        )
    return tree


# -- complete bipartite HIST with prescribed leaf imbalance -------------------


@dataclass(frozen=True)
class BipartiteHistPlan:
    """Hubs, block-size cap and target leaf imbalance (left minus right)."""

    hub_count: int  # spine hubs on the A side
    block_bound: int  # max vertices any block may hold
    imbalance: int  # |L cap A| - |L cap B|, nonnegative


def bipartite_plan_error(a: int, b: int, plan: BipartiteHistPlan) -> str | None:
    """None if the plan is feasible for K_{a,b}, else the reason."""
    d, dd, ell = plan.hub_count, plan.block_bound, plan.imbalance
    if a != b:
        return "sides must be balanced"
    if d < 1 or dd < 3 or ell < 0:
        return "need hub_count >= 1, block_bound >= 3, imbalance >= 0"
    if not 2 * d + 1 <= b:
        return "right side too small for the hub chain"
    if b > (dd - 1) * d + 1:
        return "right side exceeds chained block capacity"
    cover = a - d
    if cover < 2 * (ell + d):
        return "left side too small to feed every cover hub"
    if cover > (d - 1) * (dd - 1) + (ell + 1) * dd:
        return "left side exceeds cover block capacity"
    return None


def _fill_blocks(total: int, minima: list[int], caps: list[int]) -> list[int]:
    """Minimum sizes first, remainder one vertex at a time left to right."""
    sizes = list(minima)
    rem = total - sum(sizes)
    if rem < 0:
        raise PreconditionError("blocks over-constrained")
    i = 0
    guard = 0
    while rem > 0:
        if sizes[i] < caps[i]:
            sizes[i] += 1
            rem -= 1
            guard = 0
        else:
            guard += 1
            if guard > len(sizes):
                raise PreconditionError("block capacity exhausted")
        i = (i + 1) % len(sizes)
    return sizes


def bipartite_hist(a_size: int, b_size: int, plan: BipartiteHistPlan) -> TreeCertificate:
    """HIST of K_{a,b} whose leaf imbalance (A minus B) is exactly the
    planned value, with max degree at most block_bound + 1.

    Vertices 0..a-1 form side A, a..a+b-1 side B.  The A hubs carry
    chained blocks of B; the B-side hubs (chain vertices plus
    imbalance+1 fresh ones) cover the non-hub part of A.
    """
    reason = bipartite_plan_error(a_size, b_size, plan)
    if reason is not None:
        raise PreconditionError(f"infeasible plan: {reason}")
    d, dd, ell = plan.hub_count, plan.block_bound, plan.imbalance
    a_hubs = list(range(d))
    b_all = list(range(a_size, a_size + b_size))
    chain = b_all[: d - 1]
    b_free = b_all[d - 1 :]

    # Chained B blocks: block i holds chain[i-1], chain[i] and fresh ids.
    sizes = _fill_blocks(b_size + d - 1, [3] * d, [dd] * d)
    edges: list[Edge] = []
    free_it = iter(b_free)
    for i in range(d):
        members: list[int] = []
        if i > 0:
            members.append(chain[i - 1])
        if i < d - 1:
            members.append(chain[i])
        while len(members) < sizes[i]:
            members.append(next(free_it))
        edges.extend((a_hubs[i], m) for m in members)

    # Cover hubs on the B side: chain vertices first, then the smallest
    # fresh ids; chain hubs already carry two spine edges, so their cover
    # blocks stay one below the bound.
    cover_hubs = chain + b_free[: ell + 1]
    cover = list(range(d, a_size))
    caps = [dd - 1] * (d - 1) + [dd] * (ell + 1)
    cover_sizes = _fill_blocks(len(cover), [2] * len(cover_hubs), caps)
    pos = 0
    for hub, size in zip(cover_hubs, cover_sizes):
        for v in cover[pos : pos + size]:
            edges.append((v, hub))
        pos += size
    return TreeCertificate(a_size + b_size, edges)


# -- half-complete tripartite HIST -------------------------------------------


@dataclass(frozen=True)
class TripartiteHistPlan:
    hub_count: int  # spine hubs on the B side
    a_block_bound: int  # cap for chained A blocks
    f_block_bound: int  # cap for F blocks (no lower bound)


def tripartite_host(a_size: int, b_size: int, f_size: int) -> Graph:
    """Complete between A and B and between B and F; empty between A and F."""
    n = a_size + b_size + f_size
    edges = [(i, a_size + j) for i in range(a_size) for j in range(b_size)]
    edges.extend(
        (a_size + j, a_size + b_size + k)
        for j in range(b_size)
        for k in range(f_size)
    )
    return Graph(n, edges)


def tripartite_plan_error(
    a: int, b: int, f: int, l: int, plan: TripartiteHistPlan
) -> str | None:
    d, da, df = plan.hub_count, plan.a_block_bound, plan.f_block_bound
    if d < 1 or da < 3 or df < 1:
        return "need hub_count >= 1, a_block_bound >= 3, f_block_bound >= 1"
    if a < 2 * d + 1:
        return "A too small for the chained blocks"
    if a > (da - 1) * d + 1:
        return "A exceeds chained block capacity"
    if f < 1 or f > df * d:
        return "F outside block capacity"
    if l < 0:
        return "l must be nonnegative"
    lp = a + f - b - l
    if lp < 1:
        return "imbalance absorbs the whole surplus (need l' >= 1)"
    if lp > f + (a - d):
        return "not enough hub candidates in A and F"
    if b < 2 * d + 2 * lp + 1:
        return "B cannot reserve hubs, pairs and leftovers"
    f_leaves = f - min(lp, f)
    if f_leaves > b - d:
        return "too few B leaves to pair with the F leaves"
    return None


def tripartite_hist(
    a_size: int,
    b_size: int,
    f_size: int,
    l: int,
    plan: TripartiteHistPlan,
) -> tuple[TreeCertificate, tuple[int, ...]]:
    """HIST of the half-complete tripartite host plus its companion path.

    The tree satisfies |L cap B| = |L cap (A u F)| - l exactly.  When F
    keeps any leaves, the returned path alternates those F leaves with
    equally many B leaves, starting in B and ending in F; otherwise the
    path is empty.
    """
    reason = tripartite_plan_error(a_size, b_size, f_size, l, plan)
    if reason is not None:
        raise PreconditionError(f"infeasible plan: {reason}")
    d, da, df = plan.hub_count, plan.a_block_bound, plan.f_block_bound
    lp = a_size + f_size - b_size - l

    a_ids = list(range(a_size))
    b_ids = list(range(a_size, a_size + b_size))
    f_ids = list(range(a_size + b_size, a_size + b_size + f_size))

    b_hubs = b_ids[:d]
    edges: list[Edge] = []

    # F blocks: plain partition, one block per B hub (may be empty).
    base, rem = divmod(f_size, d)
    f_sizes = [base + (1 if i < rem else 0) for i in range(d)]
    pos = 0
    for hub, size in zip(b_hubs, f_sizes):
        edges.extend((hub, v) for v in f_ids[pos : pos + size])
        pos += size

    # Chained A blocks: block i holds chain[i-1], chain[i] and fresh ids.
    chain = a_ids[: d - 1]
    a_free = a_ids[d - 1 :]
    sizes = _fill_blocks(a_size + d - 1, [3] * d, [da] * d)
    free_it = iter(a_free)
    for i in range(d):
        members: list[int] = []
        if i > 0:
            members.append(chain[i - 1])
        if i < d - 1:
            members.append(chain[i])
        while len(members) < sizes[i]:
            members.append(next(free_it))
        edges.extend((b_hubs[i], m) for m in members)
    a_extra = a_free[0]  # smallest non-chain A vertex anchors the last block

    # Secondary hubs absorbing the surplus: F first, then non-chain A.
    from_f = min(lp, f_size)
    sec_hubs = f_ids[:from_f] + [v for v in a_ids[d:]][: lp - from_f]
    pair_pool = b_ids[d:]
    for j, hub in enumerate(sec_hubs):
        edges.append((hub, pair_pool[2 * j]))
        edges.append((hub, pair_pool[2 * j + 1]))

    # Leftover B hangs from the A spine; the extra A vertex takes the
    # last block, which must hold at least two vertices.
    leftover = pair_pool[2 * lp :]
    anchors = chain + [a_extra]
    minima = [1] * (d - 1) + [2]
    caps = [len(leftover)] * d
    left_sizes = _fill_blocks(len(leftover), minima, caps)
    pos = 0
    for anchor, size in zip(anchors, left_sizes):
        edges.extend((anchor, v) for v in leftover[pos : pos + size])
        pos += size

    tree = TreeCertificate(a_size + b_size + f_size, edges)

    deg = tree.degrees()
    f_leaves = [v for v in f_ids if deg[v] == 1]
    path: tuple[int, ...] = ()
    if f_leaves:
        b_leaves = [v for v in b_ids if deg[v] == 1][: len(f_leaves)]
        if len(b_leaves) < len(f_leaves):
            raise FalsificationError(
                "companion path ran out of B leaves",
                {"f_leaves": len(f_leaves), "b_leaves": len(b_leaves)},
            )
        woven: list[int] = []
        for bv, fv in zip(b_leaves, f_leaves):
            woven.extend((bv, fv))
        path = tuple(woven)
    return tree, path


# -- matching lower bound -----------------------------------------------------


def matching_lower_bound(g: Graph) -> StarPack:
    """Greedy matching of size at least e(g) / (2 * max degree).

    Follows the inductive argument: take the smallest remaining edge,
    delete both endpoints, recurse.  Each round discards at most
    2 * max_degree edges, which gives the bound.
    """
    if g.edge_count < 1:
        raise PreconditionError("graph has no edges")
    max_deg = g.max_degree()
    alive = [set(g.neighbors(v)) for v in range(g.n)]
    chosen: list[Edge] = []
    # The smallest remaining edge always has a nondecreasing first
    # endpoint, so one ascending sweep realizes the lex-least greedy.
    for u in range(g.n):
        if not alive[u]:
            continue
        v = min(alive[u])
        chosen.append((u, v))
        for w in (u, v):
            for x in list(alive[w]):
                alive[x].discard(w)
            alive[w].clear()
    pack = StarPack([(u, (v,)) for u, v in chosen], arity=1)
    if 2 * max_deg * len(chosen) < g.edge_count:
        raise FalsificationError(
            "matching below the e/(2*maxdeg) bound",
            {"size": len(chosen), "edges": g.edge_count, "max_deg": max_deg},
        )
    return pack


# -- exact star packing via augmenting flow -----------------------------------


def star_pack(
    g: Graph,
    centers: set[int] | frozenset[int],
    tips_from: set[int] | frozenset[int],
    arity: int,
) -> StarPack | None:
    """Vertex-disjoint stars, one per center with `arity` tips drawn from
    `tips_from`; None iff no such family exists.

    Decided exactly by augmenting paths on the degree-constrained
    bipartite network, so the usual sufficient degree condition
    (every center sees at least arity * |centers| tips) becomes a
    provable consequence rather than an assumption.
    """
    centers = sorted(centers)
    tip_pool = frozenset(tips_from)
    if set(centers) & tip_pool:
        raise PreconditionError("centers and tip pool must be disjoint")
    if arity < 1:
        raise PreconditionError("arity must be positive")
    tip_of: dict[int, int] = {}  # tip -> center currently using it
    tips: dict[int, set[int]] = {c: set() for c in centers}

    def augment(c: int, banned: set[int]) -> bool:
        for t in sorted(g.neighbors(c) & tip_pool):
            if t in banned:
                continue
            banned.add(t)
            owner = tip_of.get(t)
            if owner is None:
                tip_of[t] = c
                tips[c].add(t)
                return True
            # Try to reroute one of the owner's tips elsewhere.
            if augment(owner, banned):
                tips[owner].discard(t)
                tip_of[t] = c
                tips[c].add(t)
                return True
        return False

    for c in centers:
        for _ in range(arity):
            if not augment(c, set()):
                return None
    return StarPack([(c, tuple(sorted(tips[c]))) for c in centers], arity)
