"""Verifiers for every certificate the system produces.

All solvers and builders funnel their output through these checks, so the
rest of the code base only has to be fast, not trusted.  Each verifier
returns a Verdict carrying a reason code; `bool(verdict)` projects to the
plain accept/reject answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import PreconditionError
from .graph import Graph, vertex_connectivity_at_least
from .io_formats import CertificateDocument, normalize_cycle

Edge = tuple[int, int]


def _norm_edges(edges: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset((u, v) if u < v else (v, u) for u, v in edges)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    code: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


_OK = Verdict(True)


@dataclass(frozen=True)
class TreeCertificate:
    """An edge set claimed to be a (spanning) tree or forest of a host."""

    host_n: int
    edges: frozenset[Edge]
    is_spanning: bool = True

    def __init__(self, host_n: int, edges: Iterable[Edge], is_spanning: bool = True):
        object.__setattr__(self, "host_n", host_n)
        object.__setattr__(self, "edges", _norm_edges(edges))
        object.__setattr__(self, "is_spanning", is_spanning)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.host_n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def vertices(self) -> set[int]:
        out: set[int] = set()
        for u, v in self.edges:
            out.add(u)
            out.add(v)
        return out

    def leaves(self) -> set[int]:
        deg = self.degrees()
        return {v for v in self.vertices() if deg[v] == 1}

    def internal(self) -> set[int]:
        deg = self.degrees()
        return {v for v in self.vertices() if deg[v] >= 2}

    def to_document(self) -> CertificateDocument:
        return CertificateDocument(
            "hist",
            {
                "host_n": self.host_n,
                "tree_edges": [list(e) for e in sorted(self.edges)],
                "spanning": self.is_spanning,
            },
        )

    @staticmethod
    def from_document(doc: CertificateDocument) -> "TreeCertificate":
        p = doc.payload
        return TreeCertificate(
            p["host_n"], [tuple(e) for e in p["tree_edges"]], p.get("spanning", True)
        )


@dataclass(frozen=True)
class HalinCertificate:
    """A tree certificate plus a cyclic ordering of its leaves."""

    tree: TreeCertificate
    leaf_cycle: tuple[int, ...]

    def __init__(self, tree: TreeCertificate, leaf_cycle: Iterable[int]):
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "leaf_cycle", normalize_cycle(tuple(leaf_cycle)))

    def cycle_edges(self) -> frozenset[Edge]:
        k = len(self.leaf_cycle)
        return _norm_edges(
            (self.leaf_cycle[i], self.leaf_cycle[(i + 1) % k]) for i in range(k)
        )

    def to_document(self) -> CertificateDocument:
        return CertificateDocument(
            "sghg",
            {
                "host_n": self.tree.host_n,
                "tree_edges": [list(e) for e in sorted(self.tree.edges)],
                "leaf_cycle": list(self.leaf_cycle),
            },
        )

    @staticmethod
    def from_document(doc: CertificateDocument) -> "HalinCertificate":
        p = doc.payload
        tree = TreeCertificate(p["host_n"], [tuple(e) for e in p["tree_edges"]])
        return HalinCertificate(tree, p["leaf_cycle"])


@dataclass(frozen=True)
class StarPack:
    """Vertex-disjoint stars K_{1,k} with designated centers.

    arity 1 is a matching, 2 the wedge case, 3 the claw case.
    """

    stars: tuple[tuple[int, frozenset[int]], ...]
    arity: int

    def __init__(self, stars: Iterable[tuple[int, Iterable[int]]], arity: int):
        packed = tuple(
            sorted((c, frozenset(tips)) for c, tips in stars)
        )
        object.__setattr__(self, "stars", packed)
        object.__setattr__(self, "arity", arity)

    def centers(self) -> set[int]:
        return {c for c, _ in self.stars}

    def vertices(self) -> set[int]:
        out: set[int] = set()
        for c, tips in self.stars:
            out.add(c)
            out |= tips
        return out

    def edges(self) -> frozenset[Edge]:
        return _norm_edges(
            (c, t) for c, tips in self.stars for t in tips
        )

    def to_document(self, host_n: int) -> CertificateDocument:
        return CertificateDocument(
            "matching",
            {
                "host_n": host_n,
                "arity": self.arity,
                "stars": [
                    {"center": c, "tips": sorted(tips)} for c, tips in self.stars
                ],
            },
        )


# -- verifiers ---------------------------------------------------------------


def check_tree(g: Graph, t: TreeCertificate) -> Verdict:
    """Acyclicity, host membership and (when claimed) spanning."""
    if t.host_n != g.n:
        return Verdict(False, "host-mismatch", f"{t.host_n} != {g.n}")
    for u, v in t.edges:
        if not (0 <= u < g.n and 0 <= v < g.n):
            return Verdict(False, "vertex-out-of-range", f"{u}-{v}")
        if not g.has_edge(u, v):
            return Verdict(False, "tree-edge-not-in-host", f"{u}-{v}")
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in sorted(t.edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            return Verdict(False, "not-acyclic", f"cycle closed by {u}-{v}")
        parent[ru] = rv
    if t.is_spanning:
        if len(t.edges) != g.n - 1:
            return Verdict(
                False, "not-spanning", f"{len(t.edges)} edges for n={g.n}"
            )
        # n-1 edges and acyclic means a single spanning component.
    return _OK


def is_hist(g: Graph, t: TreeCertificate) -> Verdict:
    """Spanning tree of g with no vertex of degree exactly 2."""
    base = check_tree(g, t)
    if not base:
        return base
    if not t.is_spanning or len(t.edges) != g.n - 1:
        return Verdict(False, "not-spanning", "certificate does not span host")
    for v, d in enumerate(t.degrees()):
        if d == 2:
            return Verdict(False, "degree-two-vertex", f"vertex {v}")
    return _OK


def is_hit_forest(g: Graph, t: TreeCertificate) -> Verdict:
    """Forest inside g whose vertices all avoid degree 2 (need not span)."""
    base = check_tree(g, t)
    if not base:
        return base
    deg = t.degrees()
    for v in t.vertices():
        if deg[v] == 2:
            return Verdict(False, "degree-two-vertex", f"vertex {v}")
    return _OK


def is_generalized_halin(g: Graph, h: HalinCertificate) -> Verdict:
    """Tree is a HIST and the cycle passes through exactly its leaves."""
    cycle = h.leaf_cycle
    if len(cycle) < 3:
        return Verdict(False, "cycle-too-short", f"length {len(cycle)}")
    hist = is_hist(g, h.tree)
    if not hist:
        return Verdict(False, "not-a-hist", f"{hist.code}: {hist.detail}")
    if len(set(cycle)) != len(cycle):
        return Verdict(False, "cycle-repeats-vertex", "")
    leaves = h.tree.leaves()
    cyc_set = set(cycle)
    missing = leaves - cyc_set
    if missing:
        return Verdict(False, "cycle-misses-leaf", f"vertex {min(missing)}")
    extra = cyc_set - leaves
    if extra:
        return Verdict(False, "cycle-uses-nonleaf", f"vertex {min(extra)}")
    k = len(cycle)
    for i in range(k):
        u, v = cycle[i], cycle[(i + 1) % k]
        if not g.has_edge(u, v):
            return Verdict(False, "cycle-edge-absent", f"{u}-{v}")
    return _OK


def wheel_minor(h: HalinCertificate) -> tuple[int, tuple[int, ...]]:
    """Order and rim of the wheel obtained by contracting the tree's
    internal vertices to a single hub.

    Precondition: the certificate already passed is_generalized_halin.
    """
    leaves = h.tree.leaves()
    if set(h.leaf_cycle) != leaves or len(h.leaf_cycle) < 3:
        raise PreconditionError("certificate not verified as generalized Halin")
    return len(leaves) + 1, h.leaf_cycle


def verify_star_pack(
    g: Graph, p: StarPack, required_centers: Iterable[int] | None = None
) -> Verdict:
    """Disjointness, host edges, uniform arity and the declared centers."""
    seen: set[int] = set()
    for c, tips in p.stars:
        if len(tips) != p.arity:
            return Verdict(False, "bad-arity", f"center {c}")
        if c in tips:
            return Verdict(False, "center-in-tips", f"center {c}")
        members = {c} | tips
        if seen & members:
            return Verdict(False, "stars-overlap", f"near center {c}")
        seen |= members
        for t in tips:
            if not (0 <= t < g.n and 0 <= c < g.n):
                return Verdict(False, "vertex-out-of-range", f"{c}-{t}")
            if not g.has_edge(c, t):
                return Verdict(False, "star-edge-absent", f"{c}-{t}")
    if required_centers is not None:
        want = set(required_centers)
        if p.centers() != want:
            return Verdict(False, "wrong-centers", "")
    return _OK


@dataclass
class SghgInvariantReport:
    """Structural facts every accepted SGHG must satisfy."""

    leaf_count: int
    internal_count: int
    more_leaves_than_internal: bool
    tree_cycle_edge_disjoint: bool
    union_three_connected: bool
    wheel_order: int
    wheel_order_at_least_half: bool

    @property
    def all_hold(self) -> bool:
        return (
            self.more_leaves_than_internal
            and self.tree_cycle_edge_disjoint
            and self.union_three_connected
            and self.wheel_order_at_least_half
        )


def sghg_invariants(g: Graph, h: HalinCertificate) -> SghgInvariantReport:
    """Check the derived structural invariants on a verified certificate."""
    verdict = is_generalized_halin(g, h)
    if not verdict:
        raise PreconditionError(f"invalid certificate: {verdict.code}")
    leaves = h.tree.leaves()
    internal = h.tree.internal()
    union = Graph(g.n, h.tree.edges | h.cycle_edges())
    order, _ = wheel_minor(h)
    return SghgInvariantReport(
        leaf_count=len(leaves),
        internal_count=len(internal),
        more_leaves_than_internal=len(leaves) > len(internal),
        tree_cycle_edge_disjoint=not (h.tree.edges & h.cycle_edges()),
        union_three_connected=vertex_connectivity_at_least(union, 3),
        wheel_order=order,
        wheel_order_at_least_half=order >= -(-g.n // 2),
    )
