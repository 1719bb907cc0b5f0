"""Constructive Hamiltonian routines under degree-sum hypotheses.

Both builders start from a spanning sequence that may contain virtual
(non-)edges and repair one virtual edge per rotation: a crossing exchange
replaces the virtual edge and one other sequence edge with two genuine
host edges, reversing the segment in between.  For a nonadjacent pair
u,v on an n-vertex sequence there are n-2 candidate positions but at
least d(u)+d(v)-2 >= n-1 position marks, so a crossing always exists under
the degree-sum hypothesis and the number of virtual edges strictly drops.
A missing crossing would therefore refute the hypothesis itself and is
raised as a falsification event, never retried.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import FalsificationError, PreconditionError
from .graph import Graph, VertexSetPair


@dataclass(frozen=True)
class OreWitness:
    """Outcome of the degree-sum precheck; absent pair means it holds."""

    violating_pair: tuple[int, int] | None

    @property
    def holds(self) -> bool:
        return self.violating_pair is None


def check_ore_plus(g: Graph) -> OreWitness:
    """Exact scan: every nonadjacent pair needs d(x)+d(y) >= n+1."""
    for u, v in combinations(range(g.n), 2):
        if not g.has_edge(u, v) and g.degree(u) + g.degree(v) <= g.n:
            return OreWitness((u, v))
    return OreWitness(None)


@dataclass
class RotationStats:
    rotations: int = 0
    extensions: int = 0


def _crossing_index(g: Graph, seq: list[int], i: int, cyclic: bool) -> int:
    """Smallest j != i with seq[j] ~ seq[i] and seq[j+1] ~ seq[i+1]."""
    k = len(seq)
    u, v = seq[i], seq[(i + 1) % k]
    top = k if cyclic else k - 1
    for j in range(top):
        if j == i:
            continue
        if g.has_edge(u, seq[j]) and g.has_edge(v, seq[(j + 1) % k]):
            return j
    return -1


def _apply_crossing(seq: list[int], i: int, j: int) -> list[int]:
    """Reverse the segment between positions i and j of a path sequence."""
    if j < i:
        return seq[: j + 1] + seq[j + 1 : i + 1][::-1] + seq[i + 1 :]
    return seq[: i + 1] + seq[i + 1 : j + 1][::-1] + seq[j + 1 :]


def verify_walk(
    g: Graph,
    walk: tuple[int, ...],
    *,
    closed: bool,
    endpoints: tuple[int, int] | None = None,
) -> bool:
    """Independent check: spans g once, uses host edges, hits endpoints."""
    if sorted(walk) != list(range(g.n)):
        return False
    for a, b in zip(walk, walk[1:]):
        if not g.has_edge(a, b):
            return False
    if closed and g.n >= 1 and not g.has_edge(walk[-1], walk[0]):
        return False
    if endpoints is not None and (walk[0], walk[-1]) != endpoints:
        return False
    return True


def ore_ham_path(
    g: Graph,
    x: int,
    y: int,
    max_rotations: int | None = None,
    stats: RotationStats | None = None,
) -> tuple[int, ...]:
    """Hamiltonian (x,y)-path under the degree-sum n+1 condition.

    Never searches: each rotation removes one virtual edge for good, so
    at most n-1 rotations happen (the configurable cap defaults to n^2).
    """
    if x == y:
        raise PreconditionError("endpoints must differ")
    witness = check_ore_plus(g)
    if not witness.holds:
        raise PreconditionError(
            f"degree-sum condition fails at pair {witness.violating_pair}"
        )
    n = g.n
    if n == 2:
        if not g.has_edge(x, y):
            raise PreconditionError("two vertices without their edge")
        return (x, y)
    if stats is None:
        stats = RotationStats()
    cap = max_rotations if max_rotations is not None else n * n
    seq = [x] + sorted(set(range(n)) - {x, y}) + [y]
    stats.extensions += 1
    while True:
        bad = next(
            (i for i in range(n - 1) if not g.has_edge(seq[i], seq[i + 1])), None
        )
        if bad is None:
            return tuple(seq)
        if stats.rotations >= cap:
            raise FalsificationError(
                "rotation cap exceeded under a verified degree-sum condition",
                {"sequence": list(seq), "virtual_at": bad},
            )
        j = _crossing_index(g, seq, bad, cyclic=False)
        if j < 0:
            raise FalsificationError(
                "no crossing exchange for a nonadjacent pair despite the "
                "degree-sum condition",
                {"sequence": list(seq), "virtual_at": bad},
            )
        seq = _apply_crossing(seq, bad, j)
        stats.rotations += 1


def moon_moser_cycle(
    g: Graph,
    sides: VertexSetPair,
    max_rotations: int | None = None,
    stats: RotationStats | None = None,
) -> tuple[int, ...]:
    """Hamiltonian cycle of a balanced bipartite graph whose nonadjacent
    cross pairs satisfy d(x)+d(y) >= m+1 (m = side size)."""
    sides.validate_for(g)
    left, right = sorted(sides.left), sorted(sides.right)
    m = len(left)
    if m != len(right) or m < 2:
        raise PreconditionError("sides must be balanced with at least 2 each")
    if set(left) | set(right) != set(range(g.n)):
        raise PreconditionError("sides must cover the vertex set")
    for u, v in g.edges():
        if (u in sides.left) == (v in sides.left):
            raise PreconditionError(f"edge {u}-{v} inside one side")
    for u in left:
        for v in right:
            if not g.has_edge(u, v) and g.degree(u) + g.degree(v) <= m:
                raise PreconditionError(
                    f"cross degree-sum condition fails at pair ({u},{v})"
                )
    if stats is None:
        stats = RotationStats()
    cap = max_rotations if max_rotations is not None else 4 * m * m
    seq: list[int] = []
    for l, r in zip(left, right):
        seq.extend((l, r))
    stats.extensions += 1
    k = len(seq)
    while True:
        bad = next(
            (i for i in range(k) if not g.has_edge(seq[i], seq[(i + 1) % k])), None
        )
        if bad is None:
            return tuple(seq)
        if stats.rotations >= cap:
            raise FalsificationError(
                "rotation cap exceeded under a verified degree-sum condition",
                {"sequence": list(seq), "virtual_at": bad},
            )
        j = _crossing_index(g, seq, bad, cyclic=True)
        if j < 0:
            raise FalsificationError(
                "no crossing exchange for a nonadjacent cross pair despite "
                "the degree-sum condition",
                {"sequence": list(seq), "virtual_at": bad},
            )
        seq = _rotate_cycle(seq, bad, j)
        stats.rotations += 1


def _rotate_cycle(seq: list[int], i: int, j: int) -> list[int]:
    """Exchange cycle edges (i,i+1) and (j,j+1) for (i,j) and (i+1,j+1)."""
    k = len(seq)
    # Normalize so the reversed arc sits inside the list: rotate seq until
    # position i is at the end; then the arc to reverse is a prefix slice.
    rot = seq[i + 1 :] + seq[: i + 1]  # now virtual edge spans (last, first)
    jj = (j - i - 1) % k  # position of j in rotated frame
    out = rot[: jj + 1][::-1] + rot[jj + 1 :]
    return out
