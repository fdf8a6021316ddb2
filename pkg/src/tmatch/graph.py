"""Exact-arithmetic graph representations.

Two containers live here: :class:`Graph` for the simple input graph of a
t-matching instance, and :class:`MultiGraph` for the auxiliary instance in
which gadget edges (including parallel ones) are allowed.

All weights are integers.  ``Graph`` stores every input weight multiplied
by two so that half-integral vertex potentials (for example the potentials
of a triangle with odd weight sums) remain machine integers everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputFormatError, ValidationError

# Edge annotations used by MultiGraph.
ORIGINAL = "orig"
HALF_EDGE = "half"
GADGET_INTERNAL = "gadget"


class Graph:
    """Simple undirected graph with bounded degree and doubled weights.

    Vertices are dense 0-based indices.  Edge ids are dense 0-based indices
    into :attr:`edges`.  Instances are immutable after construction and may
    be shared freely between threads.
    """

    __slots__ = ("n", "t", "edges", "adj", "_edge_index")

    def __init__(
        self,
        n: int,
        edges: Sequence[tuple[int, int, int]],
        t: int,
        *,
        weights_doubled: bool = False,
    ):
        """Build a graph from ``(u, v, weight)`` triples.

        Weights are non-negative integers in input units unless
        ``weights_doubled`` is set (used when re-wrapping internal data).
        Raises ``ValidationError`` for loops, parallel edges, negative
        weights, degrees above ``t+1``, or ``t < 3``.
        """
        if t < 3:
            raise ValidationError(f"degree parameter t={t} is not supported; t must be >= 3")
        if n < 0:
            raise InputFormatError("vertex count must be non-negative")
        self.n = n
        self.t = t
        self.edges: list[tuple[int, int, int]] = []
        self.adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self._edge_index: dict[tuple[int, int], int] = {}
        for (u, v, w) in edges:
            self._add_edge(u, v, w if weights_doubled else 2 * w)
        for v in range(n):
            if len(self.adj[v]) > t + 1:
                raise ValidationError(
                    f"vertex {v} has degree {len(self.adj[v])}, exceeding t+1 = {t + 1}"
                )

    def _add_edge(self, u: int, v: int, wd: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InputFormatError(f"edge ({u},{v}) has an endpoint out of range")
        if u == v:
            raise ValidationError(f"loop at vertex {u} is not allowed")
        if wd < 0:
            raise ValidationError(f"edge ({u},{v}) has negative weight")
        key = (u, v) if u < v else (v, u)
        if key in self._edge_index:
            raise ValidationError(f"parallel edge ({u},{v}) is not allowed")
        eid = len(self.edges)
        self._edge_index[key] = eid
        self.edges.append((key[0], key[1], wd))
        self.adj[u].append((v, eid))
        self.adj[v].append((u, eid))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return [u for (u, _) in self.adj[v]]

    def edge_id(self, u: int, v: int) -> int | None:
        """Edge id of (u, v), or None if the pair is not adjacent."""
        return self._edge_index.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_id(u, v) is not None

    def weight_doubled(self, eid: int) -> int:
        return self.edges[eid][2]

    def total_weight_doubled(self) -> int:
        return sum(w for (_, _, w) in self.edges)

    def input_weights(self) -> list[int]:
        """Weights in input units (each stored weight halved)."""
        return [w // 2 for (_, _, w) in self.edges]

    def check_range(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise InputFormatError(f"vertex {v} out of range [0, {self.n})")


@dataclass(frozen=True)
class MEdge:
    """Edge of the auxiliary multigraph.

    ``tag`` records provenance: ``(ORIGINAL, edge_id)`` for a copied input
    edge, ``(HALF_EDGE, gadget_id, original_vertex)`` for a half-edge, and
    ``(GADGET_INTERNAL, gadget_id)`` for a weight-0 internal gadget edge.
    """

    u: int
    v: int
    w: int
    tag: tuple


class MultiGraph:
    """Undirected multigraph; parallel edges allowed, weights may be negative."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int):
        self.n = n
        self.edges: list[MEdge] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_vertex(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int, w: int, tag: tuple) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            raise InputFormatError(f"bad multigraph edge ({u},{v})")
        if tag[0] == HALF_EDGE and not (0 <= tag[2] < self.n):
            raise InputFormatError("half-edge annotation names an unknown vertex")
        eid = len(self.edges)
        self.edges.append(MEdge(u, v, w, tag))
        self.adj[u].append(eid)
        self.adj[v].append(eid)
        return eid

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def weights(self) -> list[int]:
        return [e.w for e in self.edges]


@dataclass
class CapacityVector:
    """Per-vertex degree interval [lower, upper] for (l,b)-matchings."""

    lower: list[int]
    upper: list[int]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise InputFormatError("capacity vectors must have equal length")
        for v, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo < 0 or hi < lo:
                raise InputFormatError(f"bad capacity interval [{lo},{hi}] at vertex {v}")

    def normalized(self, degrees: Sequence[int]) -> "CapacityVector":
        """Clamp upper bounds to vertex degrees; reject unreachable lower bounds."""
        lo = list(self.lower)
        hi = [min(h, d) for (h, d) in zip(self.upper, degrees)]
        for v in range(len(lo)):
            if lo[v] > hi[v]:
                raise ValidationError(
                    f"vertex {v} needs at least {lo[v]} incident edges but only "
                    f"{hi[v]} are available"
                )
        return CapacityVector(lo, hi)


def common_neighbors(g: Graph, u: int, v: int) -> set[int]:
    """Vertices adjacent to both u and v.

    Runs in O(deg(u) + deg(v)) by marking, independent of n beyond the
    one-off scratch allocation.
    """
    g.check_range(u)
    g.check_range(v)
    if u == v:
        raise InputFormatError("common_neighbors needs two distinct vertices")
    mark = set(g.neighbors(u))
    return {x for x in g.neighbors(v) if x in mark}


def induced_complement(g: Graph, a: Iterable[int]) -> list[tuple[int, int]]:
    """All non-adjacent unordered pairs within the vertex set ``a``.

    Intended for gadget-sized sets only; cost is O(|a| * (t + |a|)).
    """
    verts = sorted(set(a))
    for v in verts:
        g.check_range(v)
    out = []
    for i, u in enumerate(verts):
        nbrs = set(g.neighbors(u))
        for v in verts[i + 1:]:
            if v not in nbrs:
                out.append((u, v))
    return out


@dataclass(frozen=True)
class Pattern:
    """Shape of a complement edge list: empty, star, matching, or other."""

    kind: str  # "empty" | "star" | "matching" | "other"
    centers: frozenset[int] = field(default_factory=frozenset)


def classify_pattern(edges: Sequence[tuple[int, int]], a: Iterable[int]) -> Pattern:
    """Classify a complement edge list over vertex set ``a``.

    A single edge is reported as a star with both endpoints as valid
    centers (and it is of course also a matching; star wins so callers
    probing for clique exclusions see every candidate center).
    """
    edges = list(edges)
    if not edges:
        return Pattern("empty")
    if len(edges) == 1:
        (x, y) = edges[0]
        return Pattern("star", frozenset((x, y)))
    # Candidate centers: vertices covering every edge.
    centers = set(edges[0])
    for (x, y) in edges[1:]:
        centers &= {x, y}
        if not centers:
            break
    if centers:
        return Pattern("star", frozenset(centers))
    seen: set[int] = set()
    for (x, y) in edges:
        if x in seen or y in seen:
            return Pattern("other")
        seen.add(x)
        seen.add(y)
    return Pattern("matching")
