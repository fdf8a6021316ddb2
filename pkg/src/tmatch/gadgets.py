"""Construction of the auxiliary degree-constrained matching instance.

Every problematic forbidden subgraph (and every dense cluster whose
center potential is non-negative) is augmented with a small gadget built
from half-edges: new hub vertices adjacent to the subgraph's vertices,
with exact capacity intervals that force the eventual matching to "cut"
the subgraph.  A half-edge incident to original vertex v carries v's
potential as its weight; all other gadget edges weigh zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .detect import BICLIQUE, CLIQUE, DENSE, PARTITE, ForbiddenSubgraph
from .errors import InternalError
from .graph import GADGET_INTERNAL, HALF_EDGE, ORIGINAL, CapacityVector, Graph, MultiGraph
from .potentials import PotentialFunction


@dataclass
class GadgetInfo:
    """Bookkeeping for one attached gadget.

    ``hubs`` are the per-class subdivision vertices (a single entry for a
    clique gadget), ``collector`` the degree-(p-2) or (p-k) aggregation
    vertex of partite/dense gadgets, ``center_hub``/``center`` the doubled
    attachment of a dense cluster.  ``half_edges`` maps each hub to the
    list of (edge_id, original_vertex) half-edges it carries.
    """

    kind: str
    subgraph_id: int
    hubs: list[int] = field(default_factory=list)
    collector: int = -1
    center_hub: int = -1
    center: int = -1
    core_size: int = 0
    p: int = 0
    half_edges: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    internal_edges: list[int] = field(default_factory=list)


@dataclass
class AuxiliaryInstance:
    """The auxiliary multigraph with capacities and gadget provenance."""

    graph: MultiGraph
    capacities: CapacityVector
    gadgets: list[GadgetInfo]
    original: Graph
    # Dense clusters left without a gadget (negative center potential),
    # as (record id, center vertex) pairs.
    skipped_dense: list[tuple[int, int]] = field(default_factory=list)

    def original_edge_ids(self, selected: list[int]) -> list[int]:
        out = []
        for eid in selected:
            tag = self.graph.edges[eid].tag
            if tag[0] == ORIGINAL:
                out.append(tag[1])
        return out


def _add_half(mg: MultiGraph, gid_edges, hub: int, v: int, w: int, gidx: int) -> int:
    eid = mg.add_edge(hub, v, w, (HALF_EDGE, gidx, v))
    gid_edges.setdefault(hub, []).append((eid, v))
    return eid


def build_auxiliary(
    g: Graph,
    records: list[ForbiddenSubgraph],
    potentials: dict[int, PotentialFunction],
) -> AuxiliaryInstance:
    """Steps one and two of the solve: build (G', w', l, b).

    ``records`` is the classified detection output; gadgets are attached
    to every problematic clique/biclique/partite record and every dense
    cluster whose minimum-potential core vertex is non-negative.
    ``potentials`` must contain an entry for each such record.
    """
    mg = MultiGraph(g.n)
    for (u, v, w) in g.edges:
        mg.add_edge(u, v, w, (ORIGINAL, g.edge_id(u, v)))

    lower = [0] * g.n
    upper = [0] * g.n
    for v in range(g.n):
        if g.degree(v) == g.t + 1:
            lower[v], upper[v] = 1, g.t + 1
        else:
            lower[v], upper[v] = 0, g.degree(v)

    targets = []
    skipped = []
    seen_vertices: dict[int, int] = {}
    for r in records:
        if r.kind == DENSE:
            pf = potentials.get(r.id)
            if pf is None:
                raise InternalError(f"missing potentials for dense cluster {r.id}")
            center = min(r.core, key=lambda v: (pf.value(v), v))
            if pf.value(center) < 0:
                skipped.append((r.id, center))
                continue
            targets.append(r)
        elif r.problematic:
            targets.append(r)
    for r in targets:
        for v in r.vertices:
            if v in seen_vertices:
                raise InternalError(
                    f"gadget targets {seen_vertices[v]} and {r.id} overlap at {v}"
                )
            seen_vertices[v] = r.id

    gadgets: list[GadgetInfo] = []
    for r in targets:
        pf = potentials.get(r.id)
        if pf is None:
            raise InternalError(f"missing potentials for record {r.id}")
        gidx = len(gadgets)
        info = GadgetInfo(kind=r.kind, subgraph_id=r.id)
        if r.kind == CLIQUE:
            hub = mg.add_vertex()
            lower.append(2)
            upper.append(2)
            info.hubs = [hub]
            for v in r.vertices:
                _add_half(mg, info.half_edges, hub, v, pf.value(v), gidx)
        elif r.kind == BICLIQUE:
            for cls in r.classes:
                hub = mg.add_vertex()
                lower.append(1)
                upper.append(1)
                info.hubs.append(hub)
                for v in cls:
                    _add_half(mg, info.half_edges, hub, v, pf.value(v), gidx)
        elif r.kind == PARTITE:
            p = len(r.classes)
            info.p = p
            collector = mg.add_vertex()
            lower.append(p - 2)
            upper.append(p - 2)
            info.collector = collector
            for cls in r.classes:
                hub = mg.add_vertex()
                lower.append(1)
                upper.append(1)
                info.hubs.append(hub)
                for v in cls:
                    _add_half(mg, info.half_edges, hub, v, pf.value(v), gidx)
                info.internal_edges.append(
                    mg.add_edge(hub, collector, 0, (GADGET_INTERNAL, gidx))
                )
        elif r.kind == DENSE:
            # Gadget shape is driven by the classes of any member that are
            # disjoint from the core; the core itself hangs off one doubled
            # hub at its minimum-potential vertex.
            core = set(r.core)
            k = len(r.core) // 2
            outside_classes = _outside_classes(r, records, core)
            p = k + len(outside_classes)
            info.p = p
            info.core_size = len(r.core)
            center = min(r.core, key=lambda v: (pf.value(v), v))
            info.center = center
            collector = mg.add_vertex()
            lower.append(p - k)
            upper.append(p - k)
            info.collector = collector
            center_hub = mg.add_vertex()
            lower.append(2)
            upper.append(2)
            info.center_hub = center_hub
            for _ in range(2):
                _add_half(mg, info.half_edges, center_hub, center, pf.value(center), gidx)
                info.internal_edges.append(
                    mg.add_edge(center_hub, collector, 0, (GADGET_INTERNAL, gidx))
                )
            for cls in outside_classes:
                hub = mg.add_vertex()
                lower.append(1)
                upper.append(1)
                info.hubs.append(hub)
                for v in cls:
                    _add_half(mg, info.half_edges, hub, v, pf.value(v), gidx)
                info.internal_edges.append(
                    mg.add_edge(hub, collector, 0, (GADGET_INTERNAL, gidx))
                )
        else:
            raise InternalError(f"cannot build a gadget for kind {r.kind}")
        gadgets.append(info)
        _check_half_edge_weights(g, r, pf)

    cap = CapacityVector(lower, upper)
    return AuxiliaryInstance(mg, cap, gadgets, g, skipped)


def _outside_classes(
    r: ForbiddenSubgraph, records: list[ForbiddenSubgraph], core: set[int]
):
    member = records[r.member_ids[0]]
    outside = [list(c) for c in member.classes if not core.issuperset(c)]
    for c in outside:
        if any(x in core for x in c):
            raise InternalError("member class straddles the dense core")
    return outside


def _check_half_edge_weights(g: Graph, r: ForbiddenSubgraph, pf: PotentialFunction) -> None:
    # The half-edge pair replacing an original edge must weigh the same.
    if r.kind == DENSE:
        pairs = [
            (u, v)
            for i, u in enumerate(r.vertices)
            for v in r.vertices[i + 1:]
            if g.has_edge(u, v)
        ]
    else:
        pairs = r.edge_pairs()
    for (u, v) in pairs:
        eid = g.edge_id(u, v)
        if pf.value(u) + pf.value(v) != g.weight_doubled(eid):
            raise InternalError(
                f"half-edge weights at ({u},{v}) do not reproduce the edge weight"
            )


def gadget_stats(aux: AuxiliaryInstance) -> dict[str, int]:
    """Added vertex/edge counts and the capacity mass of the instance."""
    added_vertices = aux.graph.n - aux.original.n
    added_edges = aux.graph.m - aux.original.m
    return {
        "added_vertices": added_vertices,
        "added_edges": added_edges,
        "sum_b": sum(aux.capacities.upper),
        "gadgets": len(aux.gadgets),
    }
