"""Back-translation of the auxiliary matching and local repair.

The auxiliary solve returns a degree-constrained matching whose half-edge
pairs stand for edges of the input graph.  This module rebuilds the
corresponding small edge set (the complement of the final t-matching),
restores coverage of subgraphs that were left without gadgets by weight-
neutral local flips, complements, and certifies the answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .detect import BICLIQUE, CLIQUE, DENSE, PARTITE, ForbiddenSubgraph
from .errors import InternalError
from .gadgets import AuxiliaryInstance
from .graph import ORIGINAL, Graph
from .lb import LbMatching


@dataclass
class SolveResult:
    """Final answer: the t-matching, its complement, and diagnostics."""

    tmatching: list[int]
    cotmatching: list[int]
    weight_doubled: int
    diagnostics: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def weight(self) -> int:
        return self.weight_doubled // 2


class CoTMatching:
    """Mutable set of original edge ids forming a co-t-matching."""

    def __init__(self, g: Graph, edge_ids=()):
        self.g = g
        self.ids: set[int] = set(edge_ids)

    def add_pair(self, u: int, v: int) -> None:
        eid = self.g.edge_id(u, v)
        if eid is None:
            raise InternalError(f"tried to add nonexistent edge ({u},{v})")
        self.ids.add(eid)

    def remove_pair(self, u: int, v: int) -> None:
        eid = self.g.edge_id(u, v)
        if eid is None or eid not in self.ids:
            raise InternalError(f"tried to remove absent edge ({u},{v})")
        self.ids.remove(eid)

    def has_pair(self, u: int, v: int) -> bool:
        eid = self.g.edge_id(u, v)
        return eid is not None and eid in self.ids

    def degree(self, v: int) -> int:
        return sum(1 for (_, eid) in self.g.adj[v] if eid in self.ids)

    def weight_doubled(self) -> int:
        return sum(self.g.weight_doubled(e) for e in self.ids)

    def covers(self, h: ForbiddenSubgraph) -> bool:
        return any(self.has_pair(u, v) for (u, v) in h.edge_pairs())

    def is_cotmatching(self) -> bool:
        return all(
            self.degree(v) >= 1 for v in range(self.g.n) if self.g.degree(v) == self.g.t + 1
        )


def matching_to_cotmatching(
    aux: AuxiliaryInstance, m: LbMatching, diagnostics: list[dict] | None = None
) -> CoTMatching:
    """Translate an auxiliary (l,b)-matching into a co-t-matching.

    Original edges carry over; each gadget contributes the edge its two
    chosen half-edges stand for.  Dense gadgets need the full case split:
    when both chosen half-edges sit on the cluster center, either an edge
    inside the core is split through the center or two core-boundary edges
    are rewired through it.
    """
    g = aux.original
    mg = aux.graph
    chosen = set(m.edge_ids)
    cot = CoTMatching(g, aux.original_edge_ids(m.edge_ids))
    diags = diagnostics if diagnostics is not None else []

    for info in aux.gadgets:
        # (edge id, original endpoint) of the selected half-edges.
        halves = []
        for hub, pairs in info.half_edges.items():
            for (eid, v) in pairs:
                if eid in chosen:
                    halves.append((eid, v))
        if len(halves) != 2:
            raise InternalError(
                f"gadget {info.subgraph_id} holds {len(halves)} half-edges, wanted 2"
            )
        (e1, a), (e2, b) = halves
        if info.kind in (CLIQUE, BICLIQUE, PARTITE):
            if a == b:
                raise InternalError("half-edge pair collapsed onto one vertex")
            cot.add_pair(a, b)
            continue
        # Dense cluster.
        if a != b:
            cot.add_pair(a, b)
            diags.append({"gadget": info.subgraph_id, "rule": "dense-boundary-pair"})
            continue
        center = info.center
        if a != center:
            raise InternalError("doubled half-edges must sit on the cluster center")
        core = set(_core_of(aux, info))
        inner = [
            eid
            for eid in m.edge_ids
            if mg.edges[eid].tag[0] == ORIGINAL
            and mg.edges[eid].u in core - {center}
            and mg.edges[eid].v in core - {center}
        ]
        if inner:
            e = mg.edges[min(inner)]
            cot.remove_pair(e.u, e.v)
            cot.add_pair(center, e.u)
            cot.add_pair(center, e.v)
            diags.append({"gadget": info.subgraph_id, "rule": "dense-core-split"})
            continue
        boundary = []
        for eid in m.edge_ids:
            e = mg.edges[eid]
            if e.tag[0] != ORIGINAL:
                continue
            (x, y) = (e.u, e.v)
            for (c, o) in ((x, y), (y, x)):
                if c in core and c != center and o not in core:
                    boundary.append((c, o))
        if len(boundary) < 2:
            raise InternalError("dense rewiring needs two core-boundary edges")
        boundary.sort()
        (v1, u1) = boundary[0]
        (v2, u2) = next(
            ((c, o) for (c, o) in boundary[1:] if c != boundary[0][0]),
            (-1, -1),
        )
        if v2 < 0:
            raise InternalError("dense rewiring needs boundary edges at two core vertices")
        cot.remove_pair(v1, u1)
        cot.remove_pair(v2, u2)
        cot.add_pair(v1, v2)
        cot.add_pair(center, u1)
        cot.add_pair(center, u2)
        diags.append({"gadget": info.subgraph_id, "rule": "dense-rewire"})

    _repair_skipped_dense(aux, cot, diags)
    if not cot.is_cotmatching():
        raise InternalError("translation lost coverage of a full-degree vertex")
    return cot


def _repair_skipped_dense(aux: AuxiliaryInstance, cot: CoTMatching, diags) -> None:
    """Dense clusters with a negative-potential center carry no gadget; a
    minimum solve covers them anyway.  Re-check, and if a non-minimal
    matching slipped through, split one core edge through the center
    (which strictly lowers the weight)."""
    records = aux_records(aux)
    g = aux.original
    for (rid, center) in aux.skipped_dense:
        rec = records[rid]
        members = [records[i] for i in rec.member_ids]
        if all(cot.covers(m) for m in members):
            continue
        # An uncovered member forces the matched core edges to be exactly a
        # perfect matching of the core (inducing the one member missed).
        core = set(rec.core)
        inside = [
            e for e in cot.ids
            if g.edges[e][0] in core and g.edges[e][1] in core
        ]
        deg_in = {v: 0 for v in core}
        for e in inside:
            deg_in[g.edges[e][0]] += 1
            deg_in[g.edges[e][1]] += 1
        if any(d != 1 for d in deg_in.values()):
            raise InternalError("uncovered dense cluster without a core matching")
        (v1, v2) = next(
            (g.edges[e][0], g.edges[e][1]) for e in sorted(inside)
            if center not in (g.edges[e][0], g.edges[e][1])
        )
        cot.remove_pair(v1, v2)
        cot.add_pair(center, v1)
        cot.add_pair(center, v2)
        diags.append({"gadget": rid, "rule": "dense-negative-center-split"})
        if not all(cot.covers(m) for m in members):
            raise InternalError("dense split repair failed to cover the cluster")


def _core_of(aux: AuxiliaryInstance, info) -> tuple[int, ...]:
    for r in aux_records(aux):
        if r.id == info.subgraph_id:
            return r.core
    raise InternalError("gadget points at an unknown record")


def aux_records(aux: AuxiliaryInstance) -> list[ForbiddenSubgraph]:
    recs = getattr(aux, "_records", None)
    if recs is None:
        raise InternalError("auxiliary instance lacks attached records")
    return recs


def attach_records(aux: AuxiliaryInstance, records: list[ForbiddenSubgraph]) -> None:
    aux._records = records  # type: ignore[attr-defined]


def _class_of(h: ForbiddenSubgraph, v: int) -> int:
    for i, c in enumerate(h.classes):
        if v in c:
            return i
    raise InternalError("vertex not in any class")


def cover_unproblematic(
    g: Graph,
    cot: CoTMatching,
    records: list[ForbiddenSubgraph],
    neighbors: list[list[int]],
    diagnostics: list[dict] | None = None,
) -> CoTMatching:
    """Repair coverage of gadget-less subgraphs by weight-neutral flips.

    Every uncovered subgraph here is unproblematic, so it has a partner of
    at least its weight sharing a vertex; one of three local exchanges
    moves coverage onto it without increasing total weight or breaking the
    degree property.  Iterates until everything is covered.
    """
    diags = diagnostics if diagnostics is not None else []
    plain = [r for r in records if r.kind != DENSE]
    for _ in range(len(plain) + 1):
        uncovered = [r for r in plain if not cot.covers(r)]
        if not uncovered:
            return cot
        progressed = False
        for h in uncovered:
            if cot.covers(h):
                continue
            if h.in_dense >= 0:
                raise InternalError(
                    "a dense-cluster member escaped its gadget's coverage"
                )
            before = cot.weight_doubled()
            if _repair_one(g, cot, h, records, neighbors, diags):
                progressed = True
                if cot.weight_doubled() > before:
                    raise InternalError("repair flip increased the weight")
                if not cot.is_cotmatching():
                    raise InternalError("repair flip broke the degree property")
        if not progressed:
            raise InternalError("repair loop stalled with uncovered subgraphs")
    raise InternalError("repair loop failed to terminate")


def _repair_one(g, cot, h, records, neighbors, diags) -> bool:
    partners = sorted((records[j] for j in neighbors[h.id]), key=lambda r: r.id)
    if h.kind == CLIQUE:
        for other in partners:
            if other.kind == BICLIQUE:
                _flip_cross(g, cot, h, other, diags)
                return True
        for other in sorted(partners, key=lambda r: r.id):
            if other.kind == CLIQUE and h.weight <= other.weight:
                _flip_shift_clique(g, cot, h, other, diags)
                return True
    elif h.kind == BICLIQUE:
        for other in sorted(partners, key=lambda r: r.id):
            if other.kind == BICLIQUE and h.weight <= other.weight:
                shared = set(h.vertices) & set(other.vertices)
                if len(shared) == 2 * g.t - 2:
                    _flip_cross_bicliques(g, cot, h, other, diags)
                else:
                    _flip_shift_biclique(g, cot, h, other, diags)
                return True
    elif h.kind == PARTITE:
        for other in sorted(partners, key=lambda r: r.id):
            if other.kind == PARTITE and h.weight <= other.weight:
                _flip_shift_partite(g, cot, h, other, diags)
                return True
    raise InternalError(f"no eligible repair partner for record {h.id}")


def _flip_cross(g, cot, h, other, diags) -> None:
    # Clique inside a biclique (t = 3 only): exchange the two crossing
    # edges at the shared square for one clique edge and one outer edge.
    hv = set(h.vertices)
    c1 = [v for v in other.classes[0] if v in hv]
    c2 = [v for v in other.classes[1] if v in hv]
    u1 = min(v for v in other.classes[0] if v not in hv)
    u2 = min(v for v in other.classes[1] if v not in hv)
    v1, v2 = min(c1), min(c2)
    cot.remove_pair(v1, u2)
    cot.remove_pair(v2, u1)
    cot.add_pair(v1, v2)
    cot.add_pair(u1, u2)
    diags.append({"subgraph": h.id, "rule": "clique-biclique-exchange", "partner": other.id})


def _choose_shift(g, cot, h_out, o_out, shared_adjacent) -> tuple[int, int]:
    # Pick the shared vertex whose edge toward this subgraph is no heavier
    # than the partner's edge it replaces.
    for z in shared_adjacent:
        we = g.weight_doubled(g.edge_id(h_out, z))
        wo = g.weight_doubled(g.edge_id(o_out, z))
        if we <= wo:
            return z, wo
    raise InternalError("weight comparison promised a shiftable shared vertex")


def _flip_shift_clique(g, cot, h, other, diags) -> None:
    hv, ov = set(h.vertices), set(other.vertices)
    u = min(hv - ov)
    up = min(ov - hv)
    shared = sorted(hv & ov)
    z, _ = _choose_shift(g, cot, u, up, shared)
    cot.remove_pair(up, z)
    cot.add_pair(u, z)
    diags.append({"subgraph": h.id, "rule": "clique-shift", "partner": other.id})


def _flip_shift_partite(g, cot, h, other, diags) -> None:
    hv, ov = set(h.vertices), set(other.vertices)
    u = min(hv - ov)
    up = min(ov - hv)
    shared = sorted(v for v in (hv & ov) if v not in h.classes[_class_of(h, u)])
    z, _ = _choose_shift(g, cot, u, up, shared)
    cot.remove_pair(up, z)
    cot.add_pair(u, z)
    diags.append({"subgraph": h.id, "rule": "partite-shift", "partner": other.id})


def _flip_shift_biclique(g, cot, h, other, diags) -> None:
    # Intersection keeps one full class; the flip moves one crossing edge.
    hv, ov = set(h.vertices), set(other.vertices)
    u = min(hv - ov)
    up = min(ov - hv)
    shared_class = None
    for c in h.classes:
        if u not in c:
            shared_class = c
    z, _ = _choose_shift(g, cot, u, up, sorted(shared_class))
    cot.remove_pair(up, z)
    cot.add_pair(u, z)
    diags.append({"subgraph": h.id, "rule": "biclique-shift", "partner": other.id})


def _flip_cross_bicliques(g, cot, h, other, diags) -> None:
    hv = set(h.vertices)
    # Align class sides: class 0 of the partner against whichever class of
    # h it overlaps in t-1 vertices.
    o1, o2 = other.classes
    u1 = min(v for v in o1 if v not in hv)
    u2 = min(v for v in o2 if v not in hv)
    v1 = min(v for v in o1 if v in hv)
    v2 = min(v for v in o2 if v in hv)
    cot.remove_pair(v1, u2)
    cot.remove_pair(v2, u1)
    cot.add_pair(v1, v2)
    cot.add_pair(u1, u2)
    diags.append({"subgraph": h.id, "rule": "biclique-exchange", "partner": other.id})


def verify_solution(
    g: Graph, records: list[ForbiddenSubgraph], result: SolveResult
) -> tuple[bool, str]:
    """Certify the final edge set: degree at most t everywhere, and every
    forbidden subgraph misses at least one edge.  Returns (ok, detail)."""
    chosen = set(result.tmatching)
    deg = [0] * g.n
    for eid in chosen:
        (u, v, _) = g.edges[eid]
        deg[u] += 1
        deg[v] += 1
    for v in range(g.n):
        if deg[v] > g.t:
            return False, f"vertex {v} has degree {deg[v]} > t"
    for r in records:
        if r.kind == DENSE:
            continue
        if all(g.edge_id(u, v) in chosen for (u, v) in r.edge_pairs()):
            return False, f"forbidden subgraph {r.id} ({r.kind}) fully included"
    return True, "certificate: degrees within t and every forbidden subgraph cut"


def finalize(
    g: Graph,
    cot: CoTMatching,
    records: list[ForbiddenSubgraph],
    diagnostics: list[dict],
    stats: dict,
) -> SolveResult:
    """Complement the covering co-t-matching and verify the answer."""
    all_ids = set(range(g.m))
    tmatch = sorted(all_ids - cot.ids)
    weight = g.total_weight_doubled() - cot.weight_doubled()
    result = SolveResult(
        tmatching=tmatch,
        cotmatching=sorted(cot.ids),
        weight_doubled=weight,
        diagnostics=diagnostics,
        stats=stats,
    )
    ok, detail = verify_solution(g, records, result)
    if not ok:
        raise InternalError(f"final verification failed: {detail}")
    result.stats["verification"] = detail
    return result
