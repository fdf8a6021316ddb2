"""Forbidden-subgraph detection.

Finds every complete partite subgraph the active variant forbids
(cliques on t+1 vertices, balanced bicliques K_{t,t}, or t-regular
K^p_q's), records which pairs of them share vertices, groups same-vertex-set
partite subgraphs into dense clusters, and classifies each subgraph as
problematic (needs a gadget) or unproblematic (coverable by local repair).

The driver follows a peel-and-probe strategy: vertices that cannot lie in
any forbidden subgraph are discarded after O(t) work, and every successful
find removes a Theta(t)-sized vertex set, so total work stays linear in the
number of edges for fixed t.  A work counter is maintained so tests can
assert the linear scaling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InternalError
from .graph import Graph

CLIQUE = "clique"
BICLIQUE = "biclique"
PARTITE = "partite"
DENSE = "dense"


@dataclass
class ForbiddenSubgraph:
    """One forbidden subgraph (or a dense cluster of them).

    ``classes`` is empty for cliques and dense clusters.  ``core`` is only
    populated for dense clusters: the vertices all of whose neighbors stay
    inside the cluster.  ``weight`` is in doubled units.
    """

    kind: str
    vertices: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    weight: int
    id: int = -1
    problematic: bool = False
    core: tuple[int, ...] = ()
    member_ids: tuple[int, ...] = ()  # dense only: absorbed partite records
    in_dense: int = -1  # partite only: id of the dense record absorbing it

    def key(self) -> tuple:
        return (self.kind, self.vertices, self.classes)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Unordered vertex pairs forming this subgraph's edge set."""
        if self.kind == CLIQUE:
            return [(u, v) for (u, v) in itertools.combinations(self.vertices, 2)]
        if self.kind == DENSE:
            raise InternalError("dense clusters do not own an edge set; use members")
        out = []
        for i, ci in enumerate(self.classes):
            for cj in self.classes[i + 1:]:
                out.extend((min(u, v), max(u, v)) for u in ci for v in cj)
        return out


@dataclass
class IntersectionRecord:
    """Symmetric record of forbidden-subgraph pairs sharing a vertex."""

    pairs: set[tuple[int, int]] = field(default_factory=set)

    def add(self, a: int, b: int) -> None:
        if a != b:
            self.pairs.add((min(a, b), max(a, b)))

    def neighbors(self, count: int) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(count)]
        for (a, b) in self.pairs:
            out[a].append(b)
            out[b].append(a)
        return out


@dataclass
class DetectionStats:
    """Instrumentation for the linear-time budget assertion."""

    probe_ops: int = 0
    partner_probes: int = 0
    local_searches: int = 0


class _Residual:
    """Graph view with vertex deletion, degree tracking and a work meter."""

    def __init__(self, g: Graph, stats: DetectionStats):
        self.g = g
        self.alive = [True] * g.n
        self.deg = [g.degree(v) for v in range(g.n)]
        self.stats = stats

    def neighbors(self, v: int) -> list[int]:
        self.stats.probe_ops += len(self.g.adj[v])
        return [u for (u, _) in self.g.adj[v] if self.alive[u]]

    def common(self, u: int, v: int) -> list[int]:
        mark = set(self.neighbors(u))
        return [x for x in self.neighbors(v) if x in mark]

    def adjacent(self, u: int, v: int) -> bool:
        self.stats.probe_ops += 1
        return self.g.has_edge(u, v)

    def remove(self, v: int) -> None:
        if not self.alive[v]:
            return
        self.alive[v] = False
        for (u, _) in self.g.adj[v]:
            if self.alive[u]:
                self.deg[u] -= 1

    def strip_low_degree(self, t: int) -> None:
        """Iteratively delete vertices of degree below t; they are in no
        t-regular forbidden subgraph."""
        work = [v for v in range(self.g.n) if self.alive[v] and self.deg[v] < t]
        while work:
            v = work.pop()
            if not self.alive[v] or self.deg[v] >= t:
                continue
            self.alive[v] = False
            for (u, _) in self.g.adj[v]:
                if self.alive[u]:
                    self.deg[u] -= 1
                    if self.deg[u] < t:
                        work.append(u)


def _complement_components(R: _Residual, verts: list[int]) -> list[list[int]]:
    """Connected components of the non-adjacency graph on ``verts``."""
    comp_id = {v: -1 for v in verts}
    comps: list[list[int]] = []
    for s in verts:
        if comp_id[s] >= 0:
            continue
        cid = len(comps)
        comp = [s]
        comp_id[s] = cid
        stack = [s]
        while stack:
            x = stack.pop()
            nb = set(R.neighbors(x))
            for y in verts:
                if comp_id[y] < 0 and y != x and y not in nb:
                    comp_id[y] = cid
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _canon_classes(classes: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(c)) for c in classes))


def _subgraph_weight(g: Graph, vertices, classes, kind: str) -> int:
    w = 0
    if kind == CLIQUE:
        for (u, v) in itertools.combinations(vertices, 2):
            eid = g.edge_id(u, v)
            if eid is None:
                raise InternalError("clique candidate misses an edge")
            w += g.weight_doubled(eid)
        return w
    for i, ci in enumerate(classes):
        for cj in classes[i + 1:]:
            for u in ci:
                for v in cj:
                    eid = g.edge_id(u, v)
                    if eid is None:
                        raise InternalError("partite candidate misses a cross edge")
                    w += g.weight_doubled(eid)
    return w


# ---------------------------------------------------------------------------
# Local finders.  Each returns every forbidden subgraph of the residual
# graph containing a given vertex, as (vertices, classes) pairs.
# ---------------------------------------------------------------------------


def _cliques_at_edge(R: _Residual, t: int, v: int, u: int) -> list[tuple]:
    gamma = R.common(v, u)
    out = []
    if len(gamma) == t - 1:
        cand = sorted([v, u] + gamma)
        if all(R.adjacent(a, b) for (a, b) in itertools.combinations(cand, 2)):
            out.append((tuple(cand), ()))
    elif len(gamma) == t:
        pool = sorted([v, u] + gamma)
        missing = [
            (a, b) for (a, b) in itertools.combinations(pool, 2) if not R.adjacent(a, b)
        ]
        if not missing:
            # A clique on t+2 vertices: every t+1-subset through the edge counts.
            for x in pool:
                if x != v and x != u:
                    out.append((tuple(w for w in pool if w != x), ()))
        else:
            # All non-edges must form a star; its centers are the only
            # vertices whose removal leaves a clique.
            centers = set(missing[0])
            for (a, b) in missing[1:]:
                centers &= {a, b}
            for x in sorted(centers):
                if x != v and x != u:
                    out.append((tuple(w for w in pool if w != x), ()))
    return out


def _cliques_at_vertex(R: _Residual, t: int, v: int) -> list[tuple]:
    nbrs = R.neighbors(v)
    if len(nbrs) < t:
        return []
    out = []
    for u in nbrs[:2]:
        out.extend(_cliques_at_edge(R, t, v, u))
    return out


def _partite_classes_forced(R: _Residual, verts: list[int], p: int, q: int):
    """Classes of a K^p_q on exactly ``verts`` for q >= 3 (or None).

    For q >= 3 the color classes are forced: they are the connected
    components of the non-adjacency graph restricted to the vertex set.
    """
    comps = _complement_components(R, verts)
    if len(comps) != p or any(len(c) != q for c in comps):
        return None
    return comps


def _partite_q3_at_edge(R: _Residual, p: int, q: int, v0: int, v1: int) -> list[tuple]:
    """All K^p_q's (q >= 3) of the residual graph containing edge (v0, v1)."""
    n0 = [x for x in R.neighbors(v0) if x != v1]
    n1 = [x for x in R.neighbors(v1) if x != v0]
    gamma = set(n0) & set(n1)
    lo, hi = (p - 2) * q, (p - 2) * q + 2
    if not (lo <= len(gamma) <= hi):
        return []
    pool = sorted({v0, v1} | set(n0) | set(n1))
    excl = len(pool) - p * q
    if excl < 0 or excl > 2:
        return []
    out = []
    candidates = [x for x in pool if x != v0 and x != v1]
    for drop in itertools.combinations(candidates, excl):
        verts = [x for x in pool if x not in drop]
        comps = _partite_classes_forced(R, verts, p, q)
        if comps is None:
            continue
        cid = {x: i for i, c in enumerate(comps) for x in c}
        if cid[v0] == cid[v1]:
            continue  # (v0, v1) must be a cross edge here
        out.append((tuple(verts), _canon_classes(comps)))
    return out


def _partite_q3_at_vertex(R: _Residual, p: int, q: int, v: int) -> list[tuple]:
    t = (p - 1) * q
    nbrs = R.neighbors(v)
    if len(nbrs) < t:
        return []
    out = []
    for u in nbrs[:2]:
        out.extend(_partite_q3_at_edge(R, p, q, v, u))
    return out


def _pairings(items: list[int]):
    """All partitions of ``items`` into unordered pairs."""
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for sub in _pairings(rest):
            yield [(a, items[i])] + sub


def _partite_q2_at_vertex(R: _Residual, p: int, v: int) -> list[tuple]:
    """All K^p_2's of the residual graph containing v (p >= 3).

    Strategy: the 2(p-1) cross vertices of any such subgraph are neighbors
    of v, so enumerate candidate cross sets T inside N(v), check that the
    non-adjacency pattern on T is a matching, then extend by a class
    partner for v (a common neighbor of all of T, adjacent to v or not).
    """
    t = 2 * (p - 1)
    nbrs = R.neighbors(v)
    if len(nbrs) < t:
        return []
    if len(nbrs) == t:
        t_options = [list(nbrs)]
    else:  # degree t+1: drop one neighbor
        t_options = [[x for x in nbrs if x != drop] for drop in nbrs]
    out = []
    for T in t_options:
        non_adj: dict[int, list[int]] = {x: [] for x in T}
        ok = True
        for (a, b) in itertools.combinations(T, 2):
            if not R.adjacent(a, b):
                non_adj[a].append(b)
                non_adj[b].append(a)
                if len(non_adj[a]) > 1 or len(non_adj[b]) > 1:
                    ok = False
                    break
        if not ok:
            continue
        forced = [(a, bs[0]) for a, bs in non_adj.items() if bs and a < bs[0]]
        free = sorted(x for x, bs in non_adj.items() if not bs)
        # Class partner of v: adjacent to every vertex of T, distinct from v.
        counts: dict[int, int] = {}
        for x in T:
            for y in R.neighbors(x):
                counts[y] = counts.get(y, 0) + 1
        partners = sorted(
            y for (y, c) in counts.items() if c == len(T) and y != v and y not in T
        )
        for v2 in partners:
            for pairing in _pairings(free):
                classes = [[v, v2]] + [list(e) for e in forced] + [list(e) for e in pairing]
                verts = tuple(sorted([v, v2] + T))
                out.append((verts, _canon_classes(classes)))
    return out


def find_kpq_at(g: Graph, v: int, p: int, q: int) -> list[ForbiddenSubgraph]:
    """All K^p_q's of ``g`` containing vertex ``v`` (public, fresh residual).

    Dispatches on shape: q = 1 uses the clique probe, q = 2 the
    matching-complement probe, q >= 3 (including bicliques, p = 2) the
    common-neighborhood pool with forced classes.
    """
    stats = DetectionStats()
    R = _Residual(g, stats)
    found = _find_at(R, v, p, q)
    out = []
    for (verts, classes) in sorted(set(found)):
        kind = _kind_for_shape(p, q)
        out.append(
            ForbiddenSubgraph(kind, verts, classes, _subgraph_weight(g, verts, classes, kind))
        )
    return out


def _kind_for_shape(p: int, q: int) -> str:
    if q == 1:
        return CLIQUE
    if p == 2:
        return BICLIQUE
    return PARTITE


def _find_at(R: _Residual, v: int, p: int, q: int) -> list[tuple]:
    R.stats.local_searches += 1
    if not R.alive[v]:
        return []
    if q == 1:
        return _cliques_at_vertex(R, p - 1, v)
    if q == 2:
        return _partite_q2_at_vertex(R, p, v)
    return _partite_q3_at_vertex(R, p, q, v)


def find_partner(g_or_R, v: int, p: int, q: int):
    """Cheap probe: either certify that v is in no K^p_q, or name a vertex
    with at least max(p-2, 1)*q common neighbors with v.

    Returns None (no subgraph can contain v) or a partner vertex.
    """
    if isinstance(g_or_R, Graph):
        R = _Residual(g_or_R, DetectionStats())
    else:
        R = g_or_R
    R.stats.partner_probes += 1
    need = max(p - 2, 1) * q
    nbrs = R.neighbors(v)
    for u in nbrs[:2]:
        cands = [z for z in R.neighbors(u) if z != v]
        for z in cands[:2]:
            if len(R.common(v, z)) >= need:
                return z
    return None


def _cluster_of(R: _Residual, seed_verts, p: int, q: int) -> list[tuple]:
    """Every K^p_q of the residual graph touching the seed vertex set."""
    out = []
    for x in seed_verts:
        out.extend(_find_at(R, x, p, q))
    return out


def _run_shape(g: Graph, p: int, q: int, stats: DetectionStats):
    """Algorithm sweep for one shape: returns list of (vertices, classes)
    plus the list of intersecting index pairs (into that list)."""
    t = (p - 1) * q
    R = _Residual(g, stats)
    R.strip_low_degree(t)
    found: dict[tuple, int] = {}
    ordered: list[tuple] = []
    pairs: list[tuple[int, int]] = []

    def emit(rec: tuple) -> int:
        if rec not in found:
            found[rec] = len(ordered)
            ordered.append(rec)
        return found[rec]

    queue = [v for v in range(g.n) if R.alive[v]]
    qi = 0
    while qi < len(queue):
        v1 = queue[qi]
        if not R.alive[v1]:
            qi += 1
            continue
        partner = find_partner(R, v1, p, q)
        if partner is None:
            R.remove(v1)
            R.strip_low_degree(t)
            qi += 1
            continue
        v2 = partner
        hits = _find_at(R, v1, p, q) + _find_at(R, v2, p, q)
        if not hits:
            for x in [v1, v2] + R.common(v1, v2):
                R.remove(x)
            R.strip_low_degree(t)
            qi += 1
            continue
        base = hits[0]
        cluster = hits + _cluster_of(R, base[0], p, q)
        ids = sorted({emit(rec) for rec in cluster})
        for i, a in enumerate(ids):
            va = set(ordered[a][0])
            for b in ids[i + 1:]:
                if va & set(ordered[b][0]):
                    pairs.append((a, b))
        for x in base[0]:
            R.remove(x)
        R.strip_low_degree(t)
        qi += 1
        # Survivors of the emitted cluster may host further subgraphs;
        # re-queue them (and the probe pair) for another look.
        repush = {v1, v2}
        for rid in ids:
            repush.update(ordered[rid][0])
        queue.extend(x for x in sorted(repush) if R.alive[x])
    return ordered, pairs


def find_all_forbidden(
    g: Graph, variant
) -> tuple[list[ForbiddenSubgraph], IntersectionRecord, DetectionStats]:
    """Enumerate all forbidden subgraphs of ``g`` for the given variant,
    with a record of every intersecting pair.

    ``variant`` is a :class:`~tmatch.pipeline.Variant`.  Each subgraph is
    reported once (canonical vertex/class key).  The returned stats carry
    the probe-work counter used by the scaling tests.
    """
    stats = DetectionStats()
    records: list[ForbiddenSubgraph] = []
    rec_index: dict[tuple, int] = {}
    inter = IntersectionRecord()

    def add_records(shape_recs, p, q, local_pairs):
        kind = _kind_for_shape(p, q)
        idmap = {}
        for i, (verts, classes) in enumerate(shape_recs):
            key = (kind, verts, classes)
            if key not in rec_index:
                rid = len(records)
                rec_index[key] = rid
                records.append(
                    ForbiddenSubgraph(
                        kind, verts, classes,
                        _subgraph_weight(g, verts, classes, kind), id=rid,
                    )
                )
            idmap[i] = rec_index[key]
        for (a, b) in local_pairs:
            inter.add(idmap[a], idmap[b])

    for (p, q) in variant.shapes(g.t):
        recs, pairs = _run_shape(g, p, q, stats)
        add_records(recs, p, q, pairs)

    # Cross-kind sharing is only possible between a clique and a biclique
    # at t = 3, where the clique's vertex set sits inside the biclique's.
    if variant.is_restricted() and g.t == 3:
        by_vertex: dict[int, list[int]] = {}
        for r in records:
            if r.kind == BICLIQUE:
                for x in r.vertices:
                    by_vertex.setdefault(x, []).append(r.id)
        for r in records:
            if r.kind != CLIQUE:
                continue
            cand = set(by_vertex.get(r.vertices[0], []))
            for x in r.vertices[1:]:
                cand &= set(by_vertex.get(x, []))
            for b in cand:
                inter.add(r.id, b)
    return records, inter, stats


def find_dense(g: Graph, records: list[ForbiddenSubgraph]) -> list[ForbiddenSubgraph]:
    """Group same-vertex-set partite subgraphs (q = 2) into dense clusters.

    Each cluster of two or more K^p_2's on one vertex set becomes a single
    dense record; its core collects the vertices whose whole neighborhood
    stays inside the cluster.  Member records are tagged as absorbed.
    """
    groups: dict[tuple[int, ...], list[int]] = {}
    for r in records:
        if r.kind == PARTITE:
            groups.setdefault(r.vertices, []).append(r.id)
    out = []
    next_id = len(records)
    for verts, ids in sorted(groups.items()):
        if len(ids) < 2:
            continue
        vset = set(verts)
        core = tuple(
            sorted(
                v for v in verts
                if g.degree(v) == g.t + 1 and all(u in vset for u in g.neighbors(v))
            )
        )
        if len(core) < 4 or len(core) % 2 != 0:
            raise InternalError(
                f"dense cluster on {verts} has invalid core {core}"
            )
        weight = 0
        for (a, b) in itertools.combinations(verts, 2):
            eid = g.edge_id(a, b)
            if eid is not None:
                weight += g.weight_doubled(eid)
        rec = ForbiddenSubgraph(
            DENSE, verts, (), weight, id=next_id, core=core, member_ids=tuple(sorted(ids))
        )
        for mid in ids:
            records[mid].in_dense = rec.id
        out.append(rec)
        next_id += 1
    return out


def classify_problematic(
    records: list[ForbiddenSubgraph],
    inter: IntersectionRecord,
) -> None:
    """Mark each non-dense record problematic or not, in place.

    A subgraph is unproblematic when it shares a vertex with a partner of
    the same kind of at least its weight, or (cliques only) with any
    biclique.  Dense clusters are handled separately and their members
    always end up unproblematic via the equal-weight rule.
    """
    nbrs = inter.neighbors(len(records))
    for r in records:
        if r.kind == DENSE:
            continue
        unproblematic = False
        for j in nbrs[r.id]:
            other = records[j]
            if other.kind == r.kind and r.weight <= other.weight:
                unproblematic = True
                break
            if r.kind == CLIQUE and other.kind == BICLIQUE:
                unproblematic = True
                break
        r.problematic = not unproblematic

    problematic = [r for r in records if r.kind != DENSE and r.problematic]
    dense = [r for r in records if r.kind == DENSE]
    taken: dict[int, int] = {}
    for r in problematic + dense:
        if r.kind == PARTITE and r.in_dense >= 0:
            raise InternalError("dense member classified problematic")
        for v in r.vertices:
            if v in taken:
                raise InternalError(
                    f"records {taken[v]} and {r.id} overlap at vertex {v}; "
                    "problematic subgraphs must be disjoint"
                )
            taken[v] = r.id
