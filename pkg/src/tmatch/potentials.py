"""Vertex potentials witnessing vertex-induced weights.

A weight function is vertex-induced on a subgraph H when each vertex can
be given a potential so that every edge of H weighs exactly the sum of its
endpoint potentials.  All arithmetic here is in doubled units: doubled
edge weights make the (otherwise half-integral) potentials plain integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detect import BICLIQUE, CLIQUE, DENSE, PARTITE, ForbiddenSubgraph
from .errors import InternalError, NotVertexInducedError
from .graph import Graph


@dataclass(frozen=True)
class PotentialFunction:
    """Per-vertex potentials of one subgraph, in doubled units."""

    assignments: dict[int, int]

    def value(self, v: int) -> int:
        return self.assignments[v]


def triangle_potential(w_ab: int, w_ac: int, w_bc: int) -> tuple[int, int, int]:
    """The unique potentials of a weighted triangle (doubled units).

    Inputs are doubled edge weights, so the half sums below stay integral.
    """
    sa = (w_ab + w_ac - w_bc)
    sb = (w_ab + w_bc - w_ac)
    sc = (w_ac + w_bc - w_ab)
    if sa % 2 or sb % 2 or sc % 2:
        raise InternalError("doubled triangle weights must have even potential sums")
    return sa // 2, sb // 2, sc // 2


def _wd(g: Graph, u: int, v: int) -> int:
    eid = g.edge_id(u, v)
    if eid is None:
        raise InternalError(f"expected edge ({u},{v}) inside a forbidden subgraph")
    return g.weight_doubled(eid)


def verify_vertex_induced(g: Graph, h: ForbiddenSubgraph, pf: PotentialFunction) -> bool:
    """True iff pf(u) + pf(v) equals the doubled weight on every edge of h."""
    if h.kind == DENSE:
        pairs = [
            (u, v)
            for i, u in enumerate(h.vertices)
            for v in h.vertices[i + 1:]
            if g.has_edge(u, v)
        ]
    else:
        pairs = h.edge_pairs()
    for (u, v) in pairs:
        if pf.value(u) + pf.value(v) != _wd(g, u, v):
            return False
    return True


def _extract_clique(g: Graph, verts: tuple[int, ...]) -> dict[int, int]:
    a, b, c = verts[0], verts[1], verts[2]
    ra, _, _ = triangle_potential(_wd(g, a, b), _wd(g, a, c), _wd(g, b, c))
    out = {a: ra}
    for x in verts[1:]:
        out[x] = _wd(g, a, x) - ra
    return out


def _extract_biclique(g: Graph, classes) -> dict[int, int]:
    (c1, c2) = classes
    a1, b1 = c1[0], c2[0]
    # The free shift: anchor the first vertex of the first class at half
    # the weight of its first class-crossing edge.
    w0 = _wd(g, a1, b1)
    if w0 % 2:
        raise InternalError("doubled weights should be even")
    out = {a1: w0 // 2}
    for b in c2:
        out[b] = _wd(g, a1, b) - out[a1]
    for a in c1[1:]:
        out[a] = _wd(g, a, b1) - out[b1]
    return out


def _extract_partite(g: Graph, classes) -> dict[int, int]:
    # With three or more classes, three mutually adjacent representatives
    # pin the potentials exactly as in a clique.
    a, b, c = classes[0][0], classes[1][0], classes[2][0]
    ra, _, _ = triangle_potential(_wd(g, a, b), _wd(g, a, c), _wd(g, b, c))
    out = {a: ra}
    for ci in classes[1:]:
        for x in ci:
            out[x] = _wd(g, a, x) - ra
    for x in classes[0][1:]:
        out[x] = _wd(g, x, b) - out[b]
    return out


def extract_potential(
    g: Graph,
    h: ForbiddenSubgraph,
    *,
    members: list[ForbiddenSubgraph] | None = None,
) -> PotentialFunction:
    """Extract a potential function of ``h`` from the edge weights.

    For dense clusters the potentials are read off any absorbed member
    (pass it via ``members``) and then validated against every induced
    edge of the cluster.  Raises NotVertexInducedError when the weights do
    not admit potentials on ``h``.
    """
    if h.kind == CLIQUE:
        asg = _extract_clique(g, h.vertices)
    elif h.kind == BICLIQUE:
        asg = _extract_biclique(g, h.classes)
    elif h.kind == PARTITE:
        asg = _extract_partite(g, h.classes)
    elif h.kind == DENSE:
        if not members:
            raise InternalError("dense extraction needs a member subgraph")
        asg = _extract_partite(g, members[0].classes)
    else:
        raise InternalError(f"unknown subgraph kind {h.kind}")
    pf = PotentialFunction(asg)
    if not verify_vertex_induced(g, h, pf):
        raise NotVertexInducedError(
            f"weights are not vertex-induced on {h.kind} {h.vertices}", h.id
        )
    return pf


def unit_potentials(h: ForbiddenSubgraph) -> PotentialFunction:
    """Potentials for the unweighted mode: one half per vertex (doubled: 1)."""
    return PotentialFunction({v: 1 for v in h.vertices})
