"""End-to-end solve: detection, gadgets, matching, recovery.

``solve`` runs the whole chain for one instance and returns a
:class:`~tmatch.recover.SolveResult`.  The weighted track minimizes the
auxiliary matching weight with an exact edge-count tie-break; the
unweighted track (all input weights one) runs the cheaper cardinality
solve, whose optimum coincides with the weighted one through the
cardinality/weight bookkeeping identity.
"""

from __future__ import annotations

from . import detect as _detect
from . import lb as _lb
from . import recover as _recover
from .detect import DENSE, ForbiddenSubgraph
from .errors import InternalError, ValidationError
from .gadgets import build_auxiliary, gadget_stats
from .graph import Graph
from .potentials import PotentialFunction, extract_potential, unit_potentials
from .recover import SolveResult, attach_records
from .variant import Variant

# Guard from the engine contract: lexicographic weights must fit well
# inside 64-bit arithmetic including the expansion's own shifts.
MAX_WEIGHT_PRODUCT_BITS = 63


def validate_instance(g: Graph, variant: Variant) -> None:
    """Degree bound, weight bound and variant parameter checks."""
    variant.validate(g.t)
    w_max = max((w for (_, _, w) in g.edges), default=0)
    # The tie-break transform scales weights by m+1 and the engine shifts
    # them again by a factor of the expanded instance size; keep enough
    # headroom that all dual arithmetic stays inside 63-bit integers.
    if w_max and (
        2 * w_max * (g.m + 2) * (g.m + 2) >= (1 << MAX_WEIGHT_PRODUCT_BITS)
        or 2 * w_max * (g.m + 2) >= (1 << 34)
    ):
        raise ValidationError(
            "edge weights too large: the exact tie-break transform would "
            "overflow 63-bit matching arithmetic"
        )


def is_unweighted(g: Graph) -> bool:
    return all(w == 2 for (_, _, w) in g.edges)


def prepare(g: Graph, variant: Variant):
    """Detection, potential extraction and classification for a solve.

    Returns (records incl. dense, intersections, potentials, stats).
    Raises NotVertexInducedError if the weighted instance fails the
    vertex-induced precondition on any forbidden subgraph.
    """
    records, inter, stats = _detect.find_all_forbidden(g, variant)
    dense = _detect.find_dense(g, records)
    unweighted = is_unweighted(g)

    potentials: dict[int, PotentialFunction] = {}
    for r in records:
        if unweighted:
            potentials[r.id] = unit_potentials(r)
        else:
            potentials[r.id] = extract_potential(g, r)
    for r in dense:
        if unweighted:
            potentials[r.id] = unit_potentials(r)
        else:
            members = [records[i] for i in r.member_ids]
            potentials[r.id] = extract_potential(g, r, members=members)

    all_records = records + dense
    _detect.classify_problematic(all_records, inter)
    return all_records, inter, potentials, stats


def solve(g: Graph, variant: Variant) -> SolveResult:
    """Maximum weight (or size) t-matching avoiding the variant's
    forbidden subgraphs."""
    validate_instance(g, variant)
    records, inter, potentials, det_stats = prepare(g, variant)
    unweighted = is_unweighted(g)

    aux = build_auxiliary(g, records, potentials)
    attach_records(aux, records)

    diagnostics: list[dict] = []
    if unweighted:
        m = _lb.solve_min_cardinality_capped(aux)
        identity = _lb.count_weight_identity(aux, m)
        diagnostics.append({"rule": "cardinality-track", "count_weight_gap": identity})
    else:
        m = _lb.solve_min_weight_lb(aux)

    aux_weight = sum(aux.graph.edges[e].w for e in m.edge_ids)
    cot = _recover.matching_to_cotmatching(aux, m, diagnostics)
    cot = _recover.cover_unproblematic(
        g, cot, records, inter.neighbors(len(records)), diagnostics
    )
    # Both directions of the complement/matching correspondence hold at
    # the optimum, so the recovered complement must land exactly on the
    # auxiliary optimum; anything else is a bug.
    if cot.weight_doubled() != aux_weight:
        raise InternalError(
            "weight sandwich violated: recovered complement weight "
            f"{cot.weight_doubled()} != auxiliary optimum {aux_weight}"
        )

    stats = {
        "n": g.n,
        "m": g.m,
        "t": g.t,
        "variant": variant.describe(),
        "unweighted": unweighted,
        "forbidden": len([r for r in records if r.kind != DENSE]),
        "dense_clusters": len([r for r in records if r.kind == DENSE]),
        "problematic": len(
            [r for r in records if r.kind != DENSE and r.problematic]
        ),
        "aux_matching_weight_doubled": aux_weight,
        "aux_matching_edges": len(m.edge_ids),
        "detect_probe_ops": det_stats.probe_ops,
        "expanded_vertices": m.expanded.hat_vertices,
    }
    stats.update(gadget_stats(aux))
    return _recover.finalize(g, cot, records, diagnostics, stats)


def forbidden_records(g: Graph, variant: Variant) -> list[ForbiddenSubgraph]:
    """Detection + classification only (for the CLI's detect command)."""
    records, _, _, _ = prepare(g, variant)
    return records
