import pytest

from tmatch.detect import DENSE, find_all_forbidden, find_dense, classify_problematic
from tmatch.gadgets import build_auxiliary, gadget_stats
from tmatch.generators import plant_forbidden, reweighted
from tmatch.graph import Graph, HALF_EDGE, ORIGINAL
from tmatch.pipeline import prepare
from tmatch.variant import Variant

from .conftest import complete_bipartite, complete_graph


def build(g, variant):
    records, inter, potentials, _ = prepare(g, variant)
    return build_auxiliary(g, records, potentials), records


def test_clique_gadget_shape(k4):
    aux, _ = build(k4, Variant.restricted())
    assert aux.graph.n == 5
    hub = 4
    assert aux.capacities.lower[hub] == aux.capacities.upper[hub] == 2
    halves = [e for e in aux.graph.edges if e.tag[0] == HALF_EDGE]
    assert len(halves) == 4
    assert all(e.w == 1 for e in halves)  # doubled half-integral potential
    # every vertex of a plain 4-clique has degree t, not t+1, so it keeps
    # the slack interval [0, degree]
    for v in range(4):
        assert (aux.capacities.lower[v], aux.capacities.upper[v]) == (0, 3)


def test_full_degree_vertices_get_unit_lower_bound():
    g = plant_forbidden(complete_graph(4, 3), "clique", 0, 1)
    # attach a pendant to vertex 0 so its degree reaches t+1
    edges = [(u, v, 1) for (u, v, _) in g.edges] + [(0, 4, 1)]
    g = Graph(5, edges, 3)
    aux, _ = build(g, Variant.restricted())
    assert (aux.capacities.lower[0], aux.capacities.upper[0]) == (1, 4)
    assert (aux.capacities.lower[1], aux.capacities.upper[1]) == (0, 3)


def test_biclique_gadget_shape(k33):
    aux, _ = build(k33, Variant.restricted())
    assert aux.graph.n == 8
    for hub in (6, 7):
        assert aux.capacities.lower[hub] == aux.capacities.upper[hub] == 1
    halves = [e for e in aux.graph.edges if e.tag[0] == HALF_EDGE]
    assert len(halves) == 6
    sides = {hub: set() for hub in (6, 7)}
    for e in halves:
        hub = e.u if e.u >= 6 else e.v
        v = e.v if e.u >= 6 else e.u
        sides[hub].add(v)
    assert sorted(map(sorted, sides.values())) == [[0, 1, 2], [3, 4, 5]]


def test_dense_gadget_k6_degenerate_collector():
    g = complete_graph(6, 4)
    aux, records = build(g, Variant.kpq(3, 2))
    info = aux.gadgets[0]
    assert info.kind == DENSE
    assert info.hubs == []  # whole vertex set is the core
    col = info.collector
    assert aux.capacities.lower[col] == aux.capacities.upper[col] == 0
    hub = info.center_hub
    assert aux.capacities.lower[hub] == aux.capacities.upper[hub] == 2
    # two parallel half-edges at the center, two parallel collector links
    center_halves = [
        e for e in aux.graph.edges if e.tag[0] == HALF_EDGE and hub in (e.u, e.v)
    ]
    assert len(center_halves) == 2
    assert {e.u for e in center_halves} | {e.v for e in center_halves} == {hub, info.center}


def test_partite_gadget_collector_capacity():
    g = plant_forbidden(Graph(0, [], 6), "partite", 1, 2, p=3, q=3)
    aux, _ = build(g, Variant.kpq(3, 3))
    info = aux.gadgets[0]
    col = info.collector
    assert aux.capacities.lower[col] == aux.capacities.upper[col] == 1  # p-2
    assert len(info.hubs) == 3
    for hub in info.hubs:
        assert aux.capacities.lower[hub] == aux.capacities.upper[hub] == 1


def test_no_gadgets_for_unproblematic():
    g = complete_graph(5, 3)  # all five cliques unproblematic
    aux, records = build(g, Variant.restricted())
    assert aux.gadgets == []
    assert gadget_stats(aux)["added_vertices"] == 0


def test_negative_center_dense_skipped():
    g0 = plant_forbidden(Graph(0, [], 4), "dense", 1, 3, p=3, q=2)
    # potentials: one vertex at -1, the rest large
    base = [3] * g0.n
    base[0] = -1
    weights = []
    for (u, v, _) in g0.edges:
        weights.append(base[u] + base[v])
    g = reweighted(g0, weights)
    aux, records = build(g, Variant.kpq(3, 2))
    assert aux.gadgets == []
    assert len(aux.skipped_dense) == 1
    (_, center) = aux.skipped_dense[0]
    assert center == 0


def test_stats_additivity():
    g1 = plant_forbidden(Graph(0, [], 3), "clique", 1, 1)
    g2 = plant_forbidden(Graph(0, [], 3), "clique", 2, 1)
    aux1, _ = build(g1, Variant.restricted())
    aux2, _ = build(g2, Variant.restricted())
    s1, s2 = gadget_stats(aux1), gadget_stats(aux2)
    assert s1["added_vertices"] == 1 and s1["added_edges"] == 4
    assert s2["added_vertices"] == 2 and s2["added_edges"] == 8


def test_half_edge_pairs_reproduce_edge_weights():
    g0 = plant_forbidden(Graph(0, [], 3), "clique", 1, 4)
    from tmatch.generators import vertex_induced_weights

    records, _, _ = find_all_forbidden(g0, Variant.restricted())
    w = vertex_induced_weights(g0, records, (0, 5), (0, 5), 9)
    g = reweighted(g0, w)
    aux, records = build(g, Variant.restricted())
    info = aux.gadgets[0]
    halves = {}
    for hub, pairs in info.half_edges.items():
        for (eid, v) in pairs:
            halves[v] = aux.graph.edges[eid].w
    rec = [r for r in records if r.id == info.subgraph_id][0]
    for (u, v) in rec.edge_pairs():
        eid = g.edge_id(u, v)
        assert halves[u] + halves[v] == g.weight_doubled(eid)
