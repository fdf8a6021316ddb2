import itertools
import random

import pytest

from tmatch.blossom import (
    MatchingCertificate,
    matched_edge_ids,
    maximum_weight_perfect_matching,
    verify_optimum,
)
from tmatch.errors import InfeasibleError, InternalError


def brute_force_perfect(n, edges):
    best = {}
    for (u, v, w) in edges:
        key = (min(u, v), max(u, v))
        if key not in best or w > best[key]:
            best[key] = w

    out = [None]

    def rec(rem, tot):
        if not rem:
            if out[0] is None or tot > out[0]:
                out[0] = tot
            return
        v = min(rem)
        for u in rem:
            if u != v and (v, u) in best:
                rec(rem - {v, u}, tot + best[(v, u)])

    rec(frozenset(range(n)), 0)
    return out[0]


def test_four_cycle():
    edges = [(0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 2)]
    mate, w, _ = maximum_weight_perfect_matching(4, edges)
    assert w == 4  # takes the two weight-2 edges... or 1+... max is 2+2
    assert sorted(matched_edge_ids(edges, mate)) in ([1, 3], [0, 2])
    assert w == brute_force_perfect(4, edges)


def test_triangle_infeasible():
    with pytest.raises(InfeasibleError):
        maximum_weight_perfect_matching(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def test_k4_weighted():
    edges = [(0, 1, 5), (2, 3, 5), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)]
    _, w, _ = maximum_weight_perfect_matching(4, edges)
    assert w == 10


def test_disconnected_infeasible():
    # Two components of odd size each.
    edges = [(0, 1, 1), (1, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1), (0, 2, 1)]
    # both components have 3 vertices: no perfect matching
    with pytest.raises(InfeasibleError):
        maximum_weight_perfect_matching(6, edges)


def test_parallel_edges_use_best():
    edges = [(0, 1, 2), (0, 1, 7), (0, 1, -3)]
    mate, w, _ = maximum_weight_perfect_matching(2, edges)
    assert w == 7
    assert matched_edge_ids(edges, mate) == [1]


def test_negative_weights_forced():
    edges = [(0, 1, -5), (2, 3, -9), (0, 2, -20), (1, 3, -20)]
    _, w, _ = maximum_weight_perfect_matching(4, edges)
    assert w == -14


def test_randomized_against_bruteforce():
    rng = random.Random(4242)
    for _ in range(300):
        n = rng.choice([2, 4, 6, 8, 10])
        edges = []
        for (u, v) in itertools.combinations(range(n), 2):
            if rng.random() < rng.uniform(0.25, 0.95):
                edges.append((u, v, rng.randint(-25, 25)))
        want = brute_force_perfect(n, edges)
        try:
            _, got, _ = maximum_weight_perfect_matching(n, edges)
        except InfeasibleError:
            got = None
        assert got == want


def test_certificate_rejects_tampering():
    edges = [(0, 1, 3), (1, 2, 4), (2, 3, 3), (0, 3, 4), (0, 2, 10)]
    mate, w, cert = maximum_weight_perfect_matching(4, edges)
    bad = MatchingCertificate(
        vertex_dual=[d + 1 for d in cert.vertex_dual],
        blossoms=cert.blossoms,
        shift=cert.shift,
    )
    with pytest.raises(InternalError):
        verify_optimum(4, edges, mate, bad)


def test_blossom_heavy_structure():
    # Two triangles joined by a bridge force blossom handling.
    edges = [
        (0, 1, 6), (1, 2, 6), (0, 2, 6),
        (3, 4, 6), (4, 5, 6), (3, 5, 6),
        (2, 3, 1),
    ]
    _, w, _ = maximum_weight_perfect_matching(6, edges)
    assert w == brute_force_perfect(6, edges) == 13
