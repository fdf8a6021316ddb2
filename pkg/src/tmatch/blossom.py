"""Maximum weight matching engine for general graphs.

The core is a dense O(n^3) implementation of the primal-dual blossom
method, operating on integer weights with exact arithmetic throughout.
It keeps one dual value per vertex and per (possibly nested) blossom, so
every solve can emit a complementary-slackness certificate that is checked
independently of the search itself.

The hot loop is written against flat numpy arrays; when numba is
available it is JIT-compiled (cached on disk), otherwise the same code
runs as plain Python.

Node indexing inside the core is 1-based: nodes 1..n are vertices,
slots n+1..2n hold blossoms.  A weight of 0 in the matrix means
"no edge"; callers shift weights to be strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, InstanceTooLargeError, InternalError

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


_INF = np.int64(1) << np.int64(62)

# Hard gate for the dense matrix representation; past this point the
# quadratic matrices and cubic runtime are no longer reasonable.
MAX_DENSE_VERTICES = 2500


@njit(cache=True)
def _solve_dense(n, gw, gu, gv):  # pragma: no cover - numba-compiled
    """Maximum weight matching on a dense weight matrix.

    gw/gu/gv are (2n+1) x (2n+1) matrices: gw[x][y] is the weight of the
    best known real edge between components x and y (0 = none), and
    gu/gv record that edge's real endpoints on the x and y side.

    Returns (match, lab, st, flower, flower_len, n_x): the matched real
    partner per vertex (0 = unmatched), final dual values, top-component
    pointers and the surviving blossom structure.
    """
    nmax = 2 * n + 1
    lab = np.zeros(nmax, dtype=np.int64)
    match = np.zeros(nmax, dtype=np.int64)
    slack = np.zeros(nmax, dtype=np.int64)
    st = np.zeros(nmax, dtype=np.int64)
    pa = np.zeros(nmax, dtype=np.int64)
    S = np.full(nmax, -1, dtype=np.int64)
    vis = np.zeros(nmax, dtype=np.int64)
    flower = np.zeros((nmax, n + 2), dtype=np.int32)
    flower_len = np.zeros(nmax, dtype=np.int64)
    flower_from = np.zeros((nmax, n + 1), dtype=np.int32)
    queue = np.zeros(8 * n + 16, dtype=np.int64)
    stack = np.zeros(2 * n + 16, dtype=np.int64)
    mstack = np.zeros((4 * n + 16, 2), dtype=np.int64)
    buf = np.zeros(n + 2, dtype=np.int64)
    # ctr[0]: queue head, ctr[1]: queue tail, ctr[2]: lca timestamp,
    # ctr[3]: highest node slot in use (n_x).
    ctr = np.zeros(4, dtype=np.int64)
    ctr[3] = n

    w_max = np.int64(0)
    for u in range(1, n + 1):
        st[u] = u
        flower_from[u][u] = u
        for v in range(1, n + 1):
            if gw[u][v] > w_max:
                w_max = gw[u][v]
    for u in range(1, n + 1):
        lab[u] = w_max

    def slot_delta(x, y):
        # Slack of the representative real edge stored at slot (x, y).
        return lab[gu[x][y]] + lab[gv[x][y]] - 2 * gw[gu[x][y]][gv[x][y]]

    def update_slack(u, x):
        if slack[x] == 0 or slot_delta(u, x) < slot_delta(slack[x], x):
            slack[x] = u

    def set_slack(x):
        slack[x] = 0
        for u in range(1, n + 1):
            if gw[u][x] > 0 and st[u] != x and S[st[u]] == 0:
                update_slack(u, x)

    def q_push(x0):
        top = 0
        stack[top] = x0
        top += 1
        while top > 0:
            top -= 1
            x = stack[top]
            if x <= n:
                queue[ctr[1]] = x
                ctr[1] += 1
            else:
                for i in range(flower_len[x]):
                    stack[top] = flower[x][i]
                    top += 1

    def set_st(x0, b):
        top = 0
        stack[top] = x0
        top += 1
        while top > 0:
            top -= 1
            x = stack[top]
            st[x] = b
            if x > n:
                for i in range(flower_len[x]):
                    stack[top] = flower[x][i]
                    top += 1

    def get_pr(b, xr):
        pr = 0
        for i in range(flower_len[b]):
            if flower[b][i] == xr:
                pr = i
                break
        if pr % 2 == 1:
            # Walk the odd cycle the other way so xr lands on an even position.
            ln = flower_len[b]
            for i in range(1, ln):
                buf[i] = flower[b][ln - i]
            for i in range(1, ln):
                flower[b][i] = buf[i]
            pr = ln - pr
        return pr

    def set_match(u0, v0):
        top = 0
        mstack[top][0] = u0
        mstack[top][1] = v0
        top += 1
        while top > 0:
            top -= 1
            u = mstack[top][0]
            v = mstack[top][1]
            match[u] = gv[u][v]
            if u > n:
                eu = gu[u][v]
                xr = flower_from[u][eu]
                pr = get_pr(u, xr)
                for i in range(pr):
                    mstack[top][0] = flower[u][i]
                    mstack[top][1] = flower[u][i ^ 1]
                    top += 1
                mstack[top][0] = xr
                mstack[top][1] = v
                top += 1
                # Rotate so xr becomes the base of the blossom.
                ln = flower_len[u]
                for i in range(ln):
                    buf[i] = flower[u][(i + pr) % ln]
                for i in range(ln):
                    flower[u][i] = buf[i]

    def augment(u0, v0):
        u = u0
        v = v0
        while True:
            xnv = st[match[u]]
            set_match(u, v)
            if xnv == 0:
                return
            set_match(xnv, st[pa[xnv]])
            u = st[pa[xnv]]
            v = xnv

    def get_lca(u0, v0):
        ctr[2] += 1
        u = u0
        v = v0
        while u != 0 or v != 0:
            if u != 0:
                if vis[u] == ctr[2]:
                    return u
                vis[u] = ctr[2]
                u = st[match[u]]
                if u != 0:
                    u = st[pa[u]]
            t = u
            u = v
            v = t
        return 0

    def add_blossom(u, lca, v):
        b = n + 1
        while b <= ctr[3] and st[b] != 0:
            b += 1
        if b > ctr[3]:
            ctr[3] += 1
        lab[b] = 0
        S[b] = 0
        match[b] = match[lca]
        flower[b][0] = lca
        flower_len[b] = 1
        x = u
        while x != lca:
            flower[b][flower_len[b]] = x
            flower_len[b] += 1
            y = st[match[x]]
            flower[b][flower_len[b]] = y
            flower_len[b] += 1
            q_push(y)
            x = st[pa[y]]
        ln = flower_len[b]
        for i in range(1, ln):
            buf[i] = flower[b][ln - i]
        for i in range(1, ln):
            flower[b][i] = buf[i]
        x = v
        while x != lca:
            flower[b][flower_len[b]] = x
            flower_len[b] += 1
            y = st[match[x]]
            flower[b][flower_len[b]] = y
            flower_len[b] += 1
            q_push(y)
            x = st[pa[y]]
        set_st(b, b)
        n_x = ctr[3]
        for x in range(1, n_x + 1):
            gw[b][x] = 0
            gw[x][b] = 0
        for x in range(1, n + 1):
            flower_from[b][x] = 0
        for i in range(flower_len[b]):
            xs = flower[b][i]
            for x in range(1, n_x + 1):
                if gw[xs][x] > 0 and (gw[b][x] == 0 or slot_delta(xs, x) < slot_delta(b, x)):
                    gw[b][x] = gw[xs][x]
                    gu[b][x] = gu[xs][x]
                    gv[b][x] = gv[xs][x]
                    gw[x][b] = gw[x][xs]
                    gu[x][b] = gu[x][xs]
                    gv[x][b] = gv[x][xs]
            for x in range(1, n + 1):
                if flower_from[xs][x] != 0:
                    flower_from[b][x] = xs
        set_slack(b)

    def expand_blossom(b):
        for i in range(flower_len[b]):
            set_st(flower[b][i], flower[b][i])
        xr = flower_from[b][gu[b][pa[b]]]
        pr = get_pr(b, xr)
        i = 0
        while i < pr:
            xs = flower[b][i]
            xns = flower[b][i + 1]
            pa[xs] = gu[xns][xs]
            S[xs] = 1
            S[xns] = 0
            slack[xs] = 0
            set_slack(xns)
            q_push(xns)
            i += 2
        S[xr] = 1
        pa[xr] = pa[b]
        for i in range(pr + 1, flower_len[b]):
            xs = flower[b][i]
            S[xs] = -1
            set_slack(xs)
        st[b] = 0

    def on_found_edge(ru, rv):
        # (ru, rv) is a tight real edge; returns True after an augmentation.
        u = st[ru]
        v = st[rv]
        if S[v] == -1:
            pa[v] = ru
            S[v] = 1
            nu = st[match[v]]
            slack[v] = 0
            slack[nu] = 0
            S[nu] = 0
            q_push(nu)
        elif S[v] == 0:
            lca = get_lca(u, v)
            if lca == 0:
                augment(u, v)
                augment(v, u)
                return True
            add_blossom(u, lca, v)
        return False

    def matching():
        n_x = ctr[3]
        for x in range(1, n_x + 1):
            S[x] = -1
            slack[x] = 0
        ctr[0] = 0
        ctr[1] = 0
        for x in range(1, n_x + 1):
            if st[x] == x and match[x] == 0:
                pa[x] = 0
                S[x] = 0
                q_push(x)
        if ctr[0] == ctr[1]:
            return False
        while True:
            while ctr[0] < ctr[1]:
                u = queue[ctr[0]]
                ctr[0] += 1
                if S[st[u]] == 1:
                    continue
                for v in range(1, n + 1):
                    if gw[u][v] > 0 and st[u] != st[v]:
                        if lab[u] + lab[v] - 2 * gw[u][v] == 0:
                            if on_found_edge(u, v):
                                return True
                        else:
                            update_slack(u, st[v])
            n_x = ctr[3]
            d = _INF
            for b in range(n + 1, n_x + 1):
                if st[b] == b and S[b] == 1 and lab[b] // 2 < d:
                    d = lab[b] // 2
            for x in range(1, n_x + 1):
                if st[x] == x and slack[x] != 0:
                    if S[x] == -1:
                        if slot_delta(slack[x], x) < d:
                            d = slot_delta(slack[x], x)
                    elif S[x] == 0:
                        if slot_delta(slack[x], x) // 2 < d:
                            d = slot_delta(slack[x], x) // 2
            for x in range(1, n + 1):
                if S[st[x]] == 0:
                    if lab[x] <= d:
                        return False
                    lab[x] -= d
                elif S[st[x]] == 1:
                    lab[x] += d
            for b in range(n + 1, n_x + 1):
                if st[b] == b:
                    if S[b] == 0:
                        lab[b] += 2 * d
                    elif S[b] == 1:
                        lab[b] -= 2 * d
            ctr[0] = 0
            ctr[1] = 0
            for x in range(1, n_x + 1):
                if (st[x] == x and slack[x] != 0 and st[slack[x]] != x
                        and slot_delta(slack[x], x) == 0):
                    if on_found_edge(gu[slack[x]][x], gv[slack[x]][x]):
                        return True
            for b in range(n + 1, n_x + 1):
                if st[b] == b and S[b] == 1 and lab[b] == 0:
                    expand_blossom(b)
        return False

    while matching():
        pass
    return match, lab, st, flower, flower_len, ctr[3]


@dataclass
class MatchingCertificate:
    """Dual certificate of optimality for a maximum weight matching.

    ``vertex_dual`` holds 2*y(v) in shifted-weight units; ``blossoms`` is a
    list of (member_vertices, 2*z) pairs for every blossom with positive
    dual.  ``shift`` is the constant added to every edge weight before the
    solve (used to force maximum cardinality)."""

    vertex_dual: list[int]
    blossoms: list[tuple[list[int], int]]
    shift: int


def verify_optimum(
    n: int,
    edges: list[tuple[int, int, int]],
    mate: list[int],
    cert: MatchingCertificate,
) -> None:
    """Check complementary slackness of a matching against its certificate.

    ``mate[v]`` is the matched partner of v or -1.  Edge weights here are
    the ORIGINAL (unshifted) weights; the certificate's shift is re-applied
    so the dual inequalities are checked exactly as solved.

    Raises InternalError if any condition fails.
    """
    y = cert.vertex_dual
    in_blossom: list[list[int]] = [[] for _ in range(n)]
    for bi, (members, zb) in enumerate(cert.blossoms):
        if zb < 0:
            raise InternalError("negative blossom dual")
        if len(members) % 2 != 1 or len(members) < 3:
            raise InternalError("blossom with even or trivial vertex set")
        for v in members:
            in_blossom[v].append(bi)
    # Only the best parallel edge constrains the dual; group by vertex pair.
    best: dict[tuple[int, int], int] = {}
    for (u, v, w) in edges:
        key = (min(u, v), max(u, v))
        if key not in best or w > best[key]:
            best[key] = w
    nmatched_in = [0] * len(cert.blossoms)
    for (u, v), w in best.items():
        shared = set(in_blossom[u]) & set(in_blossom[v])
        slack = y[u] + y[v] - 2 * (w + cert.shift)
        slack += sum(cert.blossoms[b][1] for b in shared)
        if slack < 0:
            raise InternalError(f"edge ({u},{v}) has negative dual slack {slack}")
        if mate[u] == v:
            if slack != 0:
                raise InternalError(f"matched edge ({u},{v}) is not tight (slack {slack})")
            for b in shared:
                nmatched_in[b] += 1
    for bi, (members, zb) in enumerate(cert.blossoms):
        if zb > 0 and 2 * nmatched_in[bi] + 1 != len(members):
            raise InternalError("blossom with positive dual is not near-perfectly matched")


def _collect_blossoms(n, lab, st, flower, flower_len, n_x):
    """Flatten surviving blossoms into (member_vertices, dual) pairs."""
    out = []
    tops = [b for b in range(n + 1, n_x + 1) if st[b] == b]
    seen: set[int] = set()

    def members_of(b: int) -> list[int]:
        verts = []
        work = [b]
        while work:
            x = work.pop()
            if x <= n:
                verts.append(x - 1)
            else:
                work.extend(int(flower[x][i]) for i in range(flower_len[x]))
        return verts

    work = list(tops)
    while work:
        b = work.pop()
        if b in seen or b <= n:
            continue
        seen.add(b)
        if lab[b] > 0:
            out.append((sorted(members_of(b)), int(lab[b])))
        work.extend(int(flower[b][i]) for i in range(flower_len[b]))
    return out


def maximum_weight_perfect_matching(
    n: int,
    edges: list[tuple[int, int, int]],
    *,
    verify: bool = True,
) -> tuple[list[int], int, MatchingCertificate]:
    """Maximum weight perfect matching of a general graph.

    ``edges`` are (u, v, w) with integer weights of any sign; parallel
    edges are allowed (only a maximum-weight representative of each pair
    can ever be used).  Vertices are 0-based.

    Returns (mate, total_weight, certificate) where mate[v] is the partner
    of v.  Raises InfeasibleError if the graph has no perfect matching and
    InstanceTooLargeError above the dense-matrix gate.
    """
    if n % 2 != 0:
        raise InfeasibleError("odd number of vertices; no perfect matching exists")
    if n == 0:
        return [], 0, MatchingCertificate([], [], 0)
    if n > MAX_DENSE_VERTICES:
        raise InstanceTooLargeError(
            f"dense matching engine gated at {MAX_DENSE_VERTICES} vertices, got {n}"
        )

    w_abs_max = max((abs(w) for (_, _, w) in edges), default=0)
    # Shift weights so every real edge is strictly positive and one extra
    # matched edge always beats any redistribution of weight: this makes
    # the maximum weight matching a maximum cardinality one.
    shift = (n + 1) * (w_abs_max + 1) + 1
    guard = (shift + w_abs_max + 1) * (n + 2) * 4
    if guard >= (1 << 62):
        raise InstanceTooLargeError("edge weights too large for 64-bit dual arithmetic")

    nmax = 2 * n + 1
    gw = np.zeros((nmax, nmax), dtype=np.int64)
    gu = np.zeros((nmax, nmax), dtype=np.int32)
    gv = np.zeros((nmax, nmax), dtype=np.int32)
    best_eid: dict[tuple[int, int], int] = {}
    for eid, (u, v, w) in enumerate(edges):
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise InternalError(f"bad engine edge ({u},{v})")
        ws = w + shift
        a, b = u + 1, v + 1
        if ws > gw[a][b]:
            gw[a][b] = gw[b][a] = ws
            gu[a][b] = a
            gv[a][b] = b
            gu[b][a] = b
            gv[b][a] = a
            best_eid[(min(u, v), max(u, v))] = eid

    match, lab, st, flower, flower_len, n_x = _solve_dense(n, gw, gu, gv)

    mate = [-1] * n
    for u in range(1, n + 1):
        if match[u] != 0:
            mate[u - 1] = int(match[u]) - 1
    if any(m < 0 for m in mate):
        raise InfeasibleError("graph has no perfect matching")

    total = 0
    for v in range(n):
        if mate[v] > v:
            key = (v, mate[v])
            if key not in best_eid:
                raise InternalError("matched pair without a real edge")
            total += edges[best_eid[key]][2]

    cert = MatchingCertificate(
        vertex_dual=[int(lab[v + 1]) for v in range(n)],
        blossoms=_collect_blossoms(n, lab, st, flower, flower_len, int(n_x)),
        shift=shift,
    )
    if verify:
        verify_optimum(n, edges, mate, cert)
    return mate, total, cert


def matched_edge_ids(
    edges: list[tuple[int, int, int]], mate: list[int]
) -> list[int]:
    """Edge ids realizing a mate array, preferring maximum weight then lowest id."""
    best: dict[tuple[int, int], int] = {}
    for eid, (u, v, w) in enumerate(edges):
        key = (min(u, v), max(u, v))
        if key not in best or w > edges[best[key]][2]:
            best[key] = eid
    out = []
    for v, m in enumerate(mate):
        if m > v:
            out.append(best[(v, m)])
    return out
