"""Bitmask kernels for the hot loops.

Every kernel works on ``int64`` numpy arrays of edge masks (bit ``v`` set when
vertex ``v`` belongs to the edge) and is compiled with numba unless
``POLYCOLOR_DISABLE_NUMBA`` is set, in which case the identical source runs as
plain Python.
"""
import numpy as np

from ._jit import jit


@jit
def popcount(x, n):
    c = 0
    for v in range(n):
        c += (x >> v) & 1
    return c


@jit
def poly_colorable(n, k, edges, colors):
    """Backtracking search for a polychromatic k-coloring.

    Vertices of positive degree are assigned in order of decreasing degree
    (ties by index); colors are tried in increasing order and a new color is
    opened only after all smaller ones are in use, so the first solution found
    is the lexicographically least one under that order. ``colors`` receives
    the witness (isolated vertices get color 0).

    Pruning: an edge with fewer unassigned vertices than missing colors is
    dead.
    """
    ne = edges.shape[0]
    for v in range(n):
        colors[v] = 0
    if ne == 0:
        return True
    size = np.empty(ne, np.int64)
    for j in range(ne):
        size[j] = popcount(edges[j], n)
        if size[j] < k:
            return False
    if k == 1:
        return True

    deg = np.zeros(n, np.int64)
    for j in range(ne):
        e = edges[j]
        for v in range(n):
            if (e >> v) & 1:
                deg[v] += 1
    order = np.empty(n, np.int64)
    nv = 0
    for v in range(n):
        if deg[v] > 0:
            order[nv] = v
            nv += 1
    for i in range(1, nv):
        x = order[i]
        j = i - 1
        while j >= 0 and deg[order[j]] < deg[x]:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = x

    start = np.zeros(n + 1, np.int64)
    for v in range(n):
        start[v + 1] = start[v] + deg[v]
    inc = np.empty(start[n], np.int64)
    fill = start[:n].copy()
    for j in range(ne):
        e = edges[j]
        for v in range(n):
            if (e >> v) & 1:
                inc[fill[v]] = j
                fill[v] += 1

    unassigned = size.copy()
    count = np.zeros((ne, k), np.int64)
    missing = np.full(ne, k, np.int64)
    cur = np.full(nv + 1, -1, np.int64)
    used = np.zeros(nv + 1, np.int64)

    depth = 0
    while depth < nv:
        if depth < 0:
            return False
        v = order[depth]
        c = cur[depth]
        if c >= 0:
            for p in range(start[v], start[v + 1]):
                j = inc[p]
                count[j, c] -= 1
                if count[j, c] == 0:
                    missing[j] += 1
                unassigned[j] += 1
        c += 1
        lim = used[depth]
        if lim > k - 1:
            lim = k - 1
        placed = False
        while c <= lim:
            ok = True
            for p in range(start[v], start[v + 1]):
                j = inc[p]
                unassigned[j] -= 1
                if count[j, c] == 0:
                    missing[j] -= 1
                count[j, c] += 1
                if unassigned[j] < missing[j]:
                    ok = False
            if ok:
                placed = True
                break
            for p in range(start[v], start[v + 1]):
                j = inc[p]
                count[j, c] -= 1
                if count[j, c] == 0:
                    missing[j] += 1
                unassigned[j] += 1
            c += 1
        if placed:
            cur[depth] = c
            nu = used[depth]
            if c + 1 > nu:
                nu = c + 1
            depth += 1
            used[depth] = nu
            cur[depth] = -1
        else:
            cur[depth] = -1
            depth -= 1
    for i in range(nv):
        colors[order[i]] = cur[i]
    return True


@jit
def first_failing_restriction(n, k, m, edges, x_start):
    """Least X >= x_start whose m-heavy trace is not k-colorable, else -1.

    Works in the original vertex numbering; vertices outside X are isolated
    in the restriction and do not affect colorability.
    """
    ne = edges.shape[0]
    buf = np.empty(ne, np.int64)
    colors = np.empty(n, np.int64)
    for x in range(x_start, 1 << n):
        if popcount(x, n) < m:
            continue
        cnt = 0
        for j in range(ne):
            t = edges[j] & x
            if popcount(t, n) >= m:
                buf[cnt] = t
                cnt += 1
        if cnt == 0:
            continue
        if not poly_colorable(n, k, buf[:cnt], colors):
            return x
    return -1


@jit
def misses_all_pairs(n, edges):
    ne = edges.shape[0]
    for a in range(n):
        for b in range(a + 1, n):
            pm = (1 << a) | (1 << b)
            hit = True
            for j in range(ne):
                if edges[j] & pm == 0:
                    hit = False
                    break
            if hit:
                return False
    return True


@jit
def has_two_disjoint_unmissed_pairs(n, edges):
    """True if two vertex-disjoint pairs are each met by every edge."""
    ne = edges.shape[0]
    pairs = np.empty(n * n, np.int64)
    npairs = 0
    for a in range(n):
        for b in range(a + 1, n):
            pm = (1 << a) | (1 << b)
            hit = True
            for j in range(ne):
                if edges[j] & pm == 0:
                    hit = False
                    break
            if hit:
                pairs[npairs] = pm
                npairs += 1
    for i in range(npairs):
        for j in range(i + 1, npairs):
            if pairs[i] & pairs[j] == 0:
                return True
    return False


@jit
def subset_sweep_chunk(n, pool, lo, hi, k_big, m_heavy, k_small, out):
    """Scan candidates ``lo <= c < hi``; candidate c selects ``pool[i]`` for each bit i.

    A candidate survives when it has no polychromatic ``k_big``-coloring and
    every ``m_heavy``-heavy trace is ``k_small``-colorable. Returns
    ``(survivor_count, no_poly_count, disjoint_pair_count)``; the last counts
    no-poly candidates whose non-missed pair graph has two disjoint edges.
    """
    npool = pool.shape[0]
    edges = np.empty(npool, np.int64)
    colors = np.empty(n, np.int64)
    nsurv = 0
    nopoly = 0
    disjoint = 0
    for c in range(lo, hi):
        ne = 0
        for i in range(npool):
            if (c >> i) & 1:
                edges[ne] = pool[i]
                ne += 1
        sub = edges[:ne]
        if poly_colorable(n, k_big, sub, colors):
            continue
        nopoly += 1
        if has_two_disjoint_unmissed_pairs(n, sub):
            disjoint += 1
        if first_failing_restriction(n, k_small, m_heavy, sub, 0) == -1:
            out[nsurv] = c
            nsurv += 1
    return nsurv, nopoly, disjoint


@jit
def extension_sweep_chunk(n, base, pool, combos, lo, hi, k_big, m_heavy, k_small, out):
    """Scan ``base + pool[combos[r]]`` for ``lo <= r < hi``.

    Filters run cheapest first: every pair missed, then no polychromatic
    ``k_big``-coloring, then all ``m_heavy``-heavy traces ``k_small``-colorable.
    Returns ``(survivor_count, pair_missing_count, no_poly_count)``.
    """
    nb = base.shape[0]
    w = combos.shape[1]
    edges = np.empty(nb + w, np.int64)
    for j in range(nb):
        edges[j] = base[j]
    colors = np.empty(n, np.int64)
    nsurv = 0
    npairs = 0
    nopoly = 0
    for r in range(lo, hi):
        for i in range(w):
            edges[nb + i] = pool[combos[r, i]]
        if not misses_all_pairs(n, edges):
            continue
        npairs += 1
        if poly_colorable(n, k_big, edges, colors):
            continue
        nopoly += 1
        if first_failing_restriction(n, k_small, m_heavy, edges, 0) == -1:
            out[nsurv] = r
            nsurv += 1
    return nsurv, npairs, nopoly


@jit
def canonical_edges(n, edges):
    """Least sorted relabeled edge array over all n! vertex permutations."""
    ne = edges.shape[0]
    perm = np.arange(n)
    best = np.empty(ne, np.int64)
    cur = np.empty(ne, np.int64)
    img = np.empty(n, np.int64)
    have = False
    while True:
        for v in range(n):
            img[v] = 1 << perm[v]
        for j in range(ne):
            e = edges[j]
            r = 0
            for v in range(n):
                if (e >> v) & 1:
                    r |= img[v]
            cur[j] = r
        cur.sort()
        if not have:
            best[:] = cur
            have = True
        else:
            for j in range(ne):
                if cur[j] != best[j]:
                    if cur[j] < best[j]:
                        best[:] = cur
                    break
        i = n - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while perm[j] <= perm[i]:
            j -= 1
        t = perm[i]
        perm[i] = perm[j]
        perm[j] = t
        a = i + 1
        b = n - 1
        while a < b:
            t = perm[a]
            perm[a] = perm[b]
            perm[b] = t
            a += 1
            b -= 1
    return best


@jit
def type_search(num_edges, m, k, types, lex_columns, mult_out):
    """Depth-first search over vertex-type multiplicities.

    ``types`` lists nonzero incidence masks over ``num_edges`` edges. Each type
    gets a multiplicity in ``0..k-1`` and every edge must end up with exactly
    ``m`` vertices. A partial instance that is already polychromatically
    k-colorable is abandoned, since adding vertices never breaks a coloring.

    With ``lex_columns`` set, ``types`` must be in decreasing lex order (edge 0
    most significant) and edge columns are forced into nonincreasing lex
    order as rows are added; the lex-largest incidence matrix of every
    isomorphism class satisfies both orders, so no class is lost.

    Returns ``(found, nodes)``; on success ``mult_out`` holds the instance.
    """
    nt = types.shape[0]
    cap = k - 1
    suf = np.zeros((nt + 1, num_edges), np.int64)
    for i in range(nt - 1, -1, -1):
        for j in range(num_edges):
            suf[i, j] = suf[i + 1, j] + ((types[i] >> j) & 1)
    deficit = np.full(num_edges, m, np.int64)
    emask = np.zeros(num_edges, np.int64)
    colors = np.empty(64, np.int64)
    cur = np.full(nt, -1, np.int64)
    applied = np.full(nt, -1, np.int64)
    # tie[pos, j]: columns j and j+1 still equal before row block pos
    tie = np.ones((nt + 1, num_edges), np.bool_)
    nv = 0
    nodes = 0

    hi = cap
    for j in range(num_edges):
        if (types[0] >> j) & 1 and deficit[j] < hi:
            hi = deficit[j]
    cur[0] = hi
    pos = 0
    while pos >= 0:
        t = types[pos]
        mu = applied[pos]
        if mu >= 0:
            for _ in range(mu):
                nv -= 1
                bit = 1 << nv
                for j in range(num_edges):
                    if (t >> j) & 1:
                        emask[j] &= ~bit
                        deficit[j] += 1
            applied[pos] = -1
        mu = cur[pos]
        if mu < 0:
            pos -= 1
            continue
        cur[pos] = mu - 1
        ordered = True
        for j in range(num_edges - 1):
            tj = tie[pos, j]
            if tj and mu > 0:
                a = (t >> j) & 1
                b = (t >> (j + 1)) & 1
                if a < b and lex_columns:
                    ordered = False
                elif a > b:
                    tj = False
            tie[pos + 1, j] = tj
        if not ordered:
            continue
        for _ in range(mu):
            bit = 1 << nv
            for j in range(num_edges):
                if (t >> j) & 1:
                    emask[j] |= bit
                    deficit[j] -= 1
            nv += 1
        applied[pos] = mu
        nodes += 1

        feasible = True
        done = True
        heavy = True
        for j in range(num_edges):
            if deficit[j] > cap * suf[pos + 1, j]:
                feasible = False
            if deficit[j] != 0:
                done = False
            if m - deficit[j] < k:
                heavy = False
        if not feasible:
            continue
        if heavy and mu > 0:
            if poly_colorable(nv, k, emask, colors):
                continue
            if done:
                for i in range(nt):
                    mult_out[i] = applied[i] if i <= pos else 0
                return True, nodes
        elif done:
            if not poly_colorable(nv, k, emask, colors):
                for i in range(nt):
                    mult_out[i] = applied[i] if i <= pos else 0
                return True, nodes
            continue
        if done or pos + 1 == nt:
            continue
        pos += 1
        t = types[pos]
        hi = cap
        for j in range(num_edges):
            if (t >> j) & 1 and deficit[j] < hi:
                hi = deficit[j]
        cur[pos] = hi
        applied[pos] = -1
    return False, nodes
