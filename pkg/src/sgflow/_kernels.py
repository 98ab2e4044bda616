"""Hot inner loops.

Each exhaustive routine exists twice: a tight loop compiled by numba and a
numpy (or plain Python) counterpart.  The public names at the bottom pick one
according to ``_accel.USE_NUMBA``; both are importable for benchmarking.

Vertex indices here are dense ``0..n-1``; callers remap.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, kernel

# ---------------------------------------------------------------------------
# bipartition scans
# ---------------------------------------------------------------------------


@kernel
def _odd_cut_scan_loop(n, eu, ew):
    # vertex n-1 is pinned to the complement side, so each cut is seen once
    best = -1
    best_mask = 0
    if n < 2:
        return best, best_mask
    m = eu.shape[0]
    total = np.int64(1) << (n - 1)
    for mask in range(1, total):
        c = 0
        for i in range(m):
            c += ((mask >> eu[i]) ^ (mask >> ew[i])) & 1
        if c & 1 and (best < 0 or c < best):
            best = c
            best_mask = mask
            if best == 1:
                break
    return best, best_mask


def _odd_cut_scan_numpy(n, eu, ew):
    if n < 2:
        return -1, 0
    masks = np.arange(1, np.int64(1) << (n - 1), dtype=np.int64)
    cut = np.zeros(masks.shape[0], dtype=np.int64)
    for u, w in zip(eu.tolist(), ew.tolist()):
        cut += ((masks >> u) ^ (masks >> w)) & 1
    odd = (cut & 1) == 1
    if not odd.any():
        return -1, 0
    sizes = np.where(odd, cut, np.iinfo(np.int64).max)
    i = int(np.argmin(sizes))
    return int(sizes[i]), int(masks[i])


@kernel
def _min_switch_negatives_loop(n, eu, ew, neg):
    m = eu.shape[0]
    best = m + 1
    best_mask = 0
    total = np.int64(1) << max(n - 1, 0)
    for mask in range(total):
        c = 0
        for i in range(m):
            c += neg[i] ^ (((mask >> eu[i]) ^ (mask >> ew[i])) & 1)
        if c < best:
            best = c
            best_mask = mask
            if best == 0:
                break
    return best, best_mask


def _min_switch_negatives_numpy(n, eu, ew, neg):
    total = np.int64(1) << max(n - 1, 0)
    best, best_mask = eu.shape[0] + 1, 0
    chunk = np.int64(1) << 18
    for start in range(0, int(total), int(chunk)):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cnt = np.zeros(masks.shape[0], dtype=np.int64)
        for u, w, s in zip(eu.tolist(), ew.tolist(), neg.tolist()):
            cnt += s ^ (((masks >> u) ^ (masks >> w)) & 1)
        i = int(np.argmin(cnt))
        if cnt[i] < best:
            best, best_mask = int(cnt[i]), int(masks[i])
    return best, best_mask


# ---------------------------------------------------------------------------
# Tutte f-factor condition over all disjoint (S, T)
# ---------------------------------------------------------------------------


@kernel
def _tutte_scan_loop(n, eu, ew, fdem):
    """Return (violated, S-mask, T-mask, deficiency) for the first bad pair.

    Pairs are visited in base-3 odometer order (digit 1 = S, digit 2 = T).
    """
    m = eu.shape[0]
    st = np.zeros(n, dtype=np.int64)
    dgs = np.zeros(n, dtype=np.int64)
    parent = np.zeros(n, dtype=np.int64)
    par = np.zeros(n, dtype=np.int64)
    while True:
        sum_s = 0
        for v in range(n):
            dgs[v] = 0
            parent[v] = v
            par[v] = 0
            if st[v] == 1:
                sum_s += fdem[v]
        for i in range(m):
            u = eu[i]
            w = ew[i]
            if u == w:
                if st[u] == 2:
                    dgs[u] += 2
                continue
            if st[u] == 2 and st[w] != 1:
                dgs[u] += 1
            if st[w] == 2 and st[u] != 1:
                dgs[w] += 1
            if st[u] == 0 and st[w] == 0:
                a = u
                while parent[a] != a:
                    a = parent[a]
                b = w
                while parent[b] != b:
                    b = parent[b]
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
        term_t = 0
        for v in range(n):
            if st[v] == 2:
                term_t += fdem[v] - dgs[v]
        for v in range(n):
            if st[v] == 0:
                r = v
                while parent[r] != r:
                    r = parent[r]
                parent[v] = r
                par[r] += fdem[v]
        for i in range(m):
            u = eu[i]
            w = ew[i]
            if st[u] == 0 and st[w] == 2:
                par[parent[u]] += 1
            elif st[w] == 0 and st[u] == 2:
                par[parent[w]] += 1
        odd = 0
        for v in range(n):
            if st[v] == 0 and parent[v] == v and (par[v] & 1) == 1:
                odd += 1
        if sum_s < odd + term_t:
            smask = 0
            tmask = 0
            for v in range(n):
                if st[v] == 1:
                    smask |= np.int64(1) << v
                elif st[v] == 2:
                    tmask |= np.int64(1) << v
            return True, smask, tmask, odd + term_t - sum_s
        i = 0
        while i < n:
            st[i] += 1
            if st[i] < 3:
                break
            st[i] = 0
            i += 1
        if i == n:
            break
    return False, np.int64(0), np.int64(0), np.int64(0)


# ---------------------------------------------------------------------------
# linear labelling search (flows, orientations, factors)
# ---------------------------------------------------------------------------


@kernel
def _label_search_loop(n, va, ca, capa, vb, cb, capb, vals, nv, target, modulus, limit):
    """Depth-first search for labellings x with sum of coef*x == target per vertex.

    Position i contributes ``ca[i]*x`` at vertex ``va[i]`` and, when
    ``vb[i] >= 0``, ``cb[i]*x`` at ``vb[i]``.  ``capa/capb`` hold the largest
    absolute contribution still to come at that vertex after position i; a
    zero capacity means the vertex is complete.  ``modulus == 0`` asks for
    exact equality, otherwise congruence.  Candidate values for position i
    are ``vals[i, :nv[i]]`` in the given order.
    """
    m = va.shape[0]
    sols = np.zeros((limit, m), dtype=np.int64)
    count = 0
    partial = np.zeros(n, dtype=np.int64)
    choice = np.full(m, -1, dtype=np.int64)
    pos = 0
    while pos >= 0:
        if pos == m:
            for i in range(m):
                sols[count, i] = vals[i, choice[i]]
            count += 1
            if count >= limit:
                break
            pos -= 1
            continue
        c = choice[pos]
        a = va[pos]
        b = vb[pos]
        if c >= 0:
            x = vals[pos, c]
            partial[a] -= ca[pos] * x
            if b >= 0:
                partial[b] -= cb[pos] * x
        c += 1
        advanced = False
        while c < nv[pos]:
            x = vals[pos, c]
            partial[a] += ca[pos] * x
            if b >= 0:
                partial[b] += cb[pos] * x
            ok = True
            r = target[a] - partial[a]
            if modulus == 0:
                if abs(r) > capa[pos]:
                    ok = False
            elif capa[pos] == 0 and r % modulus != 0:
                ok = False
            if ok and b >= 0:
                r = target[b] - partial[b]
                if modulus == 0:
                    if abs(r) > capb[pos]:
                        ok = False
                elif capb[pos] == 0 and r % modulus != 0:
                    ok = False
            if ok:
                advanced = True
                break
            partial[a] -= ca[pos] * x
            if b >= 0:
                partial[b] -= cb[pos] * x
            c += 1
        if advanced:
            choice[pos] = c
            pos += 1
            if pos < m:
                choice[pos] = -1
        else:
            choice[pos] = -1
            pos -= 1
    return count, sols


# ---------------------------------------------------------------------------
# public selection
# ---------------------------------------------------------------------------

if USE_NUMBA:
    odd_cut_scan = _odd_cut_scan_loop
    min_switch_negatives = _min_switch_negatives_loop
else:
    odd_cut_scan = _odd_cut_scan_numpy
    min_switch_negatives = _min_switch_negatives_numpy

tutte_scan = _tutte_scan_loop
label_search = _label_search_loop

BACKEND = "numba" if USE_NUMBA else "numpy"
