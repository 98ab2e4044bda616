"""Maximum-cardinality matchings: Edmonds' blossom search and bipartite augmenting paths."""

from __future__ import annotations

from collections.abc import Sequence


def max_matching(n: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Maximum-cardinality matching of a general graph given as adjacency lists.

    Returns ``mate`` with ``mate[v] == -1`` for exposed vertices.  Uses
    augmenting-path BFS with blossom contraction through a base array,
    O(V^3).  Neighbour order is respected, so results are deterministic.
    """
    mate = [-1] * n
    # greedy start; the augmenting phase repairs any suboptimal choice
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if w != v and mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break

    for root in range(n):
        if mate[root] != -1 or not adj[root]:
            continue
        end = _augmenting_path(n, adj, mate, root)
        if end is None:
            continue
        parent = end[1]
        v = end[0]
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt
    return mate


def _augmenting_path(n, adj, mate, root):
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = [root]

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                b = lca(v, to)
                blossom = [False] * n
                mark(v, b, to, blossom)
                mark(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    return to, parent
                used[mate[to]] = True
                queue.append(mate[to])
    return None


def bipartite_perfect_matching(
    n_left: int, n_right: int, arcs: Sequence[tuple[int, int, int]]
) -> dict[int, int] | None:
    """Perfect matching of a bipartite multigraph; ``arcs`` are ``(left, right, label)``.

    Returns ``{left: label}`` or ``None`` if no perfect matching exists.
    """
    if n_left != n_right:
        return None
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_left)]
    for a, b, lab in arcs:
        adj[a].append((b, lab))
    match_right: list[tuple[int, int] | None] = [None] * n_right

    def try_augment(a: int, seen: list[bool]) -> bool:
        # iterative DFS over alternating paths
        stack = [(a, iter(adj[a]))]
        path: list[tuple[int, int, int]] = []
        while stack:
            x, it = stack[-1]
            for b, lab in it:
                if seen[b]:
                    continue
                seen[b] = True
                path.append((x, b, lab))
                if match_right[b] is None:
                    for xl, br, lb in path:
                        match_right[br] = (xl, lb)
                    return True
                stack.append((match_right[b][0], iter(adj[match_right[b][0]])))
                break
            else:
                stack.pop()
                if path and stack:
                    path.pop()
        return False

    for a in range(n_left):
        if not try_augment(a, [False] * n_right):
            return None
    out = {}
    for b, item in enumerate(match_right):
        if item is not None:
            out[item[0]] = item[1]
    return out
