"""Pure-Python twin of the compiled kernel.

Same contracts as ``_kernel``; selected at import time by ``kernel`` when the
compiled extension is unavailable or WIDTHSPAN_PURE=1 is set.

Vertices here are 0-based; callers translate from the 1-based public API.
"""
from __future__ import annotations

IMPLEMENTATION = "python"


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _lca_tables(n: int, adj_head: list[int], adj_next: list[int], adj_to: list[int]):
    """Euler tour + sparse table for O(1) LCA over a tree rooted at 0.

    The adjacency is a linked-list form (head/next/to) to avoid building
    per-vertex lists.  Returns (depth, first_seen, table, log_row_index).
    """
    depth = [0] * n
    euler: list[int] = []
    first = [-1] * n
    # iterative DFS; it[] tracks the next adjacency cursor per vertex
    cursor = adj_head[:]
    parent = [-1] * n
    stack = [0]
    first[0] = 0
    euler.append(0)
    while stack:
        v = stack[-1]
        e = cursor[v]
        advanced = False
        while e != -1:
            w = adj_to[e]
            e2 = adj_next[e]
            if w != parent[v]:
                cursor[v] = e2
                parent[w] = v
                depth[w] = depth[v] + 1
                first[w] = len(euler)
                euler.append(w)
                stack.append(w)
                advanced = True
                break
            e = e2
        if not advanced:
            cursor[v] = -1
            stack.pop()
            if stack:
                euler.append(stack[-1])
    size = len(euler)
    log = [0] * (size + 1)
    for i in range(2, size + 1):
        log[i] = log[i >> 1] + 1
    levels = log[size] + 1
    # sparse table of euler indices minimizing depth
    table = [euler[:]]
    span = 1
    for _ in range(1, levels):
        prev = table[-1]
        row = prev[:]
        limit = size - 2 * span + 1
        for i in range(limit):
            a, b = prev[i], prev[i + span]
            row[i] = a if depth[a] <= depth[b] else b
        table.append(row)
        span *= 2
    return depth, first, table, log


def _lca(u: int, v: int, first, table, log, depth) -> int:
    i, j = first[u], first[v]
    if i > j:
        i, j = j, i
    k = log[j - i + 1]
    a = table[k][i]
    b = table[k][j - (1 << k) + 1]
    return a if depth[a] <= depth[b] else b


def _stretches(n: int, eu, ev, in_tree) -> list[int]:
    m = len(eu)
    # linked-list adjacency of the tree
    adj_head = [-1] * n
    adj_next: list[int] = []
    adj_to: list[int] = []
    for i in range(m):
        if in_tree[i]:
            u, v = eu[i], ev[i]
            adj_to.append(v)
            adj_next.append(adj_head[u])
            adj_head[u] = len(adj_to) - 1
            adj_to.append(u)
            adj_next.append(adj_head[v])
            adj_head[v] = len(adj_to) - 1
    depth, first, table, log = _lca_tables(n, adj_head, adj_next, adj_to)
    out = [0] * m
    for i in range(m):
        if in_tree[i]:
            out[i] = 1
        else:
            u, v = eu[i], ev[i]
            a = _lca(u, v, first, table, log, depth)
            out[i] = depth[u] + depth[v] - 2 * depth[a]
    return out


def tree_stretch(n: int, eu: list[int], ev: list[int], height: list[int], spread: list[int]):
    """Greedy spanning tree under (height, spread, edge index) order.

    Returns (in_tree, stretch): a 0/1 list marking tree edges and the exact
    tree-path length between every edge's endpoints.
    """
    m = len(eu)
    order = sorted(range(m), key=lambda i: (height[i], spread[i], i))
    parent = list(range(n))
    in_tree = [0] * m
    picked = 0
    for i in order:
        ru, rv = _find(parent, eu[i]), _find(parent, ev[i])
        if ru != rv:
            parent[ru] = rv
            in_tree[i] = 1
            picked += 1
            if picked == n - 1:
                break
    if picked != n - 1:
        raise ValueError("graph is not connected")
    return in_tree, _stretches(n, eu, ev, in_tree)


def distances_in_tree(n: int, eu: list[int], ev: list[int], in_tree: list[int]):
    """Tree-path length between the endpoints of every edge.

    ``in_tree`` must mark exactly the n-1 edges of a spanning tree.
    """
    if sum(1 for x in in_tree if x) != n - 1:
        raise ValueError("edge set does not have n - 1 tree edges")
    # acyclicity/connectivity check
    parent = list(range(n))
    for i in range(len(eu)):
        if in_tree[i]:
            ru, rv = _find(parent, eu[i]), _find(parent, ev[i])
            if ru == rv:
                raise ValueError("edge set contains a cycle")
            parent[ru] = rv
    return _stretches(n, eu, ev, in_tree)
