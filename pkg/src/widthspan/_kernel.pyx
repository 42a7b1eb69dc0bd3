# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the hot loop: greedy spanning tree construction under
(height, spread, edge index) order plus exact tree-path stretch for every
edge.  A behaviorally identical pure-Python twin lives in _kernel_py.
"""
from libc.stdlib cimport malloc, free, qsort

IMPLEMENTATION = "cython"


cdef int _cmp_i64(const void* a, const void* b) noexcept nogil:
    cdef long long x = (<const long long*> a)[0]
    cdef long long y = (<const long long*> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


cdef long long _find(long long* parent, long long x) noexcept nogil:
    cdef long long root = x
    cdef long long tmp
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        tmp = parent[x]
        parent[x] = root
        x = tmp
    return root


cdef struct LcaCtx:
    long long size          # euler tour length
    long long levels
    long long* depth        # per vertex
    long long* first        # first euler index per vertex
    long long* table        # levels x size euler-index sparse table
    long long* log2f        # floor(log2) lookup, size+1 entries


cdef int _build_lca(long long n, long long* adj_head, long long* adj_next,
                    long long* adj_to, LcaCtx* ctx) except -1:
    cdef long long size = 2 * n - 1
    cdef long long* depth = <long long*> malloc(n * sizeof(long long))
    cdef long long* first = <long long*> malloc(n * sizeof(long long))
    cdef long long* parent = <long long*> malloc(n * sizeof(long long))
    cdef long long* cursor = <long long*> malloc(n * sizeof(long long))
    cdef long long* stack = <long long*> malloc(n * sizeof(long long))
    cdef long long* euler = <long long*> malloc(size * sizeof(long long))
    cdef long long* log2f = <long long*> malloc((size + 1) * sizeof(long long))
    if not (depth and first and parent and cursor and stack and euler and log2f):
        raise MemoryError()
    cdef long long i, v, w, e, e2, top, pos
    for i in range(n):
        parent[i] = -1
        first[i] = -1
        cursor[i] = adj_head[i]
    depth[0] = 0
    top = 0
    stack[0] = 0
    first[0] = 0
    euler[0] = 0
    pos = 1
    cdef bint advanced
    while top >= 0:
        v = stack[top]
        e = cursor[v]
        advanced = False
        while e != -1:
            w = adj_to[e]
            e2 = adj_next[e]
            if w != parent[v]:
                cursor[v] = e2
                parent[w] = v
                depth[w] = depth[v] + 1
                first[w] = pos
                euler[pos] = w
                pos += 1
                top += 1
                stack[top] = w
                advanced = True
                break
            e = e2
        if not advanced:
            cursor[v] = -1
            top -= 1
            if top >= 0:
                euler[pos] = stack[top]
                pos += 1
    free(parent)
    free(cursor)
    free(stack)
    if pos != size:
        free(depth); free(first); free(euler); free(log2f)
        raise ValueError("tree traversal did not cover all vertices")
    log2f[0] = 0
    log2f[1] = 0
    for i in range(2, size + 1):
        log2f[i] = log2f[i >> 1] + 1
    cdef long long levels = log2f[size] + 1
    cdef long long* table = <long long*> malloc(levels * size * sizeof(long long))
    if not table:
        free(depth); free(first); free(euler); free(log2f)
        raise MemoryError()
    for i in range(size):
        table[i] = euler[i]
    free(euler)
    cdef long long lev, span, limit, a, b
    span = 1
    for lev in range(1, levels):
        limit = size - 2 * span + 1
        for i in range(size):
            table[lev * size + i] = table[(lev - 1) * size + i]
        for i in range(limit):
            a = table[(lev - 1) * size + i]
            b = table[(lev - 1) * size + i + span]
            table[lev * size + i] = a if depth[a] <= depth[b] else b
        span *= 2
    ctx.size = size
    ctx.levels = levels
    ctx.depth = depth
    ctx.first = first
    ctx.table = table
    ctx.log2f = log2f
    return 0


cdef void _free_lca(LcaCtx* ctx) noexcept nogil:
    free(ctx.depth)
    free(ctx.first)
    free(ctx.table)
    free(ctx.log2f)


cdef long long _lca_dist(LcaCtx* ctx, long long u, long long v) noexcept nogil:
    cdef long long i = ctx.first[u]
    cdef long long j = ctx.first[v]
    cdef long long t
    if i > j:
        t = i; i = j; j = t
    cdef long long k = ctx.log2f[j - i + 1]
    cdef long long a = ctx.table[k * ctx.size + i]
    cdef long long b = ctx.table[k * ctx.size + j - (1 << k) + 1]
    cdef long long anc = a if ctx.depth[a] <= ctx.depth[b] else b
    return ctx.depth[u] + ctx.depth[v] - 2 * ctx.depth[anc]


cdef _stretch_from_mask(long long n, long long m, long long* ceu, long long* cev,
                        char* mask):
    cdef long long* adj_head = <long long*> malloc(n * sizeof(long long))
    cdef long long* adj_next = <long long*> malloc(2 * (n - 1) * sizeof(long long))
    cdef long long* adj_to = <long long*> malloc(2 * (n - 1) * sizeof(long long))
    if not (adj_head and adj_next and adj_to):
        raise MemoryError()
    cdef long long i, u, v, slot
    for i in range(n):
        adj_head[i] = -1
    slot = 0
    for i in range(m):
        if mask[i]:
            u = ceu[i]; v = cev[i]
            adj_to[slot] = v
            adj_next[slot] = adj_head[u]
            adj_head[u] = slot
            slot += 1
            adj_to[slot] = u
            adj_next[slot] = adj_head[v]
            adj_head[v] = slot
            slot += 1
    cdef LcaCtx ctx
    try:
        _build_lca(n, adj_head, adj_next, adj_to, &ctx)
    finally:
        free(adj_head); free(adj_next); free(adj_to)
    stretch = [0] * m
    try:
        for i in range(m):
            if mask[i]:
                stretch[i] = 1
            else:
                stretch[i] = _lca_dist(&ctx, ceu[i], cev[i])
    finally:
        _free_lca(&ctx)
    return stretch


def tree_stretch(n, eu, ev, height, spread):
    """Greedy spanning tree under (height, spread, edge index) order.

    Returns (in_tree, stretch) lists over edges; vertices are 0-based.
    """
    cdef long long cn = n
    cdef long long m = len(eu)
    if cn < 1:
        raise ValueError("empty graph")
    if m >= (1 << 21) or cn >= (1 << 21):
        raise ValueError("kernel supports up to 2^21 edges/vertices")
    cdef long long* ceu = <long long*> malloc(m * sizeof(long long))
    cdef long long* cev = <long long*> malloc(m * sizeof(long long))
    cdef long long* keys = <long long*> malloc(m * sizeof(long long))
    cdef long long* parent = <long long*> malloc(cn * sizeof(long long))
    cdef char* mask = <char*> malloc(m if m > 0 else 1)
    if not (ceu and cev and keys and parent and mask):
        raise MemoryError()
    cdef long long i, h, s, idx, ru, rv, picked
    try:
        for i in range(m):
            ceu[i] = eu[i]
            cev[i] = ev[i]
            h = height[i]
            s = spread[i]
            if h >= (1 << 21) or s >= (1 << 21):
                raise ValueError("height/spread out of packable range")
            keys[i] = (h << 42) | (s << 21) | i
            mask[i] = 0
        qsort(keys, m, sizeof(long long), _cmp_i64)
        for i in range(cn):
            parent[i] = i
        picked = 0
        for i in range(m):
            idx = keys[i] & ((1 << 21) - 1)
            ru = _find(parent, ceu[idx])
            rv = _find(parent, cev[idx])
            if ru != rv:
                parent[ru] = rv
                mask[idx] = 1
                picked += 1
                if picked == cn - 1:
                    break
        if picked != cn - 1:
            raise ValueError("graph is not connected")
        stretch = _stretch_from_mask(cn, m, ceu, cev, mask)
        in_tree = [0] * m
        for i in range(m):
            if mask[i]:
                in_tree[i] = 1
        return in_tree, stretch
    finally:
        free(ceu); free(cev); free(keys); free(parent); free(mask)


def distances_in_tree(n, eu, ev, in_tree):
    """Tree-path length between the endpoints of every edge.

    ``in_tree`` must mark exactly the n-1 edges of a spanning tree.
    """
    cdef long long cn = n
    cdef long long m = len(eu)
    cdef long long* ceu = <long long*> malloc(m * sizeof(long long))
    cdef long long* cev = <long long*> malloc(m * sizeof(long long))
    cdef long long* parent = <long long*> malloc(cn * sizeof(long long))
    cdef char* mask = <char*> malloc(m if m > 0 else 1)
    if not (ceu and cev and parent and mask):
        raise MemoryError()
    cdef long long i, count, ru, rv
    try:
        count = 0
        for i in range(m):
            ceu[i] = eu[i]
            cev[i] = ev[i]
            mask[i] = 1 if in_tree[i] else 0
            if mask[i]:
                count += 1
        if count != cn - 1:
            raise ValueError("edge set does not have n - 1 tree edges")
        for i in range(cn):
            parent[i] = i
        for i in range(m):
            if mask[i]:
                ru = _find(parent, ceu[i])
                rv = _find(parent, cev[i])
                if ru == rv:
                    raise ValueError("edge set contains a cycle")
                parent[ru] = rv
        return _stretch_from_mask(cn, m, ceu, cev, mask)
    finally:
        free(ceu); free(cev); free(parent); free(mask)
