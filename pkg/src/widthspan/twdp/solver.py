"""Exact minimum-stretch spanning tree DP over a nice tree decomposition.

State per bag: a *configuration*, the trace of a candidate spanning tree on
the bag vertices.  The trace is a tree whose nodes are the labeled bag
vertices plus anonymous Steiner vertices (branch points of degree >= 3,
tagged Above or Below the bag), and whose edges carry an integer cost (the
length of the tree path they stand for) plus a realized/promised flag: a
realized edge's internal path runs through already-forgotten vertices, a
promised edge's path runs through vertices still to be introduced.  The
trace is kept in normal form: every degree-2 non-bag vertex is contracted
into its two incident edges, summing costs.

Transitions enumerate every way the new vertex can sit inside the trace
(attach by a graph edge, take the place of an Above vertex, subdivide a
promised edge, or hang off an existing or freshly guessed Above vertex with a
guessed cost), charging each graph edge exactly once -- at the introduce step
where its second endpoint appears -- with its cost-weighted trace distance.
Joins pair complementary tables: every promised block of one child may be the
realized work of the other, and the bag-internal edge charges counted by both
children are subtracted once.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..graph import Graph
from .decomposition import NiceTreeDecomposition, TreeDecomposition, make_nice

ABOVE = "above"
BELOW = "below"

# An edge map: (a, b) with a < b  ->  (cost, realized).  Bag vertices are the
# positive graph labels; Steiner vertices are fresh negative integers.
EdgeMap = dict[tuple[int, int], tuple[int, bool]]


class DPLimitError(RuntimeError):
    """Instance exceeds the configured practical limits of the table DP."""


def _ekey(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _vertices(bag: frozenset[int], edges: EdgeMap) -> set[int]:
    verts = set(bag)
    for a, b in edges:
        verts.add(a)
        verts.add(b)
    return verts


def _adjacency(edges: EdgeMap) -> dict[int, list[tuple[int, int, bool]]]:
    adj: dict[int, list[tuple[int, int, bool]]] = {}
    for (a, b), (cost, realized) in edges.items():
        adj.setdefault(a, []).append((b, cost, realized))
        adj.setdefault(b, []).append((a, cost, realized))
    return adj


def _dist(edges: EdgeMap, s: int, t: int) -> int:
    """Cost-weighted path length between two trace vertices."""
    if s == t:
        return 0
    adj = _adjacency(edges)
    stack = [(s, 0, None)]
    while stack:
        x, d, parent = stack.pop()
        for y, cost, _ in adj.get(x, ()):
            if y == parent:
                continue
            if y == t:
                return d + cost
            stack.append((y, d + cost, x))
    raise ValueError(f"vertices {s} and {t} are not connected in the trace")


def _canon(bag: frozenset[int], edges: EdgeMap) -> tuple:
    """Canonical encoding: rooted at the least bag vertex, Steiner vertices
    anonymous, children ordered by (cost, realized, encoding)."""
    adj = _adjacency(edges)
    root = min(bag)

    def enc(v: int, parent: int | None) -> tuple:
        label = v if v in bag else 0
        kids = sorted(
            (cost, realized, enc(w, v))
            for w, cost, realized in adj.get(v, ())
            if w != parent
        )
        return (label, tuple(kids))

    return enc(root, None)


def _steiner_tag(adj: dict[int, list[tuple[int, int, bool]]], s: int) -> str:
    tags = {realized for _, _, realized in adj[s]}
    assert len(tags) == 1, "Steiner vertex with mixed realized/promised edges"
    return BELOW if tags.pop() else ABOVE


def _future_need(bag: frozenset[int], edges: EdgeMap) -> int:
    """Vertices still to be introduced that this trace commits to: internal
    vertices of promised edges plus the Above Steiner vertices themselves."""
    need = sum(cost - 1 for cost, realized in edges.values() if not realized)
    adj = _adjacency(edges)
    for v in adj:
        if v not in bag and _steiner_tag(adj, v) == ABOVE:
            need += 1
    return need


def _check_trace(bag: frozenset[int], edges: EdgeMap, cap: int) -> None:
    """Structural invariants; cheap because traces have O(k) vertices."""
    verts = _vertices(bag, edges)
    assert len(verts) <= cap, f"trace has {len(verts)} vertices, cap {cap}"
    assert len(edges) == len(verts) - 1, "trace is not a tree"
    adj = _adjacency(edges)
    for v in verts:
        if v in bag:
            continue
        assert len(adj.get(v, ())) >= 3, "degree-2 Steiner vertex not contracted"
        _steiner_tag(adj, v)  # asserts tag uniformity
    for (a, b), (cost, realized) in edges.items():
        assert cost >= 1
        if a in bag and b in bag and cost == 1:
            assert realized, "unit bag edge must be realized"
    if verts:
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y, _, _ in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        assert seen == verts, "trace is disconnected"


# ---------------------------------------------------------------------------
# Public configuration type (conformity of a concrete spanning tree).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """The trace of a spanning tree on a bag, in contracted normal form."""

    bag: frozenset[int]
    edges: tuple[tuple[int, int, int, bool], ...]  # (a, b, cost, realized)

    def edge_map(self) -> EdgeMap:
        return {_ekey(a, b): (cost, realized) for a, b, cost, realized in self.edges}

    @property
    def canonical_key(self) -> tuple:
        return _canon(self.bag, self.edge_map())

    def steiner_tags(self) -> dict[int, str]:
        edges = self.edge_map()
        adj = _adjacency(edges)
        return {
            v: _steiner_tag(adj, v)
            for v in _vertices(self.bag, edges)
            if v not in self.bag
        }

    def stretch_of(self, u: int, v: int) -> int:
        return _dist(self.edge_map(), u, v)


def contract_to_configuration(tree_edges, bag, below_set) -> Configuration:
    """Trace of a spanning tree on a bag: strip off-bag leaves, contract
    degree-2 off-bag vertices summing costs, classify edges by whether their
    internal vertices were already processed (below) or are still to come.
    """
    bag = frozenset(bag)
    below_set = frozenset(below_set)
    # (cost, below_internals, above_internals) per surviving edge
    attrs: dict[tuple[int, int], tuple[int, int, int]] = {}
    adj: dict[int, set[int]] = {}
    for u, v in tree_edges:
        attrs[_ekey(u, v)] = (1, 0, 0)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    for v in bag:
        adj.setdefault(v, set())

    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v in bag:
                continue
            if len(adj[v]) == 1:
                (w,) = adj[v]
                del attrs[_ekey(v, w)]
                adj[w].discard(v)
                del adj[v]
                changed = True
            elif len(adj[v]) == 2:
                a, b = sorted(adj[v])
                ca, ba_, aa = attrs.pop(_ekey(v, a))
                cb, bb, ab = attrs.pop(_ekey(v, b))
                inside = 1 if v in below_set else 0
                attrs[_ekey(a, b)] = (ca + cb, ba_ + bb + inside, aa + ab + (1 - inside))
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True

    out = []
    for (a, b), (cost, below_int, above_int) in sorted(attrs.items()):
        assert not (below_int and above_int), "trace edge mixes below and above internals"
        endpoint_above = any(x not in bag and x not in below_set for x in (a, b))
        realized = above_int == 0 and not endpoint_above
        out.append((a, b, cost, realized))
    return Configuration(bag=bag, edges=tuple(out))


# ---------------------------------------------------------------------------
# DP table machinery.
# ---------------------------------------------------------------------------

class _Entry:
    __slots__ = ("cost", "edges", "back")

    def __init__(self, cost: int, edges: EdgeMap, back: tuple):
        self.cost = cost
        self.edges = edges
        self.back = back


def _merge(table: dict, bag: frozenset[int], edges: EdgeMap, cost: int, back: tuple) -> None:
    key = _canon(bag, edges)
    old = table.get(key)
    if old is None or cost < old.cost:
        table[key] = _Entry(cost, edges, back)


def _intro_candidates(edges_j: EdgeMap, bag_j: frozenset[int], v: int, g: Graph, max_extra: int):
    """Every way v can be placed into the trace.

    Yields (new_edges, realized_pairs) where realized_pairs are the graph
    edges that become tree edges at this step.
    """
    verts = _vertices(bag_j, edges_j)
    adj = _adjacency(edges_j)
    above = {s for s in verts if s not in bag_j and _steiner_tag(adj, s) == ABOVE}

    # attach v by a single new edge to a bag vertex or an Above vertex
    for x in sorted(verts):
        if x in bag_j:
            if g.has_edge(v, x):
                out = dict(edges_j)
                out[_ekey(v, x)] = (1, True)
                yield out, ((v, x),)
            for length in range(2, max_extra + 1):
                out = dict(edges_j)
                out[_ekey(v, x)] = (length, False)
                yield out, ()
        elif x in above:
            for length in range(1, max_extra + 1):
                out = dict(edges_j)
                out[_ekey(v, x)] = (length, False)
                yield out, ()

    # v takes the place of an Above vertex: unit arms to bag vertices become
    # realized graph edges, everything else keeps its cost and stays promised
    for s in sorted(above):
        arms = adj[s]
        if any(cost == 1 and w in bag_j and not g.has_edge(v, w) for w, cost, _ in arms):
            continue
        out = {k: cv for k, cv in edges_j.items() if s not in k}
        pairs = []
        for w, cost, _ in arms:
            if cost == 1 and w in bag_j:
                out[_ekey(v, w)] = (1, True)
                pairs.append((v, w))
            else:
                out[_ekey(v, w)] = (cost, False)
        yield out, tuple(pairs)

    # v subdivides a promised edge at every interior offset; a unit side to a
    # bag vertex must be an actual graph edge and becomes realized
    promised = [(k, cv[0]) for k, cv in edges_j.items() if not cv[1] and cv[0] >= 2]
    for (a, b), total in promised:
        for alpha in range(1, total):
            sides = []
            ok = True
            for endpoint, cost in ((a, alpha), (b, total - alpha)):
                if cost == 1 and endpoint in bag_j:
                    if not g.has_edge(v, endpoint):
                        ok = False
                        break
                    sides.append((endpoint, cost, True))
                else:
                    sides.append((endpoint, cost, False))
            if not ok:
                continue
            out = dict(edges_j)
            del out[_ekey(a, b)]
            pairs = []
            for endpoint, cost, realized in sides:
                out[_ekey(v, endpoint)] = (cost, realized)
                if realized:
                    pairs.append((v, endpoint))
            yield out, tuple(pairs)

    # a fresh Above vertex subdivides a promised edge and v hangs off it
    fresh = min((x for x in verts if x < 0), default=0) - 1
    for (a, b), total in promised:
        for alpha in range(1, total):
            for length in range(1, max_extra + 1):
                out = dict(edges_j)
                del out[_ekey(a, b)]
                out[_ekey(fresh, a)] = (alpha, False)
                out[_ekey(fresh, b)] = (total - alpha, False)
                out[_ekey(fresh, v)] = (length, False)
                yield out, ()


def introduce_step(
    table_j: dict,
    v: int,
    bag_j: frozenset[int],
    g: Graph,
    *,
    future_budget: int | None = None,
    vertex_cap: int | None = None,
) -> dict:
    """All parent entries for introducing v above bag_j; charges each graph
    edge between v and the bag with its trace distance."""
    bag_i = bag_j | {v}
    cap = vertex_cap if vertex_cap is not None else 2 * len(bag_i)
    n = g.n
    nbrs = [u for u in g.neighbors(v) if u in bag_j]
    table_i: dict = {}
    for key_j, entry in table_j.items():
        existing = sum(cost for cost, _ in entry.edges.values())
        max_extra = (n - 1) - existing
        for edges_i, pairs in _intro_candidates(entry.edges, bag_j, v, g, max_extra):
            if future_budget is not None and _future_need(bag_i, edges_i) > future_budget:
                continue
            if len(_vertices(bag_i, edges_i)) > cap:
                continue
            charge = sum(_dist(edges_i, v, u) for u in nbrs)
            _merge(table_i, bag_i, edges_i, entry.cost + charge, ("intro", key_j, pairs))
    return table_i


def forget_step(table_j: dict, v: int, bag_i: frozenset[int]) -> dict:
    """Drop v from the trace: a vertex with promised edges cannot be
    forgotten (its future arms could never be realized); a realized leaf arm
    is removed, a degree-2 vertex is contracted, and a branch vertex becomes
    an anonymous Below Steiner vertex."""
    table_i: dict = {}
    for key_j, entry in table_j.items():
        incident = [(k, cv) for k, cv in entry.edges.items() if v in k]
        if any(not realized for _, (_, realized) in incident):
            continue
        edges = {k: cv for k, cv in entry.edges.items() if v not in k}
        if len(incident) == 1:
            (k, _), = incident
            x = k[0] if k[1] == v else k[1]
            if x not in bag_i and x < 0:
                rest = [(kk, cv) for kk, cv in edges.items() if x in kk]
                if len(rest) == 2:
                    (k1, (c1, _)), (k2, (c2, _)) = rest
                    a = k1[0] if k1[1] == x else k1[1]
                    b = k2[0] if k2[1] == x else k2[1]
                    del edges[k1]
                    del edges[k2]
                    edges[_ekey(a, b)] = (c1 + c2, True)
        elif len(incident) == 2:
            (k1, (c1, _)), (k2, (c2, _)) = incident
            a = k1[0] if k1[1] == v else k1[1]
            b = k2[0] if k2[1] == v else k2[1]
            edges[_ekey(a, b)] = (c1 + c2, True)
        elif len(incident) >= 3:
            fresh = min((x for x in _vertices(bag_i, edges) if x < 0), default=0) - 1
            for k, cv in incident:
                x = k[0] if k[1] == v else k[1]
                edges[_ekey(fresh, x)] = cv
        else:  # isolated v: impossible, the trace is connected and spans the bag
            raise AssertionError("forgetting an isolated vertex")
        _merge(table_i, bag_i, edges, entry.cost, ("forget", key_j))
    return table_i


def _blocks(edges: EdgeMap) -> list[tuple[frozenset, bool]]:
    """Partition of the trace edges into flip units for the join: Steiner
    components as wholes, long bag-to-bag edges individually; unit bag edges
    are shared (realized on both sides) and belong to no block."""
    keys = [k for k, (cost, _) in edges.items()
            if not (k[0] > 0 and k[1] > 0 and cost == 1)]
    index = {k: i for i, k in enumerate(keys)}
    parent = list(range(len(keys)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_steiner: dict[int, list[int]] = {}
    for k in keys:
        for x in k:
            if x < 0:
                by_steiner.setdefault(x, []).append(index[k])
    for members in by_steiner.values():
        for i in members[1:]:
            parent[find(members[0])] = find(i)

    groups: dict[int, list] = {}
    for k in keys:
        groups.setdefault(find(index[k]), []).append(k)
    out = []
    for members in groups.values():
        tags = {edges[k][1] for k in members}
        assert len(tags) == 1, "join block with mixed realized/promised edges"
        out.append((frozenset(members), tags.pop()))
    return out


def join_step(table_j: dict, table_k: dict, bag: frozenset[int], g: Graph) -> dict:
    """Combine complementary children: each block realized below exactly one
    child (or promised in both), bag-internal charges subtracted once."""
    bag_pairs = [(u, w) for u, w in g.edges if u in bag and w in bag]
    table_i: dict = {}
    for key_j, entry_j in table_j.items():
        promised_blocks = [ks for ks, realized in _blocks(entry_j.edges) if not realized]
        for r in range(len(promised_blocks) + 1):
            for chosen in itertools.combinations(promised_blocks, r):
                flip: set = set().union(*chosen) if chosen else set()
                partner: EdgeMap = {}
                for k, (cost, realized) in entry_j.edges.items():
                    if k[0] > 0 and k[1] > 0 and cost == 1:
                        partner[k] = (cost, True)
                    else:
                        partner[k] = (cost, k in flip)
                key_k = _canon(bag, partner)
                entry_k = table_k.get(key_k)
                if entry_k is None:
                    continue
                # parent tag: realized below either child
                merged: EdgeMap = {
                    k: (cost, realized or partner[k][1])
                    for k, (cost, realized) in entry_j.edges.items()
                }
                dup = sum(_dist(merged, u, w) for u, w in bag_pairs)
                cost_i = entry_j.cost + entry_k.cost - dup
                _merge(table_i, bag, merged, cost_i, ("join", key_j, key_k))
    return table_i


# ---------------------------------------------------------------------------
# Driver.
# ---------------------------------------------------------------------------

@dataclass
class DPResult:
    min_total_stretch: int
    min_avg_stretch: Fraction
    tree_edges: frozenset[int]
    width: int
    table_sizes: tuple[int, ...]
    tables: list | None = None
    ntd: NiceTreeDecomposition | None = None


def dp_min_stretch(
    g: Graph,
    decomposition: TreeDecomposition | NiceTreeDecomposition,
    *,
    enforce_limits: bool = True,
    max_width: int = 3,
    max_n: int = 24,
    prune_future: bool = True,
    vertex_cap: int | None = None,
    keep_tables: bool = False,
) -> DPResult:
    """Leaf-to-root DP; returns the exact optimum and a witness tree.

    The table at a bag indexes every contracted trace a spanning tree can
    leave on it; the stored cost is the minimum total stretch of graph edges
    already fully introduced.  The per-instance limits guard the Theta(n^(k+1))
    table growth and can be lifted explicitly.
    """
    if isinstance(decomposition, NiceTreeDecomposition):
        ntd = decomposition
    else:
        ntd = make_nice(decomposition, g)
    if enforce_limits:
        if ntd.width > max_width:
            raise DPLimitError(
                f"decomposition width {ntd.width} exceeds limit {max_width}: "
                f"the table grows as n^(k+1); pass enforce_limits=False to override"
            )
        if g.n > max_n:
            raise DPLimitError(
                f"graph has {g.n} vertices, limit {max_n}: "
                f"the table grows as n^(k+1); pass enforce_limits=False to override"
            )

    n = g.n
    tables: list[dict | None] = [None] * len(ntd.nodes)
    for node_id in ntd.postorder():
        nd = ntd.nodes[node_id]
        if nd.kind == "leaf":
            (v,) = nd.bag
            tables[node_id] = {_canon(nd.bag, {}): _Entry(0, {}, ("leaf",))}
        elif nd.kind == "introduce":
            child = nd.children[0]
            budget = n - len(nd.below) if prune_future else None
            tables[node_id] = introduce_step(
                tables[child], nd.vertex, ntd.nodes[child].bag, g,
                future_budget=budget, vertex_cap=vertex_cap,
            )
        elif nd.kind == "forget":
            tables[node_id] = forget_step(tables[nd.children[0]], nd.vertex, nd.bag)
        else:
            j, k = nd.children
            tables[node_id] = join_step(tables[j], tables[k], nd.bag, g)
        if not tables[node_id]:
            raise RuntimeError(
                f"empty DP table at node {node_id} ({nd.kind}); this is a bug: "
                f"every connected graph has a spanning tree"
            )

    root = ntd.root
    root_bag = ntd.nodes[root].bag
    answer_key = _canon(root_bag, {})
    entry = tables[root].get(answer_key)
    if entry is None:
        raise RuntimeError("no complete configuration at the root; this is a bug")

    pairs: set[tuple[int, int]] = set()
    stack = [(root, answer_key)]
    while stack:
        node_id, key = stack.pop()
        e = tables[node_id][key]
        nd = ntd.nodes[node_id]
        tag = e.back[0]
        if tag == "intro":
            pairs.update(_ekey(a, b) for a, b in e.back[2])
            stack.append((nd.children[0], e.back[1]))
        elif tag == "forget":
            stack.append((nd.children[0], e.back[1]))
        elif tag == "join":
            stack.append((nd.children[0], e.back[1]))
            stack.append((nd.children[1], e.back[2]))
    assert len(pairs) == n - 1, f"witness has {len(pairs)} edges, expected {n - 1}"
    by_pair = {edge: eid for eid, edge in enumerate(g.edges, start=1)}
    tree_ids = frozenset(by_pair[p] for p in pairs)
    check = _naive_total_stretch(g, tree_ids)
    assert check == entry.cost, (
        f"witness stretch {check} disagrees with DP optimum {entry.cost}"
    )
    return DPResult(
        min_total_stretch=entry.cost,
        min_avg_stretch=Fraction(entry.cost, g.m) if g.m else Fraction(0),
        tree_edges=tree_ids,
        width=ntd.width,
        table_sizes=tuple(len(t) for t in tables),
        tables=tables if keep_tables else None,
        ntd=ntd if keep_tables else None,
    )


def _naive_total_stretch(g: Graph, tree_ids: frozenset[int]) -> int:
    adj: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for eid in tree_ids:
        u, v = g.edges[eid - 1]
        adj[u].append(v)
        adj[v].append(u)
    par = {1: 0}
    depth = {1: 0}
    stack = [1]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in par:
                par[y] = x
                depth[y] = depth[x] + 1
                stack.append(y)
    assert len(par) == g.n, "witness edges do not span the graph"
    total = 0
    for u, v in g.edges:
        x, y = u, v
        d = 0
        while x != y:
            if depth[x] >= depth[y]:
                x = par[x]
            else:
                y = par[y]
            d += 1
        total += d
    return total
