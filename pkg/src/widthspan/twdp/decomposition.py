"""Tree decompositions: PACE-format I/O, validation, and nice-ification.

A nice decomposition is a rooted binary bag tree whose nodes are leaves
(singleton bags), introduce/forget nodes (bag differs from the child by one
vertex), or join nodes (both children carry the parent's bag).  Leaves are
singletons and the root is reduced to a single vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import Graph


class TreeDecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags.values()) - 1

    def validate(self, g: Graph) -> None:
        """Check the three decomposition properties against g."""
        covered = set()
        for b in self.bags.values():
            covered |= b
        for v in range(1, g.n + 1):
            if v not in covered:
                raise TreeDecompositionError(f"vertex {v} is in no bag")
        for v in covered:
            if not (1 <= v <= g.n):
                raise TreeDecompositionError(f"bag vertex {v} is not a graph vertex")
        bag_ids = set(self.bags)
        adj: dict[int, list[int]] = {i: [] for i in bag_ids}
        for i, j in self.edges:
            if i not in bag_ids or j not in bag_ids:
                raise TreeDecompositionError(f"bag-tree edge ({i}, {j}) references unknown bag")
            adj[i].append(j)
            adj[j].append(i)
        # the bag graph must be a tree
        if len(self.edges) != len(self.bags) - 1:
            raise TreeDecompositionError("bag graph is not a tree (wrong edge count)")
        start = next(iter(bag_ids))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != bag_ids:
            raise TreeDecompositionError("bag graph is disconnected")
        # property 2: every graph edge inside some bag
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags.values()):
                raise TreeDecompositionError(f"edge ({u}, {v}) is covered by no bag")
        # property 3: the bags containing each vertex induce a subtree
        for v in range(1, g.n + 1):
            holders = {i for i, b in self.bags.items() if v in b}
            root = next(iter(holders))
            reached = {root}
            stack = [root]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in holders and y not in reached:
                        reached.add(y)
                        stack.append(y)
            if reached != holders:
                raise TreeDecompositionError(f"bags containing vertex {v} are not connected")


def load_td(text: str, g: Graph | None = None) -> TreeDecomposition:
    """Parse PACE-2017 .td format; validates against g when provided."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise TreeDecompositionError(f"line {lineno}: duplicate solution line")
            if len(parts) != 5 or parts[1] != "td":
                raise TreeDecompositionError(f"line {lineno}: expected 's td <#bags> <width+1> <n>'")
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            if header is None:
                raise TreeDecompositionError(f"line {lineno}: bag line before solution line")
            bag_id = int(parts[1])
            if bag_id in bags:
                raise TreeDecompositionError(f"line {lineno}: duplicate bag {bag_id}")
            bags[bag_id] = frozenset(int(x) for x in parts[2:])
        else:
            try:
                i, j = int(parts[0]), int(parts[1])
            except (ValueError, IndexError):
                raise TreeDecompositionError(f"line {lineno}: malformed line") from None
            edges.append((i, j))
    if header is None:
        raise TreeDecompositionError("missing 's td' line")
    n_bags, _, _ = header
    for i in range(1, n_bags + 1):
        bags.setdefault(i, frozenset())
    td = TreeDecomposition(bags=bags, edges=tuple(edges))
    if g is not None:
        td.validate(g)
    return td


def dump_td(td: TreeDecomposition, n: int) -> str:
    width_plus_1 = max(len(b) for b in td.bags.values())
    out = [f"s td {len(td.bags)} {width_plus_1} {n}"]
    for i in sorted(td.bags):
        out.append("b " + " ".join([str(i)] + [str(v) for v in sorted(td.bags[i])]))
    for i, j in td.edges:
        out.append(f"{i} {j}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Nice form.
# ---------------------------------------------------------------------------

@dataclass
class NiceNode:
    kind: str  # leaf | introduce | forget | join
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None  # the vertex introduced/forgotten
    below: frozenset[int] = frozenset()  # D(B): bag plus all descendant-bag vertices


@dataclass
class NiceTreeDecomposition:
    nodes: list[NiceNode] = field(default_factory=list)
    root: int = -1

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def postorder(self) -> list[int]:
        order: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node_id, expanded = stack.pop()
            if expanded:
                order.append(node_id)
            else:
                stack.append((node_id, True))
                for ch in self.nodes[node_id].children:
                    stack.append((ch, False))
        return order

    def _fill_below(self) -> None:
        for node_id in self.postorder():
            nd = self.nodes[node_id]
            below = set(nd.bag)
            for ch in nd.children:
                below |= self.nodes[ch].below
            nd.below = frozenset(below)


def make_nice(td: TreeDecomposition, g: Graph) -> NiceTreeDecomposition:
    """Transform a valid decomposition into nice form of equal width."""
    td.validate(g)
    ntd = NiceTreeDecomposition()

    def add(kind: str, bag: frozenset[int], children: tuple[int, ...] = (), vertex: int | None = None) -> int:
        ntd.nodes.append(NiceNode(kind=kind, bag=bag, children=children, vertex=vertex))
        return len(ntd.nodes) - 1

    def leaf_chain(bag: frozenset[int]) -> int:
        vs = sorted(bag)
        node = add("leaf", frozenset([vs[0]]))
        current = {vs[0]}
        for v in vs[1:]:
            current.add(v)
            node = add("introduce", frozenset(current), (node,), v)
        return node

    def morph(node: int, src: frozenset[int], dst: frozenset[int]) -> int:
        """Forget src-only vertices then introduce dst-only ones."""
        current = set(src)
        for v in sorted(src - dst):
            current.remove(v)
            node = add("forget", frozenset(current), (node,), v)
        for v in sorted(dst - src):
            current.add(v)
            node = add("introduce", frozenset(current), (node,), v)
        return node

    # root the bag tree at the smallest bag id
    adj: dict[int, list[int]] = {i: [] for i in td.bags}
    for i, j in td.edges:
        adj[i].append(j)
        adj[j].append(i)
    root_bag = min(td.bags)
    parent: dict[int, int | None] = {root_bag: None}
    order = [root_bag]
    stack = [root_bag]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
                stack.append(y)
    children_of: dict[int, list[int]] = {i: [] for i in td.bags}
    for x in order[1:]:
        children_of[parent[x]].append(x)

    def build(bag_id: int) -> int:
        bag = td.bags[bag_id]
        kids = sorted(children_of[bag_id])
        if not kids:
            return leaf_chain(bag)
        tops = [morph(build(k), td.bags[k], bag) for k in kids]
        node = tops[0]
        for other in tops[1:]:
            node = add("join", bag, (node, other))
        return node

    top = build(root_bag)
    # reduce the root to a single vertex by forgetting
    bag = set(td.bags[root_bag])
    for v in sorted(bag)[:-1]:
        bag.remove(v)
        top = add("forget", frozenset(bag), (top,), v)
    ntd.root = top
    ntd._fill_below()
    return ntd


def min_fill_td(g: Graph) -> TreeDecomposition:
    """Heuristic decomposition from a min-fill elimination ordering.

    Test-corpus plumbing: the width is not guaranteed optimal.
    """
    adj: dict[int, set[int]] = {v: set(g.neighbors(v)) for v in range(1, g.n + 1)}
    remaining = set(adj)
    elim_bags: list[tuple[int, frozenset[int]]] = []
    while remaining:
        best_v = None
        best_fill = None
        for v in sorted(remaining):
            nbrs = adj[v] & remaining
            nl = sorted(nbrs)
            fill = sum(
                1
                for i in range(len(nl))
                for j in range(i + 1, len(nl))
                if nl[j] not in adj[nl[i]]
            )
            if best_fill is None or fill < best_fill:
                best_fill = fill
                best_v = v
        nbrs = adj[best_v] & remaining
        elim_bags.append((best_v, frozenset(nbrs)))
        nl = sorted(nbrs)
        for i in range(len(nl)):
            for j in range(i + 1, len(nl)):
                adj[nl[i]].add(nl[j])
                adj[nl[j]].add(nl[i])
        remaining.remove(best_v)

    elim_pos = {v: i for i, (v, _) in enumerate(elim_bags)}
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for i, (v, nbrs) in enumerate(elim_bags):
        bags[i + 1] = frozenset({v} | nbrs)
        if nbrs:
            j = min(elim_pos[w] for w in nbrs)
            edges.append((i + 1, j + 1))
    return TreeDecomposition(bags=bags, edges=tuple(edges))
