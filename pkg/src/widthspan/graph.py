"""Simple connected unweighted graphs: representation, I/O, and generators.

Vertices are labeled 1..n.  Edges are stored as (u, v) pairs with u < v and
carry stable 1-based edge IDs assigned in file (or generation) order; all
deterministic tie-breaking downstream uses these IDs.

Edge-list file format (line oriented):
    c <comment>
    p <n> <m>
    e <u> <v>        (m lines, 1 <= u, v <= n)
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Malformed edge-list document."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GraphValidationError(ValueError):
    """Structurally invalid graph (loop, duplicate, disconnected, bad label)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Immutable simple connected graph.

    edges[i] is the endpoint pair of the edge with ID i+1.  ``incident[v]``
    lists the IDs of edges touching vertex v.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    incident: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        return self.edges[edge_id - 1]

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def neighbors(self, v: int) -> list[int]:
        out = []
        for eid in self.incident[v]:
            a, b = self.edges[eid - 1]
            out.append(b if a == v else a)
        return out

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set()

    def _edge_set(self) -> frozenset[tuple[int, int]]:
        cached = getattr(self, "_edge_set_cache", None)
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set_cache", cached)
        return cached


def _build_graph(n: int, raw_edges: list[tuple[int, int]], lines: list[int] | None = None) -> Graph:
    """Validate and assemble a Graph.  ``lines`` maps edge index -> source line."""

    def where(i: int) -> int | None:
        return lines[i] if lines is not None else None

    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for i, (u, v) in enumerate(raw_edges):
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphValidationError(f"vertex out of range in edge ({u}, {v})", where(i))
        if u == v:
            raise GraphValidationError(f"self-loop at vertex {u}", where(i))
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphValidationError(f"duplicate edge ({key[0]}, {key[1]})", where(i))
        seen.add(key)
        edges.append(key)

    incident: list[list[int]] = [[] for _ in range(n + 1)]
    for eid, (u, v) in enumerate(edges, start=1):
        incident[u].append(eid)
        incident[v].append(eid)

    # connectivity
    if n >= 1:
        stack = [1]
        visited = [False] * (n + 1)
        visited[1] = True
        count = 1
        while stack:
            x = stack.pop()
            for eid in incident[x]:
                a, b = edges[eid - 1]
                y = b if a == x else a
                if not visited[y]:
                    visited[y] = True
                    count += 1
                    stack.append(y)
        if count != n:
            raise GraphValidationError(f"graph is disconnected ({count} of {n} vertices reachable)")

    return Graph(n=n, edges=tuple(edges), incident=tuple(tuple(ids) for ids in incident))


def load_graph(text: str) -> Graph:
    """Parse an edge-list document into a validated Graph."""
    n = m = None
    raw_edges: list[tuple[int, int]] = []
    lines: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate header line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("header must be 'p <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer header fields", lineno) from None
            if n < 1 or m < 0:
                raise GraphFormatError("header counts out of range", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge line before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer edge endpoints", lineno) from None
            raw_edges.append((u, v))
            lines.append(lineno)
        else:
            raise GraphFormatError(f"unrecognized line type {parts[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p' header line")
    if m != len(raw_edges):
        raise GraphFormatError(f"header declares {m} edges, found {len(raw_edges)}")
    return _build_graph(n, raw_edges, lines)


def dump_graph(g: Graph) -> str:
    out = [f"p {g.n} {g.m}"]
    out.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Generators.  Each returns (Graph, witness arrangement order) where the
# order is the list of vertices position by position; callers wrap it in a
# LinearArrangement.  All generators are deterministic given the seed.
# ---------------------------------------------------------------------------

FAMILIES = (
    "path",
    "cycle",
    "grid",
    "complete",
    "caterpillar",
    "random_bandwidth",
    "random_cutwidth",
)


def generate(
    family: str,
    n: int,
    seed: int = 0,
    *,
    b: int | None = None,
    p: float | None = None,
    c: int | None = None,
) -> tuple[Graph, list[int]]:
    """Generate a named graph family with a witness arrangement order."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if family == "path":
        edges = [(i, i + 1) for i in range(1, n)]
        order = list(range(1, n + 1))
    elif family == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
        # fold the cycle: 1, 2, n, 3, n-1, ... gives spread <= 2
        order = [1]
        lo, hi = 2, n
        take_low = True
        while lo <= hi:
            if take_low:
                order.append(lo)
                lo += 1
            else:
                order.append(hi)
                hi -= 1
            take_low = not take_low
    elif family == "grid":
        cols = _largest_divisor_at_most(n, math.isqrt(n))
        rows = n // cols
        if rows < 2 or cols < 1:
            raise ValueError(f"cannot factor n={n} into a grid")
        edges = []
        for r in range(rows):
            for col in range(cols):
                v = r * cols + col + 1
                if col + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        edges.sort()
        order = list(range(1, n + 1))
    elif family == "complete":
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        order = list(range(1, n + 1))
    elif family == "caterpillar":
        # spine at odd positions, one leg per spine vertex: identity order
        # has spine spread 2 and leg spread 1.
        edges = []
        for v in range(1, n + 1, 2):
            if v + 2 <= n:
                edges.append((v, v + 2))
            if v + 1 <= n:
                edges.append((v, v + 1))
        edges.sort()
        order = list(range(1, n + 1))
    elif family == "random_bandwidth":
        if b is None or b < 1:
            raise ValueError("random_bandwidth requires b >= 1")
        if p is None or not (0 < p <= 1):
            raise ValueError("random_bandwidth requires 0 < p <= 1")
        rng = random.Random(seed)
        edges = []
        for u in range(1, n + 1):
            for v in range(u + 1, min(u + b, n) + 1):
                if v - u == 1 or rng.random() < p:
                    edges.append((u, v))
        order = list(range(1, n + 1))
    elif family == "random_cutwidth":
        if c is None or c < 1:
            raise ValueError("random_cutwidth requires c >= 1")
        rng = random.Random(seed)
        edges = [(i, i + 1) for i in range(1, n)]
        present = set(edges)
        cut = [1] * (n - 1)  # cut[i] = edges crossing the gap (i+1, i+2)
        for _ in range(4 * n):
            u = rng.randrange(1, n - 1)
            v = rng.randrange(u + 2, n + 1)
            if (u, v) in present:
                continue
            if all(cut[i] < c for i in range(u - 1, v - 1)):
                present.add((u, v))
                edges.append((u, v))
                for i in range(u - 1, v - 1):
                    cut[i] += 1
        edges.sort()
        order = list(range(1, n + 1))
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")

    return _build_graph(n, edges), order


def _largest_divisor_at_most(n: int, k: int) -> int:
    for d in range(k, 0, -1):
        if n % d == 0:
            return d
    return 1
