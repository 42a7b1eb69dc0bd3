import random

import pytest

from widthspan import _kernel_py
from widthspan.kernel import IMPLEMENTATION, distances_in_tree, tree_stretch

try:
    from widthspan import _kernel
except ImportError:  # pragma: no cover - compiled extension absent
    _kernel = None

compiled = pytest.mark.skipif(_kernel is None, reason="compiled kernel not built")


def _random_instance(rng, n):
    """Random connected graph in kernel form (0-based endpoint lists)."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    extra = rng.randrange(0, 2 * n)
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    edge_list = sorted(edges)
    eu = [u for u, _ in edge_list]
    ev = [v for _, v in edge_list]
    height = [rng.randrange(1, 8) for _ in edge_list]
    spread = [rng.randrange(1, n + 1) for _ in edge_list]
    return eu, ev, height, spread


def test_active_implementation_reported():
    assert IMPLEMENTATION in ("cython", "python")


def test_tiny_example_both_kernels():
    # square with a chord; the path edges win on height, the rest stretch
    eu = [0, 1, 2, 0, 0]
    ev = [1, 2, 3, 3, 2]
    height = [1, 1, 1, 2, 3]
    spread = [1, 1, 1, 3, 2]
    for impl in filter(None, (_kernel_py, _kernel)):
        in_tree, stretch = impl.tree_stretch(4, eu, ev, height, spread)
        assert list(in_tree) == [1, 1, 1, 0, 0]
        assert list(stretch) == [1, 1, 1, 3, 2]


@compiled
def test_kernels_agree_on_random_instances():
    rng = random.Random(20240817)
    for _ in range(60):
        n = rng.randrange(2, 40)
        eu, ev, height, spread = _random_instance(rng, n)
        got_py = _kernel_py.tree_stretch(n, eu, ev, height, spread)
        got_c = _kernel.tree_stretch(n, eu, ev, height, spread)
        assert list(got_c[0]) == got_py[0]
        assert list(got_c[1]) == got_py[1]
        in_tree = got_py[0]
        assert list(_kernel.distances_in_tree(n, eu, ev, in_tree)) == list(
            _kernel_py.distances_in_tree(n, eu, ev, in_tree)
        )


def test_stretch_matches_bfs_walk():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(3, 25)
        eu, ev, height, spread = _random_instance(rng, n)
        in_tree, stretch = tree_stretch(n, eu, ev, height, spread)
        adj = {v: [] for v in range(n)}
        for i, keep in enumerate(in_tree):
            if keep:
                adj[eu[i]].append(ev[i])
                adj[ev[i]].append(eu[i])
        for i in range(len(eu)):
            # BFS distance in the tree
            dist = {eu[i]: 0}
            frontier = [eu[i]]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in adj[x]:
                        if y not in dist:
                            dist[y] = dist[x] + 1
                            nxt.append(y)
                frontier = nxt
            assert stretch[i] == dist[ev[i]]


def test_not_connected_raises():
    with pytest.raises(ValueError, match="not connected"):
        tree_stretch(4, [0, 2], [1, 3], [1, 1], [1, 1])


def test_distances_in_tree_validation():
    eu = [0, 1, 0]
    ev = [1, 2, 2]
    with pytest.raises(ValueError, match="n - 1"):
        distances_in_tree(3, eu, ev, [1, 1, 1])
    with pytest.raises(ValueError, match="cycle"):
        distances_in_tree(4, eu + [2], ev + [3], [1, 1, 1, 0])
    assert list(distances_in_tree(3, eu, ev, [1, 1, 0])) == [1, 1, 2]
