"""Independent reference computations shared by the test modules.

These deliberately avoid the package's own complexity and distance code so
that they can serve as oracles for it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest


def naive_rooted(adj, node, parent):
    """Worst-case probe count below *node*, minimised over every probe order.

    Probing child i (1-based) after i - 1 misses, then recursing, costs
    i - 1 + f(child); the last child needs no probe if all others missed,
    which is why the cost is i - 1 rather than i.
    """
    kids = [c for c in adj[node] if c != parent]
    if not kids:
        return 0
    vals = [naive_rooted(adj, c, node) for c in kids]
    best = None
    for order in permutations(range(len(vals))):
        worst = max(vals[j] + i for i, j in enumerate(order))
        best = worst if best is None else min(best, worst)
    return best


def naive_unrooted(adj):
    best = None
    for u in adj:
        for v in adj[u]:
            if u < v:
                val = max(naive_rooted(adj, u, v), naive_rooted(adj, v, u)) + 2
                best = val if best is None else min(best, val)
    return best


def bfs_distances(adj, source):
    """Plain breadth-first path sums; the tree has a unique path per pair."""
    dist = {source: Fraction(0)}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for v, w in adj[u].items():
                if v not in dist:
                    dist[v] = dist[u] + w
                    nxt.append(v)
        frontier = nxt
    return dist


def path_between(adj, a, b):
    parent = {a: None}
    frontier = [a]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in parent:
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return out[::-1]


@pytest.fixture
def star3():
    from heintree.tree import WeightedTree

    return WeightedTree([(0, 1, 1), (0, 2, 1), (0, 3, 1)], {1: "x", 2: "y", 3: "z"})
