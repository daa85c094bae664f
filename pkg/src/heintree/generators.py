"""Tree families used as hidden trees and complexity fixtures.

Every generator labels leaves ``L1 .. Ln`` and returns a valid
:class:`~heintree.tree.WeightedTree`.  Rooted families (filled trees,
beanstalks, caterpillars) keep their intended root in ``tree.root``; when that
root had only two children it was merged away and the root is the edge that
replaced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from heintree.beanstalk import GrowthSpec, beanstalk_violations, g_at_least
from heintree.complexity import LayerDegreeSequence
from heintree.rng import Mcg64
from heintree.tree import WeightedTree, suppress_degree2, validate


@dataclass(frozen=True)
class WeightMode:
    """``unit`` weights, or rationals ``p/q`` with p in [1, hi] and q in [1, 8]."""

    kind: str = "unit"
    seed: int = 0
    hi: int = 10

    @classmethod
    def unit(cls) -> "WeightMode":
        return cls("unit")

    @classmethod
    def random(cls, seed: int, hi: int = 10) -> "WeightMode":
        return cls("random", seed, hi)

    def weights(self, count: int) -> list[Fraction]:
        if self.kind == "unit":
            return [Fraction(1)] * count
        rng = Mcg64(self.seed)
        return [Fraction(rng.between(1, self.hi), rng.between(1, 8)) for _ in range(count)]


UNIT = WeightMode.unit()


def _finish(pairs, labels, weight_mode: WeightMode, root=None) -> WeightedTree:
    pairs = sorted((min(u, v), max(u, v)) for u, v in pairs)
    ws = weight_mode.weights(len(pairs))
    tree = WeightedTree([(u, v, w) for (u, v), w in zip(pairs, ws)], labels, root=root)
    tree = suppress_degree2(tree)
    problems = validate(tree)
    if problems:
        raise AssertionError(f"generator produced an invalid tree: {problems}")
    return tree


def make_filled(seq, weight_mode: WeightMode = UNIT) -> WeightedTree:
    """Filled tree: every node at depth d has ``seq[d]`` children."""
    if not isinstance(seq, LayerDegreeSequence):
        seq = LayerDegreeSequence(tuple(seq))
    pairs = []
    layer = [0]
    next_id = 1
    for q in seq.q:
        nxt = []
        for parent in layer:
            for _ in range(q):
                pairs.append((parent, next_id))
                nxt.append(next_id)
                next_id += 1
        layer = nxt
    labels = {node: f"L{i + 1}" for i, node in enumerate(layer)}
    return _finish(pairs, labels, weight_mode, root=0)


def make_caterpillar(n: int, weight_mode: WeightMode = UNIT) -> WeightedTree:
    """Spine of ``n - 2`` internal nodes with one pendant leaf each, plus one
    extra leaf at each end.  Rooted at the edge of leaf L1."""
    if n < 2:
        raise ValueError("a caterpillar needs n >= 2")
    if n == 2:
        return _finish([(0, 1)], {0: "L1", 1: "L2"}, weight_mode, root=(0, 1))
    spine = list(range(n, 2 * n - 2))
    pairs = list(zip(spine, spine[1:]))
    # leaf i (0-based) hangs off spine[clamp(i - 1)]
    for i in range(n):
        pairs.append((i, spine[min(max(i - 1, 0), len(spine) - 1)]))
    labels = {i: f"L{i + 1}" for i in range(n)}
    return _finish(pairs, labels, weight_mode, root=(0, spine[0]))


def _largest_small_side(g: GrowthSpec, m: int) -> int:
    """Largest s <= m // 2 with s <= g(m - s); the admissible s form a prefix."""
    lo, hi = 1, m // 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if g_at_least(g, m - mid, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def make_beanstalk(spec: GrowthSpec, n: int, weight_mode: WeightMode = UNIT) -> WeightedTree:
    """Binary g-beanstalk with n leaves, as unbalanced as g allows at each node.

    Each node with m leaves gives its smaller child the largest admissible
    share, so the output sits on the edge of the imbalance rule.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        raise ValueError("a single leaf is not a valid unrooted tree")
    g = spec.clamped()
    pairs = []
    leaf_nodes = []
    next_id = 1
    stack = [(0, n)]
    while stack:
        node, m = stack.pop()
        if m == 1:
            leaf_nodes.append(node)
            continue
        small = _largest_small_side(g, m)
        large_child, small_child = next_id, next_id + 1
        next_id += 2
        pairs += [(node, large_child), (node, small_child)]
        # push small first so the larger side is labelled first
        stack.append((small_child, small))
        stack.append((large_child, m - small))
    labels = {node: f"L{i + 1}" for i, node in enumerate(leaf_nodes)}
    tree = _finish(pairs, labels, weight_mode, root=0)
    bad = beanstalk_violations(tree, spec)
    if bad:
        raise AssertionError(f"beanstalk audit failed: {bad[:5]}")
    return tree


def make_random(n: int, k: int, seed: int, weight_mode: Optional[WeightMode] = None) -> WeightedTree:
    """Grow a tree by attaching leaves at uniformly chosen sites.

    A site is either an edge (split by a new internal node) or an internal
    node with degree below k.  Deterministic in *seed*; the default weight
    mode is random rationals drawn with the same seed.
    """
    if n < 2 or k < 3:
        raise ValueError("need n >= 2 and k >= 3")
    if weight_mode is None:
        weight_mode = WeightMode.random(seed)
    rng = Mcg64(seed)
    adj: dict[int, set[int]] = {0: {1}, 1: {0}}
    labels = {0: "L1", 1: "L2"}
    next_id = 2
    for i in range(3, n + 1):
        edges = sorted((u, v) for u in adj for v in adj[u] if u < v)
        hubs = sorted(u for u in adj if 3 <= len(adj[u]) < k)
        pick = rng.below(len(edges) + len(hubs))
        leaf = next_id
        next_id += 1
        labels[leaf] = f"L{i}"
        if pick < len(edges):
            u, v = edges[pick]
            mid = next_id
            next_id += 1
            adj[u].discard(v)
            adj[v].discard(u)
            adj[mid] = {u, v, leaf}
            adj[u].add(mid)
            adj[v].add(mid)
            adj[leaf] = {mid}
        else:
            hub = hubs[pick - len(edges)]
            adj[hub].add(leaf)
            adj[leaf] = {hub}
    pairs = [(u, v) for u in adj for v in adj[u] if u < v]
    return _finish(pairs, labels, weight_mode)


def fig2_fixture() -> WeightedTree:
    """The 10-leaf unit tree whose best split edge joins two complexity-2 sides.

    Internal nodes: A={L1,L2}, B={A,L3,L4,C}, C={B,D,E}, D={L5,L6,L7},
    E={L8,F}, F={L9,L10}.  Several edges tie at the minimum unrooted
    complexity of 4; ids are B=0, C=1, A=2, D=3, E=4, F=5 and L1..L10 = 6..15,
    so the smallest-edge tie-break selects B-C.
    """
    B, C, A, D, E, F = range(6)
    L = {i: 5 + i for i in range(1, 11)}
    pairs = [
        (L[1], A), (L[2], A), (A, B), (L[3], B), (L[4], B), (B, C),
        (C, D), (L[5], D), (L[6], D), (L[7], D),
        (C, E), (L[8], E), (E, F), (L[9], F), (L[10], F),
    ]
    labels = {node: f"L{i}" for i, node in L.items()}
    return _finish(pairs, labels, UNIT)


def all_trees(n: int) -> Iterator[WeightedTree]:
    """Every unrooted tree on leaves L1..Ln with no degree-2 nodes, unit weights.

    Leaf n is added to each tree on n - 1 leaves at every edge and every
    internal node; removing it again recovers the parent uniquely, so each
    tree appears once.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    shapes = [((0, 1),)]
    for m in range(3, n + 1):
        grown = []
        for edges in shapes:
            nodes = {x for e in edges for x in e}
            nxt = max(nodes) + 1
            leaf = m - 1
            # leaves keep ids 0..m-1; internal ids start at 1000
            mid = max(nxt, 1000)
            deg: dict[int, int] = {}
            for u, v in edges:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            for i, (u, v) in enumerate(edges):
                rest = edges[:i] + edges[i + 1 :]
                grown.append(rest + ((u, mid), (mid, v), (mid, leaf)))
            for x in sorted(deg):
                if deg[x] >= 3:
                    grown.append(edges + ((x, leaf),))
        shapes = grown
    labels = {i: f"L{i + 1}" for i in range(n)}
    for edges in shapes:
        yield _finish(edges, labels, UNIT)
