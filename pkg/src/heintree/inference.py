"""Hein's insertion algorithm: rebuild a hidden tree from leaf-distance queries.

Leaves are inserted one at a time.  For each new leaf z the current tree is
split at the edge-root (the edge minimising ``max(f(T_u), f(T_v)) + 2``), one
anchor calculation decides which side z belongs to, and the search descends
that side.  At every node the child subtrees are probed in non-increasing
complexity order, and every subtree is represented by the leaf reached by
always following its first-probed child.  With that choice the probe that
sent the search into a subtree doubles as the first probe inside it, so an
insertion never costs more than the unrooted complexity of the tree it is
inserted into.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from heintree.complexity import combine, directed_values, unrooted_complexity
from heintree.oracle import DistanceOracle, QueryReport
from heintree.tree import WeightedTree


class InconsistentDistancesError(ValueError):
    """Oracle answers that no positively weighted tree can produce."""


def sigma(dxy: Fraction, dxz: Fraction, dyz: Fraction) -> Fraction:
    """Distance from x to the point where z's path meets the x-y path."""
    value = (dxy + dxz - dyz) / 2
    if value < 0 or value > dxy:
        raise InconsistentDistancesError(
            f"anchor offset {value} outside [0, {dxy}] (d(x,y)={dxy}, d(x,z)={dxz}, d(y,z)={dyz})"
        )
    return value


AT_NODE = "at_node"
INSIDE_EDGE = "inside_edge"
BEYOND = "beyond"
BEFORE = "before"


@dataclass(frozen=True)
class AnchorResult:
    """Where an anchor falls relative to one step ``near -> far`` of the x-y path.

    ``at_node``: exactly at ``near``.  ``inside_edge``: strictly inside the
    edge, ``offset`` past ``near``.  ``beyond``: at ``far`` or further, so in
    the subtree hanging from ``far``.  ``before``: on x's side of ``near``.
    """

    dist_from_x: Fraction
    kind: str
    near: int
    far: int
    offset: Fraction = Fraction(0)

    @property
    def node(self) -> Optional[int]:
        return self.near if self.kind == AT_NODE else None

    @property
    def edge(self) -> Optional[tuple[int, int]]:
        return (self.near, self.far) if self.kind == INSIDE_EDGE else None


def _classify(s: Fraction, near: int, far: int, near_pos: Fraction, far_pos: Fraction) -> AnchorResult:
    if s == near_pos:
        return AnchorResult(s, AT_NODE, near, far)
    if s < near_pos:
        return AnchorResult(s, BEFORE, near, far)
    if s < far_pos:
        return AnchorResult(s, INSIDE_EDGE, near, far, s - near_pos)
    return AnchorResult(s, BEYOND, near, far)


class PartialTree:
    """The tree under construction.  Mutable; node ids are dense integers."""

    def __init__(self) -> None:
        self.adj: dict[int, dict[int, Fraction]] = {}
        self.labels: dict[int, str] = {}
        self.leaf_of: dict[str, int] = {}
        self.last_complexity: Optional[int] = None
        self._next = 0

    @classmethod
    def seed(cls, a: str, b: str, weight: Fraction) -> "PartialTree":
        if weight <= 0:
            raise InconsistentDistancesError(f"d({a},{b}) = {weight} is not positive")
        tree = cls()
        x, y = tree._leaf(a), tree._leaf(b)
        tree._link(x, y, weight)
        return tree

    def _node(self) -> int:
        node = self._next
        self._next += 1
        self.adj[node] = {}
        return node

    def _leaf(self, label: str) -> int:
        node = self._node()
        self.labels[node] = label
        self.leaf_of[label] = node
        return node

    def _link(self, u: int, v: int, w: Fraction) -> None:
        self.adj[u][v] = w
        self.adj[v][u] = w

    def attach_at_node(self, node: int, label: str, weight: Fraction) -> int:
        if node in self.labels:
            raise InconsistentDistancesError(f"cannot hang {label} off leaf {self.labels[node]}")
        if weight <= 0:
            raise InconsistentDistancesError(f"pendant edge for {label} has length {weight}")
        leaf = self._leaf(label)
        self._link(node, leaf, weight)
        return leaf

    def split_edge(self, u: int, v: int, offset: Fraction, label: str, weight: Fraction) -> int:
        """Put a new node ``offset`` along edge u-v and hang the leaf from it."""
        w = self.adj[u][v]
        if not 0 < offset < w:
            raise InconsistentDistancesError(f"split offset {offset} outside edge of length {w}")
        if weight <= 0:
            raise InconsistentDistancesError(f"pendant edge for {label} has length {weight}")
        del self.adj[u][v], self.adj[v][u]
        mid = self._node()
        self._link(u, mid, offset)
        self._link(mid, v, w - offset)
        leaf = self._leaf(label)
        self._link(mid, leaf, weight)
        return leaf

    def distances_from(self, source: int) -> dict[int, Fraction]:
        dist = {source: Fraction(0)}
        stack = [source]
        while stack:
            u = stack.pop()
            for v, w in self.adj[u].items():
                if v not in dist:
                    dist[v] = dist[u] + w
                    stack.append(v)
        return dist

    def path(self, a: int, b: int) -> list[int]:
        parent = {a: None}
        stack = [a]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if v not in parent:
                    parent[v] = u
                    stack.append(v)
        out = [b]
        while out[-1] != a:
            out.append(parent[out[-1]])
        return out[::-1]

    @property
    def n_leaves(self) -> int:
        return len(self.labels)

    def to_tree(self) -> WeightedTree:
        edges = [(u, v, w) for u, nbrs in self.adj.items() for v, w in nbrs.items() if u < v]
        return WeightedTree(edges, self.labels)


@dataclass
class _Orientation:
    """Per-insertion view: ``info[(c, p)] = (complexity, smallest label)`` of the
    subtree at c cut off from p.  First-probe chains are memoised in ``chains``."""

    info: dict
    chains: dict = field(default_factory=dict)

    @property
    def complexity(self) -> dict:
        return {key: val[0] for key, val in self.info.items()}

    def children(self, adj, node: int, parent: Optional[int]) -> list[int]:
        info = self.info
        kids = [c for c in adj[node] if c != parent]
        kids.sort(key=lambda c: (-info[(c, node)][0], info[(c, node)][1]))
        return kids

    def first_child(self, adj, node: int, parent: Optional[int]) -> int:
        info = self.info
        return min((c for c in adj[node] if c != parent), key=lambda c: (-info[(c, node)][0], info[(c, node)][1]))


def _orient(partial: PartialTree) -> _Orientation:
    labels = partial.labels

    def fold(node, vals):
        if not vals:
            return 0, labels[node]
        return combine([c for c, _ in vals]), min(lab for _, lab in vals)

    return _Orientation(directed_values(partial, fold))


def choose_edge_root(partial, orientation=None) -> tuple[int, int]:
    """Edge minimising ``max(f(T_u), f(T_v)) + 2``; ties to the smallest id pair."""
    directed = orientation.complexity if orientation is not None else None
    return unrooted_complexity(partial, directed).argmin_edge


def _first_chain(partial, node: int, parent: Optional[int], orientation) -> tuple[int, Fraction]:
    """Follow first-probed children down to a leaf; return it and its depth."""
    chains = orientation.chains
    adj = partial.adj
    walked = []
    while (node, parent) not in chains:
        if node in partial.labels:
            chains[(node, parent)] = (node, Fraction(0))
            break
        walked.append((node, parent))
        node, parent = orientation.first_child(adj, node, parent), node
    leaf, depth = chains[(node, parent)]
    for key in reversed(walked):
        depth = depth + adj[key[0]][node]
        chains[key] = (leaf, depth)
        node = key[0]
    return leaf, depth


def representative_leaf(partial, subtree_root: int, toward: Optional[int], orientation=None) -> int:
    """Leaf reached from *subtree_root* (cut off from *toward*) by always
    taking the first child in probe order.

    Probe order is non-increasing complexity, then smallest contained label,
    so among equally complex subtrees this is the smallest label.
    """
    if orientation is None:
        orientation = _orient(partial)
    return _first_chain(partial, subtree_root, toward, orientation)[0]


def classify_anchor(partial: PartialTree, x: str, y: str, sigma_value: Fraction, search_from: int) -> AnchorResult:
    """Classify an anchor offset against the step from *search_from* toward y."""
    xn, yn = partial.leaf_of[x], partial.leaf_of[y]
    path = partial.path(xn, yn)
    dist = partial.distances_from(xn)
    if not 0 <= sigma_value <= dist[yn]:
        raise InconsistentDistancesError(f"anchor offset {sigma_value} outside [0, {dist[yn]}]")
    i = path.index(search_from)
    if i + 1 == len(path):
        raise ValueError("search_from must not be the end of the path")
    far = path[i + 1]
    return _classify(sigma_value, search_from, far, dist[search_from], dist[far])


def insert_leaf(partial: PartialTree, z: str, oracle: DistanceOracle) -> int:
    """Insert leaf *z* into *partial* in place; return the oracle queries spent."""
    if z in partial.leaf_of:
        raise ValueError(f"{z} is already in the tree")
    before = oracle.query_count
    adj = partial.adj
    known: dict[int, Fraction] = {}

    def dist_to_z(leaf: int) -> Fraction:
        if leaf not in known:
            known[leaf] = oracle.query(partial.labels[leaf], z)
        return known[leaf]

    orient = _orient(partial)
    split = unrooted_complexity(partial, orient.complexity)
    partial.last_complexity = split.value
    u, v = split.argmin_edge
    x, x_to_u = _first_chain(partial, u, v, orient)
    y, y_to_v = _first_chain(partial, v, u, orient)
    w_uv = adj[u][v]
    s = sigma(x_to_u + w_uv + y_to_v, dist_to_z(x), dist_to_z(y))
    first = _classify(s, u, v, x_to_u, x_to_u + w_uv)
    if first.kind == INSIDE_EDGE:
        partial.split_edge(u, v, first.offset, z, known[x] - s)
        return oracle.query_count - before
    # positions along the path from the reference leaf are built up as the
    # search descends, so no whole-tree distance sweep is needed
    if first.kind == BEYOND:
        ref, cur, parent, ref_to_cur = x, v, u, x_to_u + w_uv
    else:
        ref, cur, parent, ref_to_cur = y, u, v, y_to_v + w_uv
    d_ref = known[ref]

    while True:
        if cur in partial.labels:
            raise InconsistentDistancesError(f"{z} would attach below leaf {partial.labels[cur]}")
        for child in orient.children(adj, cur, parent):
            ref_to_child = ref_to_cur + adj[cur][child]
            probe, depth = _first_chain(partial, child, cur, orient)
            s = sigma(ref_to_child + depth, d_ref, dist_to_z(probe))
            step = _classify(s, cur, child, ref_to_cur, ref_to_child)
            if step.kind == AT_NODE:
                continue
            if step.kind == BEFORE:
                raise InconsistentDistancesError(f"anchor for {z} moved back above node {cur}")
            if step.kind == INSIDE_EDGE:
                partial.split_edge(cur, child, step.offset, z, d_ref - s)
                return oracle.query_count - before
            cur, parent, ref_to_cur = child, cur, ref_to_child
            break
        else:
            partial.attach_at_node(cur, z, d_ref - ref_to_cur)
            return oracle.query_count - before


InsertObserver = Callable[[PartialTree, str, int], None]


def infer_tree(
    labels: Sequence[str],
    oracle: DistanceOracle,
    before_insert: Optional[Callable[[PartialTree, str], None]] = None,
    after_insert: Optional[InsertObserver] = None,
) -> tuple[WeightedTree, QueryReport]:
    """Reconstruct the tree on *labels*, inserting them in the given order.

    The first two labels seed a single edge (one query).  The optional hooks
    see the partial tree before each insertion and the queries it used after.
    """
    labels = list(labels)
    if len(labels) < 2:
        raise ValueError("need at least two labels")
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    before = oracle.query_count
    partial = PartialTree.seed(labels[0], labels[1], oracle.query(labels[0], labels[1]))
    report = QueryReport(initial_queries=oracle.query_count - before)
    for z in labels[2:]:
        if before_insert is not None:
            before_insert(partial, z)
        used = insert_leaf(partial, z, oracle)
        report.per_insertion.append(used)
        report.pre_complexity.append(partial.last_complexity)
        if after_insert is not None:
            after_insert(partial, z, used)
    return partial.to_tree(), report
