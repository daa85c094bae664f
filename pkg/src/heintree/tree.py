"""Unrooted leaf-labelled trees with exact positive edge weights.

Nodes are plain integers.  Only leaves carry labels.  Weights are
``fractions.Fraction`` so that every distance comparison downstream is exact.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

Weight = Fraction
Edge = Tuple[int, int]
Root = Union[int, Edge, None]


class UnknownLabelError(KeyError):
    """A leaf label that the tree does not contain."""


def as_weight(value) -> Fraction:
    """Coerce ints, strings ("7/2", "2.5") and Fractions to an exact weight."""
    if isinstance(value, float):
        raise TypeError("float weights are not accepted; pass a Fraction or string")
    return Fraction(value)


def _edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class WeightedTree:
    """An unrooted tree with positive edge weights and labelled leaves.

    Construction only records structure; it does not enforce the tree
    invariants.  Use :func:`validate` to list violations.

    Parameters
    ----------
    edges : iterable of (u, v, weight)
    labels : mapping node -> label
    root : optional rooted designation, either a node or an edge ``(u, v)``.
        Unrooted consumers ignore it.
    nodes : optional extra isolated nodes (only meaningful for validation).
    """

    __slots__ = ("_adj", "_labels", "_leaf_of", "_root")

    def __init__(
        self,
        edges: Iterable[Tuple[int, int, object]],
        labels: Mapping[int, str],
        root: Root = None,
        nodes: Iterable[int] = (),
    ) -> None:
        adj: dict[int, dict[int, Fraction]] = {n: {} for n in nodes}
        for u, v, w in edges:
            w = as_weight(w)
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        for n in labels:
            adj.setdefault(n, {})
        self._adj = adj
        self._labels = dict(labels)
        self._leaf_of = {lab: n for n, lab in self._labels.items()}
        if isinstance(root, tuple):
            root = _edge_key(*root)
        self._root = root

    # -- structure -------------------------------------------------------

    @property
    def adj(self) -> Mapping[int, Mapping[int, Fraction]]:
        """Adjacency ``node -> {neighbour: weight}``.  Treat as read-only."""
        return self._adj

    @property
    def labels(self) -> Mapping[int, str]:
        return self._labels

    @property
    def root(self) -> Root:
        return self._root

    @property
    def nodes(self) -> frozenset:
        return frozenset(self._adj)

    def edges(self) -> Iterator[Tuple[int, int, Fraction]]:
        for u, nbrs in self._adj.items():
            for v, w in nbrs.items():
                if u < v:
                    yield u, v, w

    def degree(self, node: int) -> int:
        return len(self._adj[node])

    def leaves(self) -> list[int]:
        return [n for n, nbrs in self._adj.items() if len(nbrs) == 1]

    def label_set(self) -> frozenset:
        return frozenset(self._leaf_of)

    def sorted_labels(self) -> list[str]:
        return sorted(self._leaf_of)

    @property
    def n_leaves(self) -> int:
        return len(self._leaf_of)

    def node_of(self, label: str) -> int:
        try:
            return self._leaf_of[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    def weight(self, u: int, v: int) -> Fraction:
        return self._adj[u][v]

    def with_root(self, root: Root) -> "WeightedTree":
        return WeightedTree(self.edges(), self._labels, root=root, nodes=self._adj)

    # -- traversal -------------------------------------------------------

    def distances_from(self, source: int) -> dict[int, Fraction]:
        """Path-weight distance from *source* to every node."""
        dist = {source: Fraction(0)}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for v, w in self._adj[u].items():
                if v not in dist:
                    dist[v] = du + w
                    queue.append(v)
        return dist

    def __repr__(self) -> str:
        return f"WeightedTree(nodes={len(self._adj)}, leaves={sorted(self._leaf_of)})"


@dataclass(frozen=True)
class Violation:
    kind: str
    where: object

    def __str__(self) -> str:
        return f"{self.kind} at {self.where}"


def validate(tree: WeightedTree) -> list[Violation]:
    """Return every invariant violation; an empty list means the tree is valid."""
    out: list[Violation] = []
    adj = tree.adj
    n_nodes = len(adj)
    n_edges = sum(1 for _ in tree.edges())
    if n_nodes < 2:
        out.append(Violation("too-few-nodes", n_nodes))
    if n_nodes and n_edges != n_nodes - 1:
        out.append(Violation("edge-count", (n_nodes, n_edges)))
    if n_nodes:
        start = next(iter(adj))
        if len(tree.distances_from(start)) != n_nodes:
            out.append(Violation("disconnected", start))
    for u, v, w in tree.edges():
        if w <= 0:
            out.append(Violation("nonpositive-weight", (u, v)))
    seen: dict[str, int] = {}
    for node in sorted(adj):
        deg = len(adj[node])
        label = tree.labels.get(node)
        if deg == 2:
            out.append(Violation("degree-2", node))
        if deg == 0 and n_nodes > 1:
            out.append(Violation("isolated", node))
        if deg == 1 and label is None:
            out.append(Violation("unlabelled-leaf", node))
        if deg > 1 and label is not None:
            out.append(Violation("labelled-internal", node))
        if label is not None:
            if label in seen:
                out.append(Violation("duplicate-label", label))
            seen[label] = node
    return out


def leaf_distance(tree: WeightedTree, a: str, b: str) -> Fraction:
    """Sum of edge weights on the path between leaves *a* and *b*."""
    src, dst = tree.node_of(a), tree.node_of(b)
    if src == dst:
        return Fraction(0)
    return tree.distances_from(src)[dst]


def suppress_degree2(tree: WeightedTree) -> WeightedTree:
    """Merge every unlabelled degree-2 node into a single edge.

    Leaf-to-leaf distances are unchanged.  A suppressed root node turns the
    root designation into the merged edge.
    """
    adj = {u: dict(nbrs) for u, nbrs in tree.adj.items()}
    root = tree.root
    for y in sorted(adj):
        if len(adj[y]) != 2 or y in tree.labels:
            continue
        (x, wx), (z, wz) = adj[y].items()
        del adj[x][y], adj[z][y], adj[y]
        adj[x][z] = adj[z][x] = wx + wz
        if root == y or (isinstance(root, tuple) and y in root):
            root = _edge_key(x, z)
    edges = [(u, v, w) for u, nbrs in adj.items() for v, w in nbrs.items() if u < v]
    return WeightedTree(edges, tree.labels, root=root, nodes=adj)


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric leaf-to-leaf distances, keyed by sorted label pairs."""

    labels: Tuple[str, ...]
    entries: Mapping[Tuple[str, str], Fraction]

    def __getitem__(self, pair: Tuple[str, str]) -> Fraction:
        a, b = pair
        if a == b:
            if a not in self.labels:
                raise UnknownLabelError(a)
            return Fraction(0)
        key = (a, b) if a < b else (b, a)
        try:
            return self.entries[key]
        except KeyError:
            raise UnknownLabelError(pair) from None

    def rows(self) -> list[list[Fraction]]:
        return [[self[a, b] for b in self.labels] for a in self.labels]

    def four_point_violations(self) -> list[Tuple[str, str, str, str]]:
        """Quadruples whose two largest pair-sums differ."""
        bad = []
        for a, b, c, d in itertools.combinations(self.labels, 4):
            sums = sorted(
                (self[a, b] + self[c, d], self[a, c] + self[b, d], self[a, d] + self[b, c])
            )
            if sums[1] != sums[2]:
                bad.append((a, b, c, d))
        return bad


def distance_matrix(tree: WeightedTree) -> DistanceMatrix:
    labels = tuple(tree.sorted_labels())
    entries = {}
    for i, a in enumerate(labels):
        dist = tree.distances_from(tree.node_of(a))
        for b in labels[i + 1 :]:
            entries[(a, b)] = dist[tree.node_of(b)]
    return DistanceMatrix(labels, entries)


def trees_equivalent(t1: WeightedTree, t2: WeightedTree) -> bool:
    """Same labels and identical leaf distances.

    For positive weights and no degree-2 nodes this is equality of topology
    and weights up to internal node names.
    """
    if t1.label_set() != t2.label_set():
        return False
    return distance_matrix(t1).entries == distance_matrix(t2).entries


def relabel_nodes(tree: WeightedTree, mapping: Mapping[int, int]) -> WeightedTree:
    """Rename node ids; mainly useful for tests of id-independence."""
    edges = [(mapping[u], mapping[v], w) for u, v, w in tree.edges()]
    labels = {mapping[n]: lab for n, lab in tree.labels.items()}
    root = tree.root
    if isinstance(root, tuple):
        root = (mapping[root[0]], mapping[root[1]])
    elif root is not None:
        root = mapping[root]
    return WeightedTree(edges, labels, root=root, nodes=(mapping[n] for n in tree.adj))


def subtree_nodes(tree, top: int, parent: Optional[int]) -> list[int]:
    """Nodes of the component containing *top* once edge (top, parent) is cut."""
    out = [top]
    stack = [(top, parent)]
    adj = tree.adj
    while stack:
        u, p = stack.pop()
        for v in adj[u]:
            if v != p:
                out.append(v)
                stack.append((v, u))
    return out
