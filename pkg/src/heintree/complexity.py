"""Hein complexity of rooted and unrooted trees, and the minimal-leaf calculus.

The rooted complexity of a tree is the worst-case number of anchor
calculations needed to place a new leaf below its root: a leaf has complexity
0, and an internal node with child complexities sorted non-increasingly as
``c_1 >= c_2 >= ... >= c_q`` has ``max_i (c_i + i - 1)``.  The unrooted
complexity picks the edge minimising ``max(f(T_u), f(T_v)) + 2``.

Complexity is purely topological: weights are never read.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

Shape = tuple  # a leaf is (), an internal node is a sorted tuple of child shapes


def combine(child_values: Iterable[int]) -> int:
    """Complexity of a node given the complexities of its child subtrees."""
    if not isinstance(child_values, list):
        child_values = list(child_values)
    n = len(child_values)
    if n < 3:
        if n == 0:
            return 0
        if n == 1:
            return child_values[0]
        a, b = child_values
        return a + 1 if a == b else max(a, b)
    ordered = sorted(child_values, reverse=True)
    return max((c + i for i, c in enumerate(ordered)), default=0)


@dataclass(frozen=True)
class RootedComplexity:
    value: int
    per_node: Mapping[int, int]


@dataclass(frozen=True)
class UnrootedComplexity:
    value: int
    argmin_edge: tuple[int, int]
    per_edge: Mapping[tuple[int, int], int]


def _post_order(adj, root: int, parent: Optional[int]) -> list[tuple[int, Optional[int]]]:
    order = []
    stack = [(root, parent)]
    while stack:
        u, p = stack.pop()
        order.append((u, p))
        stack.extend((v, u) for v in adj[u] if v != p)
    order.reverse()
    return order


def rooted_complexity(tree, root, away_from: Optional[int] = None) -> RootedComplexity:
    """Complexity of *tree* rooted at *root*.

    *root* is a node, or an edge ``(u, v)`` standing for a suppressed
    bifurcating root whose two children are ``u`` and ``v``.  With
    *away_from* set, only the component of *root* left after cutting the edge
    ``(root, away_from)`` is considered.
    """
    adj = tree.adj
    per_node: dict[int, int] = {}
    if isinstance(root, tuple):
        a, b = root
        for top, other in ((a, b), (b, a)):
            for u, p in _post_order(adj, top, other):
                per_node[u] = combine(per_node[v] for v in adj[u] if v != p)
        return RootedComplexity(combine((per_node[a], per_node[b])), per_node)
    for u, p in _post_order(adj, root, away_from):
        per_node[u] = combine(per_node[v] for v in adj[u] if v != p)
    return RootedComplexity(per_node[root], per_node)


def directed_values(tree, fold: Callable[[int, list], object]) -> dict:
    """Evaluate a subtree fold for every orientation of every edge.

    Returns ``values[(u, p)]`` = fold over the component of ``u`` once the
    edge ``(u, p)`` is cut, rooted at ``u``; ``values[(u, None)]`` is the fold
    over the whole tree rooted at ``u``.  Two passes (down, then re-rooting);
    each node costs O(deg^2) fold inputs.
    """
    adj = tree.adj
    start = next((n for n in adj if len(adj[n]) > 1), next(iter(adj)))
    pre = list(reversed(_post_order(adj, start, None)))
    down: dict[int, object] = {}
    for u, p in reversed(pre):
        down[u] = fold(u, [down[c] for c in adj[u] if c != p])
    values: dict = {}
    for u, p in pre:
        seen = {c: down[c] for c in adj[u] if c != p}
        if p is not None:
            values[(u, p)] = down[u]
            seen[p] = values[(p, u)]
        values[(u, None)] = fold(u, list(seen.values()))
        for c in adj[u]:
            if c != p:
                values[(u, c)] = fold(u, [val for x, val in seen.items() if x != c])
    return values


def directed_complexities(tree) -> dict:
    return directed_values(tree, lambda _node, vals: combine(vals))


def unrooted_complexity(tree, directed: Optional[dict] = None) -> UnrootedComplexity:
    """Minimum over edges uv of ``max(f(T_u), f(T_v)) + 2``.

    Ties go to the lexicographically smallest ``(min id, max id)`` edge.
    """
    if directed is None:
        directed = directed_complexities(tree)
    per_edge = {}
    for u, nbrs in tree.adj.items():
        for v in nbrs:
            if u < v:
                per_edge[(u, v)] = max(directed[(u, v)], directed[(v, u)]) + 2
    if not per_edge:
        raise ValueError("unrooted complexity needs at least one edge")
    best = min(per_edge, key=lambda e: (per_edge[e], e))
    return UnrootedComplexity(per_edge[best], best, per_edge)


# -- minimal trees -------------------------------------------------------------


def min_leaf_table(k: int, max_f: int) -> list[int]:
    """``S(0..max_f)``: fewest leaves of a rooted tree with the given complexity
    when every node has at most ``k - 1`` children."""
    if k < 3:
        raise ValueError("degree bound k must be >= 3")
    table = [1]
    for f0 in range(1, max_f + 1):
        if f0 < k - 1:
            table.append(f0 + 1)
        else:
            table.append(min(i * table[f0 - i + 1] for i in range(2, k)))
    return table


def min_leaf_count(k: int, f0: int) -> int:
    if f0 < 0:
        raise ValueError("complexity must be >= 0")
    return min_leaf_table(k, f0)[f0]


@lru_cache(maxsize=None)
def _achievable(max_children: int, n_leaves: int) -> frozenset:
    """Complexities reachable by rooted trees with exactly *n_leaves* leaves."""
    if n_leaves == 1:
        return frozenset({0})
    out = set()
    for parts in _partitions(n_leaves, 2, max_children):
        for combo in product(*(_achievable(max_children, p) for p in parts)):
            out.add(combine(combo))
    return frozenset(out)


def _partitions(n: int, min_parts: int, max_parts: int, largest: Optional[int] = None):
    """Non-increasing integer partitions of n with a bounded number of parts."""
    if largest is None:
        largest = n
    if n == 0:
        if min_parts <= 0:
            yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, min_parts - 1, max_parts - 1, first):
            yield (first,) + rest


def brute_force_min_leaves(k: int, f0: int, leaf_budget: int) -> Optional[int]:
    """Smallest leaf count of any rooted tree (each node with at most ``k - 1``
    children) whose complexity is *f0*, searching up to *leaf_budget* leaves.

    Trees are enumerated up to their (leaf count, complexity) profile, which
    is all the complexity of a parent depends on; every multiset of child
    profiles is tried, so no shape is skipped.  Returns None when nothing
    within the budget reaches *f0*.
    """
    for n in range(1, leaf_budget + 1):
        if f0 in _achievable(k - 1, n):
            return n
    return None


def rooted_shapes(n_leaves: int, max_children: Optional[int] = None) -> list[Shape]:
    """Every unlabelled rooted tree with *n_leaves* leaves and no unary nodes."""
    cap = n_leaves if max_children is None else max_children
    return list(_shapes(n_leaves, cap))


@lru_cache(maxsize=None)
def _shapes(n: int, cap: int) -> tuple:
    if n == 1:
        return ((),)
    out = []
    for parts in _partitions(n, 2, cap):
        # group equal part sizes so each multiset of shapes appears once
        groups: list[tuple[int, int]] = []
        for p in parts:
            if groups and groups[-1][0] == p:
                groups[-1] = (p, groups[-1][1] + 1)
            else:
                groups.append((p, 1))
        choices = [
            list(combinations_with_replacement(_shapes(size, cap), count))
            for size, count in groups
        ]
        for pick in product(*choices):
            children = tuple(sorted(s for grp in pick for s in grp))
            out.append(children)
    return tuple(out)


def shape_leaves(shape: Shape) -> int:
    return 1 if not shape else sum(shape_leaves(c) for c in shape)


def shape_complexity(shape: Shape) -> int:
    return combine(shape_complexity(c) for c in shape)


def s_table_rows(k: int, max_f: int, verify: bool = False, leaf_budget: int = 64):
    """Rows ``(k, f0, S, bruteforce_S, agree)``; the last two are blank unless *verify*."""
    table = min_leaf_table(k, max_f)
    for f0, s in enumerate(table):
        if verify:
            brute = brute_force_min_leaves(k, f0, min(s, leaf_budget))
            yield k, f0, s, brute, brute == s
        else:
            yield k, f0, s, None, None


def s_table_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "f0", "S", "bruteforce_S", "agree"])
    for k, f0, s, brute, agree in rows:
        writer.writerow([k, f0, s, "" if brute is None else brute, "" if agree is None else agree])
    return buf.getvalue()


# -- filled trees ----------------------------------------------------------------


@dataclass(frozen=True)
class LayerDegreeSequence:
    """Per-depth child counts of a filled tree, root layer first."""

    q: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        if not self.q:
            raise ValueError("layer-degree sequence must be non-empty")
        if any(x < 2 for x in self.q):
            raise ValueError(f"every layer degree must be >= 2, got {self.q}")

    @classmethod
    def parse(cls, text: str) -> "LayerDegreeSequence":
        return cls(tuple(int(x) for x in text.split(",") if x.strip()))

    def normalized(self) -> "LayerDegreeSequence":
        return LayerDegreeSequence(tuple(sorted(self.q, reverse=True)))

    @property
    def is_non_increasing(self) -> bool:
        return list(self.q) == sorted(self.q, reverse=True)


def filled_complexity_and_leaves(seq: Union[LayerDegreeSequence, Sequence[int]]) -> tuple[int, int]:
    q = seq.q if isinstance(seq, LayerDegreeSequence) else LayerDegreeSequence(tuple(seq)).q
    return sum(x - 1 for x in q), math.prod(q)


def minimal_filled_sequence(k: int, f0: int) -> LayerDegreeSequence:
    """The ``(k-1, ..., k-1, q_last)`` filled sequence of complexity *f0* >= 1."""
    if f0 < 1:
        raise ValueError("f0 must be >= 1")
    full, rest = divmod(f0 - 1, k - 2)
    return LayerDegreeSequence((k - 1,) * full + (rest + 2,))


# -- closed-form bounds ---------------------------------------------------------------


def hein_upper_bound(n: int, k: int, unrooted: bool = False) -> float:
    """``(k-2) log_{k-1}(n) + (k-2)``, plus 2 for unrooted trees.

    Returned as a float for display; use :func:`within_hein_bound` and
    :func:`within_query_bound` for exact comparisons.
    """
    if n < 2 or k < 3:
        raise ValueError("need n >= 2 and k >= 3")
    bound = (k - 2) * math.log(n) / math.log(k - 1) + (k - 2)
    return bound + 2 if unrooted else bound


def within_hein_bound(f: int, n: int, k: int) -> bool:
    """Exact test of ``f <= (k-2) log_{k-1}(n) + (k-2)``."""
    excess = f - (k - 2)
    if excess <= 0:
        return True
    return (k - 1) ** excess <= n ** (k - 2)


def within_query_bound(total: int, n: int, k: int) -> bool:
    """Exact test of ``total <= n ((k-2) log_{k-1}(n) + k)``."""
    excess = total - n * k
    if excess <= 0:
        return True
    return (k - 1) ** excess <= n ** (n * (k - 2))


def s_growth_holds(s: int, f0: int, k: int) -> bool:
    """Exact test of ``s > (k-1)^(f0/(k-2) - 1)``."""
    excess = f0 - (k - 2)
    if excess < 0:
        return s >= 1
    return s ** (k - 2) > (k - 1) ** excess
