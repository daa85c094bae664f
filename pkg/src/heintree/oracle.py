"""Distance oracle over a hidden tree, with caching and query accounting."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from heintree.tree import UnknownLabelError, WeightedTree


class DistanceOracle:
    """Answers leaf-pair distance queries against a hidden tree.

    Only the first request for an unordered pair is charged.  ``query_log``
    keeps the charged pairs in the order they were first asked, which lets a
    caller attribute queries to phases of an algorithm after the fact.
    """

    def __init__(self, hidden: WeightedTree) -> None:
        self._hidden = hidden
        self._rows: dict[str, dict[int, Fraction]] = {}
        self._cache: dict[frozenset, Fraction] = {}
        self.query_count = 0
        self.cache_hits = 0
        self.query_log: list[tuple[tuple[str, str], Fraction]] = []

    @property
    def labels(self) -> frozenset:
        return self._hidden.label_set()

    def __contains__(self, label: str) -> bool:
        return label in self._hidden.label_set()

    def query(self, a: str, b: str) -> Fraction:
        if a not in self or b not in self:
            raise UnknownLabelError(a if a not in self else b)
        if a == b:
            return Fraction(0)
        key = frozenset((a, b))
        hit = self._cache.get(key)
        if hit is not None:
            self.cache_hits += 1
            return hit
        value = self._distance(a, b)
        self._cache[key] = value
        self.query_count += 1
        self.query_log.append(((a, b), value))
        return value

    __call__ = query

    def is_cached(self, a: str, b: str) -> bool:
        return a == b or frozenset((a, b)) in self._cache

    def snapshot_count(self) -> int:
        return self.query_count

    def reset_log(self) -> None:
        """Forget the log; the cache and the count are kept."""
        self.query_log = []

    def _distance(self, a: str, b: str) -> Fraction:
        row = self._rows.get(a)
        if row is None:
            row = self._rows[a] = self._hidden.distances_from(self._hidden.node_of(a))
        return row[self._hidden.node_of(b)]


@dataclass
class QueryReport:
    initial_queries: int
    per_insertion: list[int] = field(default_factory=list)
    # unrooted complexity of the partial tree just before each insertion
    pre_complexity: list[int] = field(default_factory=list)

    @property
    def total_queries(self) -> int:
        return self.initial_queries + sum(self.per_insertion)

    @property
    def max_per_insertion(self) -> int:
        return max(self.per_insertion, default=0)
