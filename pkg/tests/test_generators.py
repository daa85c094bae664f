from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from heintree.complexity import rooted_complexity, unrooted_complexity
from heintree.generators import (
    WeightMode,
    all_trees,
    fig2_fixture,
    make_caterpillar,
    make_filled,
    make_random,
)
from heintree.newick import serialize_tree
from heintree.rng import Mcg64
from heintree.tree import validate


def test_rng_is_deterministic():
    a, b = Mcg64(42), Mcg64(42)
    assert [a.next_u32() for _ in range(20)] == [b.next_u32() for _ in range(20)]
    assert [Mcg64(1).next_u32() for _ in range(3)] != [Mcg64(2).next_u32() for _ in range(3)]


def test_rng_range_and_spread():
    rng = Mcg64(7)
    counts = Counter(rng.below(6) for _ in range(6000))
    assert set(counts) == set(range(6))
    assert all(800 < c < 1200 for c in counts.values())
    assert all(3 <= rng.between(3, 5) <= 5 for _ in range(100))
    with pytest.raises(ValueError):
        rng.below(0)


def test_shuffle_is_a_permutation():
    items = list(range(50))
    Mcg64(3).shuffle(items)
    assert sorted(items) == list(range(50)) and items != list(range(50))


def test_weight_modes():
    assert WeightMode.unit().weights(3) == [1, 1, 1]
    ws = WeightMode.random(5).weights(200)
    assert ws == WeightMode.random(5).weights(200)
    assert all(0 < w <= 10 for w in ws)
    assert any(w.denominator > 1 for w in ws)


def test_filled_examples():
    tree = make_filled((3, 2))
    assert tree.n_leaves == 6
    assert rooted_complexity(tree, tree.root).value == 3
    assert sorted(len(tree.adj[c]) for c in tree.adj[tree.root]) == [3, 3, 3]
    two = make_filled((2,))
    assert two.n_leaves == 2 and len(list(two.edges())) == 1


def test_caterpillar_shape():
    assert len(list(make_caterpillar(2).edges())) == 1
    tree = make_caterpillar(5)
    internal = [n for n in tree.nodes if n not in tree.labels]
    assert len(internal) == 3
    for node in internal:
        for nbr in tree.adj[node]:
            assert rooted_complexity(tree, nbr, away_from=node).value <= 1


@pytest.mark.parametrize("n", [4, 5, 8, 17, 64])
def test_caterpillar_unrooted_complexity(n):
    assert unrooted_complexity(make_caterpillar(n)).value == 3


def test_random_small_cases():
    assert len(list(make_random(2, 3, seed=9).edges())) == 1
    assert serialize_tree(make_random(30, 5, seed=4)) == serialize_tree(make_random(30, 5, seed=4))
    assert serialize_tree(make_random(30, 5, seed=4)) != serialize_tree(make_random(30, 5, seed=5))


def test_random_degree_audit():
    for seed in range(1000):
        tree = make_random(32, 4, seed)
        assert max(len(v) for v in tree.adj.values()) <= 4


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 40), k=st.integers(3, 8), seed=st.integers(0, 2**32))
def test_random_trees_valid(n, k, seed):
    tree = make_random(n, k, seed)
    assert validate(tree) == []
    assert tree.n_leaves == n
    assert max(len(v) for v in tree.adj.values()) <= k


def test_fixture():
    tree = fig2_fixture()
    assert tree.n_leaves == 10
    res = unrooted_complexity(tree)
    assert res.value == 4 and res.argmin_edge == (0, 1)
    assert rooted_complexity(tree, 0, away_from=1).value == 2
    assert rooted_complexity(tree, 1, away_from=0).value == 2


def test_enumeration_counts():
    # unrooted leaf-labelled trees without degree-2 nodes
    assert [sum(1 for _ in all_trees(n)) for n in range(2, 7)] == [1, 1, 4, 26, 236]


def test_enumeration_has_no_duplicates():
    seen = {serialize_tree(t) for t in all_trees(6)}
    assert len(seen) == 236
