from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heintree.generators import WeightMode, make_caterpillar, make_random
from heintree.newick import TreeFormatError, parse_tree, read_tree, serialize_tree, write_tree
from heintree.tree import distance_matrix, leaf_distance, trees_equivalent


def test_unit_star():
    tree = parse_tree("(x:1,y:1,z:1);")
    assert tree.n_leaves == 3
    assert leaf_distance(tree, "x", "z") == 2


def test_bifurcating_top_is_merged():
    tree = parse_tree("(x:5,y:5);")
    assert serialize_tree(tree) == "EDGE x y 10"


def test_edge_line():
    tree = parse_tree("EDGE a b 7/2")
    assert leaf_distance(tree, "a", "b") == Fraction(7, 2)
    assert serialize_tree(tree) == "EDGE a b 7/2"


def test_truncated_input_offset():
    with pytest.raises(TreeFormatError) as info:
        parse_tree("(x:1,y")
    assert info.value.offset == 6
    assert "offset 6" in str(info.value)


@pytest.mark.parametrize(
    "text",
    [
        "(x,y:1,z:1);",  # missing length
        "(x:1,y:1,z:1)",  # no terminator
        "(x:1,y:1,z:1)r;",  # labelled internal node
        "(x:0,y:1,z:1);",  # zero weight
        "(x:-1,y:1,z:1);",
        "(x:1,x:1,z:1);",
        "(x:1,y:1,z:1); extra",
        "EDGE a b",
        "",
    ],
)
def test_rejected(text):
    with pytest.raises(TreeFormatError):
        parse_tree(text)


def test_decimal_and_rational_lengths():
    tree = parse_tree("(a:2.5,b:7/2,(c:1,d:1):1);")
    assert leaf_distance(tree, "a", "b") == 6
    assert leaf_distance(tree, "c", "a") == Fraction(9, 2)


def test_serialization_is_canonical():
    a = parse_tree("((c:1,d:2):3,b:1,a:1);")
    b = parse_tree("(a:1,(d:2,c:1):3,b:1);")
    assert serialize_tree(a) == serialize_tree(b) == "(a:1,b:1,(c:1,d:2):3);"


def test_deep_tree_round_trip():
    # deeper than the default recursion limit
    tree = make_caterpillar(3000)
    again = parse_tree(serialize_tree(tree))
    assert serialize_tree(again) == serialize_tree(tree)


def test_file_round_trip(tmp_path):
    tree = make_random(9, 4, seed=5)
    path = tmp_path / "t.nwk"
    write_tree(tree, path)
    assert path.read_bytes().endswith(b";\n")
    assert trees_equivalent(read_tree(path), tree)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 20), k=st.integers(3, 6), seed=st.integers(0, 10**6), unit=st.booleans())
def test_round_trip_property(n, k, seed, unit):
    tree = make_random(n, k, seed, WeightMode.unit() if unit else None)
    text = serialize_tree(tree)
    back = parse_tree(text)
    assert distance_matrix(back).entries == distance_matrix(tree).entries
    assert serialize_tree(back) == text
