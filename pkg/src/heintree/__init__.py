"""Tree inference from leaf-distance queries (Hein's insertion algorithm) and
the complexity calculus that bounds its query cost."""

from heintree.tree import (
    DistanceMatrix,
    UnknownLabelError,
    Violation,
    WeightedTree,
    distance_matrix,
    leaf_distance,
    suppress_degree2,
    trees_equivalent,
    validate,
)
from heintree.newick import TreeFormatError, parse_tree, serialize_tree

__version__ = "0.1.0"

__all__ = [
    "DistanceMatrix",
    "TreeFormatError",
    "UnknownLabelError",
    "Violation",
    "WeightedTree",
    "distance_matrix",
    "leaf_distance",
    "parse_tree",
    "serialize_tree",
    "suppress_degree2",
    "trees_equivalent",
    "validate",
]
