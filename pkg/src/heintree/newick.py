"""Text format for weighted unrooted trees.

Trees are written in nested-parenthesis notation with mandatory branch
lengths, rooted at an arbitrary internal node::

    ((a:1,b:1):2,c:1,d:7/2);

Lengths may be integers, decimals or ``p/q`` rationals.  Internal nodes are
unlabelled.  A two-leaf tree has no internal node, so it gets its own line::

    EDGE a b 5
"""

from __future__ import annotations

from fractions import Fraction

from heintree.tree import WeightedTree, suppress_degree2, validate

_DELIMS = set("(),:;")


class TreeFormatError(ValueError):
    """Raised for unparsable text or for a parsed tree that breaks an invariant."""

    def __init__(self, message: str, offset: int | None = None) -> None:
        self.offset = offset
        if offset is not None:
            message = f"{message} at offset {offset}"
        super().__init__(message)


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.edges: list[tuple[int, int, Fraction]] = []
        self.labels: dict[int, str] = {}
        self.next_id = 0

    def error(self, message: str) -> TreeFormatError:
        return TreeFormatError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        return self.text[self.pos]

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}, found {self.text[self.pos]!r}")
        self.pos += 1

    def token(self) -> str:
        self.skip_ws()
        start = self.pos
        while (
            self.pos < len(self.text)
            and self.text[self.pos] not in _DELIMS
            and not self.text[self.pos].isspace()
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def new_node(self) -> int:
        self.next_id += 1
        return self.next_id - 1

    def length(self) -> Fraction:
        self.expect(":")
        start = self.pos
        tok = self.token()
        if not tok:
            self.pos = start
            raise self.error("missing branch length")
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError):
            self.pos = start
            raise self.error(f"bad branch length {tok!r}") from None

    def leaf(self) -> int:
        start = self.pos
        label = self.token()
        if not label:
            self.pos = start
            raise self.error("expected a leaf label or '('")
        node = self.new_node()
        self.labels[node] = label
        return node

    def subtree(self) -> int:
        if self.peek() != "(":
            return self.leaf()
        # explicit stack of open internal nodes; deep caterpillars exceed
        # the interpreter's recursion limit
        self.pos += 1
        top = self.new_node()
        # (node, index of the edge to its parent awaiting a length)
        open_nodes: list[tuple[int, int]] = [(top, -1)]
        while open_nodes:
            node = open_nodes[-1][0]
            if self.peek() == "(":
                self.pos += 1
                child = self.new_node()
                self.edges.append((node, child, None))
                open_nodes.append((child, len(self.edges) - 1))
                continue
            self.edges.append((node, self.leaf(), self.length()))
            while True:
                ch = self.peek()
                self.pos += 1
                if ch == ",":
                    break
                if ch != ")":
                    self.pos -= 1
                    raise self.error(f"expected ',' or ')', found {ch!r}")
                _, edge_index = open_nodes.pop()
                if self.peek() not in _DELIMS:
                    raise self.error("internal nodes must be unlabelled")
                if not open_nodes:
                    break
                u, v, _ = self.edges[edge_index]
                self.edges[edge_index] = (u, v, self.length())
        return top

    def parse(self) -> WeightedTree:
        root = self.subtree()
        self.expect(";")
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing characters")
        return WeightedTree(self.edges, self.labels, nodes=[root])


def _parse_edge_line(text: str) -> WeightedTree:
    parts = text.split()
    if len(parts) != 4:
        raise TreeFormatError("EDGE line needs exactly: EDGE label label weight")
    _, a, b, w = parts
    try:
        weight = Fraction(w)
    except (ValueError, ZeroDivisionError):
        raise TreeFormatError(f"bad edge weight {w!r}") from None
    return WeightedTree([(0, 1, weight)], {0: a, 1: b})


def parse_tree(text: str) -> WeightedTree:
    """Parse one tree; degree-2 nodes (such as a bifurcating root) are merged away."""
    stripped = text.strip()
    if stripped.startswith("EDGE"):
        tree = _parse_edge_line(stripped)
    else:
        tree = suppress_degree2(_Parser(text).parse())
    problems = validate(tree)
    if problems:
        raise TreeFormatError("invalid tree: " + "; ".join(map(str, problems)))
    return tree


def _fmt(w: Fraction) -> str:
    return str(w)


def serialize_tree(tree: WeightedTree) -> str:
    """Deterministic text for *tree*.

    The text is rooted at the neighbour of the smallest leaf label and lists
    children by their smallest contained label, so equivalent trees produce
    the same string.
    """
    labels = tree.sorted_labels()
    if len(labels) == 2:
        a, b = labels
        return f"EDGE {a} {b} {_fmt(leaf_distance_pair(tree, a, b))}"
    adj = tree.adj
    root = next(iter(adj[tree.node_of(labels[0])]))

    min_label: dict[int, str] = {}
    order: list[tuple[int, int | None]] = []
    stack: list[tuple[int, int | None]] = [(root, None)]
    while stack:
        u, p = stack.pop()
        order.append((u, p))
        stack.extend((v, u) for v in adj[u] if v != p)
    text: dict[int, str] = {}
    for u, p in reversed(order):
        if u in tree.labels:
            min_label[u] = text[u] = tree.labels[u]
            continue
        kids = sorted((v for v in adj[u] if v != p), key=min_label.__getitem__)
        min_label[u] = min_label[kids[0]]
        text[u] = "(" + ",".join(f"{text[v]}:{_fmt(adj[u][v])}" for v in kids) + ")"
    return text[root] + ";"


def leaf_distance_pair(tree: WeightedTree, a: str, b: str) -> Fraction:
    return tree.distances_from(tree.node_of(a))[tree.node_of(b)]


def read_tree(path) -> WeightedTree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read())


def write_tree(tree: WeightedTree, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_tree(tree) + "\n")
