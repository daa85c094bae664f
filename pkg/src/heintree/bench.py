"""Benchmark sweeps: infer hidden trees from generated families and record
query counts against the complexity bounds.

Config files are flat ``key = value`` text::

    # lines starting with '#' are comments; blank lines are ignored
    families = random, caterpillar     # random | caterpillar | beanstalk | filled
    sizes    = 4, 8, 16..64*2          # list items; a..b*m is a geometric range
    seeds    = 0..19                   # a..b is an inclusive range
    k        = 3, 4                    # degree bounds (random family only)
    orders   = given, random, depth-asc, depth-desc, random:7
    g        = linear:1/2              # growth spec (beanstalk family)
    seq      = 3,2 ; 2,2,2             # layer sequences (filled family), ';'-separated
    weights  = random                  # unit | random

Unknown keys are rejected.  ``a..b`` steps by 1 and ``a..b*m`` multiplies.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from heintree.beanstalk import GrowthSpec, beanstalk_complexity_bound
from heintree.complexity import (
    LayerDegreeSequence,
    hein_upper_bound,
    unrooted_complexity,
    within_query_bound,
)
from heintree.generators import (
    UNIT,
    WeightMode,
    make_beanstalk,
    make_caterpillar,
    make_filled,
    make_random,
)
from heintree.inference import infer_tree
from heintree.oracle import DistanceOracle
from heintree.rng import Mcg64
from heintree.tree import WeightedTree, trees_equivalent

COLUMNS = (
    "family",
    "n",
    "k",
    "seed",
    "insertionOrder",
    "totalQueries",
    "maxPerInsertion",
    "unrootedComplexityFinal",
    "heinBound",
    "beanstalkBound",
    "withinBound",
)

FAMILIES = ("random", "caterpillar", "beanstalk", "filled")


class BenchConfigError(ValueError):
    pass


class BenchFailure(RuntimeError):
    """Inference produced a wrong tree; carries the instance parameters."""

    def __init__(self, message: str, instance: dict) -> None:
        super().__init__(f"{message} ({', '.join(f'{k}={v}' for k, v in instance.items())})")
        self.instance = instance


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    k: int
    seed: int
    insertionOrder: str
    totalQueries: int
    maxPerInsertion: int
    unrootedComplexityFinal: int
    heinBound: float
    beanstalkBound: Optional[int]
    withinBound: bool

    def row(self) -> list[str]:
        return [
            self.family,
            str(self.n),
            str(self.k),
            str(self.seed),
            self.insertionOrder,
            str(self.totalQueries),
            str(self.maxPerInsertion),
            str(self.unrootedComplexityFinal),
            f"{self.heinBound:.6f}",
            "" if self.beanstalkBound is None else str(self.beanstalkBound),
            "true" if self.withinBound else "false",
        ]


@dataclass
class BenchConfig:
    families: list = field(default_factory=lambda: ["random"])
    sizes: list = field(default_factory=lambda: [8])
    seeds: list = field(default_factory=lambda: [0])
    k: list = field(default_factory=lambda: [3])
    orders: list = field(default_factory=lambda: ["given"])
    g: GrowthSpec = field(default_factory=lambda: GrowthSpec.linear("1/2"))
    seq: list = field(default_factory=lambda: [LayerDegreeSequence((3, 2))])
    weights: str = "random"


def _ints(text: str) -> list[int]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)(?:\*(\d+))?", item)
        if m is None:
            out.append(int(item))
            continue
        lo, hi = int(m.group(1)), int(m.group(2))
        if m.group(3):
            mult = int(m.group(3))
            if mult < 2 or lo < 1:
                raise BenchConfigError(f"bad geometric range {item!r}")
            x = lo
            while x <= hi:
                out.append(x)
                x *= mult
        else:
            out.extend(range(lo, hi + 1))
    if not out:
        raise BenchConfigError("empty integer list")
    return out


def parse_config(text: str) -> BenchConfig:
    cfg = BenchConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not value:
            raise BenchConfigError(f"line {lineno}: expected key = value")
        try:
            if key == "families":
                fams = [f.strip() for f in value.split(",") if f.strip()]
                bad = [f for f in fams if f not in FAMILIES]
                if bad:
                    raise BenchConfigError(f"unknown family {bad[0]!r}")
                cfg.families = fams
            elif key == "sizes":
                cfg.sizes = _ints(value)
            elif key == "seeds":
                cfg.seeds = _ints(value)
            elif key == "k":
                cfg.k = _ints(value)
            elif key == "orders":
                cfg.orders = [o.strip() for o in value.split(",") if o.strip()]
                for o in cfg.orders:
                    check_order_tag(o)
            elif key == "g":
                cfg.g = GrowthSpec.parse(value)
            elif key == "seq":
                cfg.seq = [LayerDegreeSequence.parse(s) for s in value.split(";")]
            elif key == "weights":
                if value not in ("unit", "random"):
                    raise BenchConfigError("weights must be unit or random")
                cfg.weights = value
            else:
                raise BenchConfigError(f"unknown key {key!r}")
        except BenchConfigError as exc:
            raise BenchConfigError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise BenchConfigError(f"line {lineno}: {exc}") from None
    return cfg


def load_config(path) -> BenchConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


# -- insertion orders ------------------------------------------------------------


def natural_key(label: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", label)]


def check_order_tag(tag: str) -> None:
    if tag in ("given", "random", "depth-asc", "depth-desc"):
        return
    if re.fullmatch(r"random:\d+", tag):
        return
    raise BenchConfigError(f"unknown insertion order {tag!r}")


def _hop_depths(tree: WeightedTree) -> dict[int, int]:
    root = tree.root
    if root is None:
        starts = [tree.node_of(min(tree.label_set(), key=natural_key))]
    elif isinstance(root, tuple):
        starts = list(root)
    else:
        starts = [root]
    depth = {s: 0 for s in starts}
    frontier = list(starts)
    while frontier:
        nxt = []
        for u in frontier:
            for v in tree.adj[u]:
                if v not in depth:
                    depth[v] = depth[u] + 1
                    nxt.append(v)
        frontier = nxt
    return depth


def insertion_order(tree: WeightedTree, tag: str, seed: int = 0) -> list[str]:
    """Labels in the order named by *tag*.

    ``given`` is natural label order (L2 before L10); ``random`` shuffles with
    *seed* and ``random:S`` with S; ``depth-asc``/``depth-desc`` sort by hop
    depth from the tree's root (or from the first label when unrooted).
    """
    check_order_tag(tag)
    labels = sorted(tree.label_set(), key=natural_key)
    if tag == "given":
        return labels
    if tag.startswith("random"):
        s = int(tag.split(":", 1)[1]) if ":" in tag else seed
        Mcg64(s).shuffle(labels)
        return labels
    depth = _hop_depths(tree)
    sign = 1 if tag == "depth-asc" else -1
    return sorted(labels, key=lambda lab: (sign * depth[tree.node_of(lab)], natural_key(lab)))


# -- running ---------------------------------------------------------------------


def _max_degree(tree: WeightedTree) -> int:
    return max(len(nbrs) for nbrs in tree.adj.values())


@dataclass
class InferenceRun:
    inferred: WeightedTree
    total_queries: int
    per_insertion: list
    pre_complexity: list
    equivalent: bool

    @property
    def per_insertion_ok(self) -> bool:
        return all(q <= c for q, c in zip(self.per_insertion, self.pre_complexity))


def run_inference(hidden: WeightedTree, order: Sequence[str]) -> InferenceRun:
    """Infer *hidden* with the given insertion order, recording the unrooted
    complexity of the partial tree before every insertion."""
    inferred, report = infer_tree(order, DistanceOracle(hidden))
    return InferenceRun(
        inferred,
        report.total_queries,
        list(report.per_insertion),
        list(report.pre_complexity),
        trees_equivalent(inferred, hidden),
    )


def make_record(family: str, hidden: WeightedTree, k: int, seed: int, order_tag: str,
                beanstalk_bound: Optional[int] = None) -> BenchRecord:
    order = insertion_order(hidden, order_tag, seed)
    run = run_inference(hidden, order)
    n = hidden.n_leaves
    if not run.equivalent:
        raise BenchFailure("inferred tree differs from hidden tree",
                           dict(family=family, n=n, k=k, seed=seed, order=order_tag))
    within = run.per_insertion_ok and within_query_bound(run.total_queries, n, k)
    return BenchRecord(
        family=family,
        n=n,
        k=k,
        seed=seed,
        insertionOrder=order_tag,
        totalQueries=run.total_queries,
        maxPerInsertion=max(run.per_insertion, default=0),
        unrootedComplexityFinal=unrooted_complexity(run.inferred).value,
        heinBound=hein_upper_bound(max(n, 2), k),
        beanstalkBound=beanstalk_bound,
        withinBound=within,
    )


def _instances(cfg: BenchConfig):
    """Yield (family, size, k, seed, builder) in a deterministic order."""
    for family in cfg.families:
        for seed in cfg.seeds:
            wm = UNIT if cfg.weights == "unit" else WeightMode.random(seed)
            if family == "random":
                for n in cfg.sizes:
                    for k in cfg.k:
                        yield family, k, seed, (lambda n=n, k=k, seed=seed, wm=wm: make_random(n, k, seed, wm)), None
            elif family == "caterpillar":
                for n in cfg.sizes:
                    yield family, 3, seed, (lambda n=n, wm=wm: make_caterpillar(n, wm)), None
            elif family == "beanstalk":
                for n in cfg.sizes:
                    bound = beanstalk_complexity_bound(cfg.g, n).bound_value
                    yield family, 3, seed, (lambda n=n, wm=wm: make_beanstalk(cfg.g, n, wm)), bound
            else:
                for seq in cfg.seq:
                    yield family, max(seq.q) + 1, seed, (lambda seq=seq, wm=wm: make_filled(seq, wm)), None


def run_bench(cfg: BenchConfig) -> list[BenchRecord]:
    """Run every instance of *cfg*; aborts on the first wrong reconstruction."""
    records = []
    for family, k, seed, build, bbound in _instances(cfg):
        try:
            hidden = build()
        except (ValueError, AssertionError) as exc:
            raise BenchFailure(f"generation failed: {exc}", dict(family=family, k=k, seed=seed)) from exc
        k = max(k, 3, _max_degree(hidden))
        for tag in cfg.orders:
            records.append(make_record(family, hidden, k, seed, tag, bbound))
    records.sort(key=lambda r: (FAMILIES.index(r.family), r.n, r.k, r.seed, r.insertionOrder))
    return records


# -- output ----------------------------------------------------------------------


def csv_text(records: Sequence[BenchRecord]) -> str:
    if not records:
        raise ValueError("no records to emit")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def emit_csv(records: Sequence[BenchRecord], path) -> None:
    Path(path).write_text(csv_text(records), encoding="utf-8", newline="")


def plot_rows(records: Sequence[BenchRecord]) -> list[tuple]:
    """``(family, n, totalQueries / n, per-leaf query bound)`` per record."""
    return [(r.family, r.n, r.totalQueries / r.n, r.heinBound + 2) for r in records]


def emit_plot_data(records: Sequence[BenchRecord], path) -> None:
    if not records:
        raise ValueError("no records to emit")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "n", "queriesPerLeaf", "boundValue"])
    for family, n, ratio, bound in plot_rows(records):
        writer.writerow([family, n, f"{ratio:.6f}", f"{bound:.6f}"])
    Path(path).write_text(buf.getvalue(), encoding="utf-8", newline="")
