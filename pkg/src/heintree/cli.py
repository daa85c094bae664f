"""``heintree`` command line.

Exit status: 0 on success, 1 when a bound or equivalence check fails, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from heintree.beanstalk import (
    GrowthSpec,
    beanstalk_complexity_bound,
    corollary_bound,
    simple_iteration_bound,
)
from heintree.bench import (
    BenchConfigError,
    BenchFailure,
    check_order_tag,
    csv_text,
    emit_plot_data,
    insertion_order,
    load_config,
    run_bench,
    run_inference,
)
from heintree.complexity import (
    LayerDegreeSequence,
    rooted_complexity,
    s_table_csv,
    s_table_rows,
    unrooted_complexity,
    within_query_bound,
)
from heintree.generators import (
    UNIT,
    WeightMode,
    fig2_fixture,
    make_beanstalk,
    make_caterpillar,
    make_filled,
    make_random,
)
from heintree.newick import TreeFormatError, read_tree, serialize_tree

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _weights(text: str) -> WeightMode:
    if text == "unit":
        return UNIT
    kind, _, seed = text.partition(":")
    if kind == "random":
        return WeightMode.random(int(seed or 0))
    raise UsageError(f"--weights must be 'unit' or 'random[:SEED]', got {text!r}")


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _need(args, *names) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"family {args.family} needs {', '.join(missing)}")


def cmd_generate(args) -> int:
    wm = _weights(args.weights)
    fam = args.family
    if fam == "filled":
        _need(args, "seq")
        tree = make_filled(LayerDegreeSequence.parse(args.seq), wm)
    elif fam == "caterpillar":
        _need(args, "n")
        tree = make_caterpillar(args.n, wm)
    elif fam == "beanstalk":
        _need(args, "n", "g")
        tree = make_beanstalk(GrowthSpec.parse(args.g), args.n, wm)
    elif fam == "random":
        _need(args, "n")
        tree = make_random(args.n, args.k, args.seed, wm)
    else:
        tree = fig2_fixture()
    _write(serialize_tree(tree) + "\n", args.out)
    return OK


def cmd_infer(args) -> int:
    hidden = read_tree(args.hidden)
    check_order_tag(args.order)
    order = insertion_order(hidden, args.order)
    run = run_inference(hidden, order)
    n = hidden.n_leaves
    k = max(3, max(len(nbrs) for nbrs in hidden.adj.values()))
    _write(serialize_tree(run.inferred) + "\n", args.out)
    within = run.per_insertion_ok and within_query_bound(run.total_queries, n, k)
    print(
        f"leaves={n} queries={run.total_queries} max_per_insertion={max(run.per_insertion, default=0)} "
        f"equivalent={str(run.equivalent).lower()} within_bound={str(within).lower()}",
        file=sys.stderr,
    )
    return OK if run.equivalent and within else VIOLATION


def _resolve_node(tree, text: str) -> int:
    if text in tree.label_set():
        return tree.node_of(text)
    try:
        node = int(text)
    except ValueError:
        raise UsageError(f"--root {text!r} is neither a leaf label nor a node id") from None
    if node not in tree.adj:
        raise UsageError(f"no node {node}")
    return node


def cmd_complexity(args) -> int:
    tree = read_tree(args.tree)
    if args.root is not None:
        root = _resolve_node(tree, args.root)
        print(f"rooted complexity at {args.root}: {rooted_complexity(tree, root).value}")
        return OK
    res = unrooted_complexity(tree)
    u, v = res.argmin_edge
    print(f"unrooted complexity: {res.value} (edge {u}-{v})")
    return OK


def cmd_minleaves(args) -> int:
    if args.k < 3 or args.max_f < 0:
        raise UsageError("need --k >= 3 and --max-f >= 0")
    rows = list(s_table_rows(args.k, args.max_f, verify=args.verify, leaf_budget=args.leaf_budget))
    sys.stdout.write(s_table_csv(rows))
    if args.verify and not all(agree for *_, agree in rows):
        return VIOLATION
    return OK


def cmd_beanstalk_bound(args) -> int:
    spec = GrowthSpec.parse(args.g)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    res = beanstalk_complexity_bound(spec, args.n)
    print(f"bound: {res.bound_value}")
    print("trace: " + ",".join(str(x) for x in res.trace))
    if res.used_closed_form:
        print("note: g saturates; constant closed form used")
    if spec.kind != "table" and args.n >= 2:
        print(f"closed form: {corollary_bound(spec, args.n)}")
    if args.n >= 2 and (spec.kind == "power" or spec.kind == "linear" and spec.gamma < 1):
        print(f"simple iteration: {simple_iteration_bound(spec, args.n)}")
    return OK


def cmd_bench(args) -> int:
    cfg = load_config(args.config)
    try:
        records = run_bench(cfg)
    except BenchFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION
    _write(csv_text(records), args.csv)
    if args.plot:
        emit_plot_data(records, args.plot)
    bad = [r for r in records if not r.withinBound]
    for r in bad:
        print(f"bound exceeded: {r.family} n={r.n} k={r.k} seed={r.seed} order={r.insertionOrder}", file=sys.stderr)
    return VIOLATION if bad else OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heintree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated tree")
    p.add_argument("--family", required=True, choices=["random", "caterpillar", "beanstalk", "filled", "fig2"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seq", help="layer degrees, e.g. 3,2")
    p.add_argument("--g", help="growth spec, e.g. linear:1/2")
    p.add_argument("--weights", default="unit", help="unit or random[:SEED]")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("infer", help="reconstruct a hidden tree through the oracle")
    p.add_argument("--hidden", required=True)
    p.add_argument("--order", default="given", help="given, random:SEED, depth-asc or depth-desc")
    p.add_argument("--out")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("complexity", help="rooted or unrooted complexity of a tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--root", help="leaf label or node id")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("minleaves", help="minimal leaf counts S(f0) as CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-f", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="cross-check by exhaustive search")
    p.add_argument("--leaf-budget", type=int, default=64)
    p.set_defaults(func=cmd_minleaves)

    p = sub.add_parser("beanstalk-bound", help="complexity bound for g-beanstalks")
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_beanstalk_bound)

    p = sub.add_parser("bench", help="run a benchmark sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--csv")
    p.add_argument("--plot", help="also write plot data here")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BenchConfigError, TreeFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
