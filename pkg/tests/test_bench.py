import math
from pathlib import Path

import pytest

from heintree.bench import (
    COLUMNS,
    BenchConfigError,
    BenchFailure,
    BenchRecord,
    csv_text,
    emit_csv,
    emit_plot_data,
    insertion_order,
    load_config,
    make_record,
    parse_config,
    run_bench,
)
from heintree.generators import make_caterpillar, make_filled

CONFIGS = sorted((Path(__file__).parent.parent / "configs").glob("*.cfg"))


def record(**over):
    base = dict(family="random", n=8, k=3, seed=0, insertionOrder="given", totalQueries=15, maxPerInsertion=3,
                unrootedComplexityFinal=3, heinBound=4.0, beanstalkBound=None, withinBound=True)
    base.update(over)
    return BenchRecord(**base)


def test_config_grammar():
    cfg = parse_config(
        "# sweep\nfamilies = random, filled\nsizes = 4..32*2, 100\nseeds=0..3\nk=3,5\n"
        "orders = given, random:9\ng = power:1/2\nseq = 3,2 ; 2,2\nweights = unit  # trailing comment\n"
    )
    assert cfg.families == ["random", "filled"]
    assert cfg.sizes == [4, 8, 16, 32, 100]
    assert cfg.seeds == [0, 1, 2, 3]
    assert cfg.k == [3, 5]
    assert cfg.orders == ["given", "random:9"]
    assert [s.q for s in cfg.seq] == [(3, 2), (2, 2)]
    assert cfg.weights == "unit"


@pytest.mark.parametrize("text", ["families = trees", "sizes 4", "colour = red", "orders = sideways",
                                  "g = linear:3", "seq = 1,2", "weights = heavy", "sizes = 4..8*1", "seeds ="])
def test_config_errors(text):
    with pytest.raises(BenchConfigError):
        parse_config(text)


def test_orders():
    tree = make_caterpillar(12)
    given = insertion_order(tree, "given")
    assert given[:3] == ["L1", "L2", "L3"] and given[-1] == "L12"
    assert insertion_order(tree, "random:4") == insertion_order(tree, "random", seed=4)
    assert sorted(insertion_order(tree, "random:4")) == sorted(given)
    asc, desc = insertion_order(tree, "depth-asc"), insertion_order(tree, "depth-desc")
    assert asc[0] == "L1" and desc[-1] == "L1"
    with pytest.raises(BenchConfigError):
        insertion_order(tree, "reverse")


def test_one_record_gives_two_lines(tmp_path):
    path = tmp_path / "out.csv"
    emit_csv([record()], path)
    data = path.read_bytes()
    assert b"\r" not in data
    lines = data.decode().splitlines()
    assert len(lines) == 2
    assert lines[0].split(",") == list(COLUMNS)
    assert len(lines[1].split(",")) == len(COLUMNS) == 11


def test_empty_records_rejected(tmp_path):
    with pytest.raises(ValueError):
        csv_text([])
    with pytest.raises(ValueError):
        emit_plot_data([], tmp_path / "p.csv")


def test_plot_data(tmp_path):
    path = tmp_path / "plot.csv"
    emit_plot_data([record(), record(n=16, totalQueries=40, heinBound=5.0)], path)
    assert path.read_text().splitlines() == [
        "family,n,queriesPerLeaf,boundValue",
        "random,8,1.875000,6.000000",
        "random,16,2.500000,7.000000",
    ]


def test_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        emit_csv([record()], tmp_path / "missing" / "out.csv")


def test_rerun_is_byte_identical():
    cfg = parse_config("families = random, beanstalk\nsizes = 10, 20\nk = 3, 5\nseeds = 0..2\norders = given, random")
    assert csv_text(run_bench(cfg)) == csv_text(run_bench(cfg))


def test_records_are_sorted_and_within_bound():
    recs = run_bench(parse_config("families = filled, random\nsizes = 9\nk = 4\nseeds = 2, 1\nseq = 2,2 ; 3"))
    keys = [(r.family, r.n, r.seed) for r in recs]
    assert keys == [("random", 9, 1), ("random", 9, 2), ("filled", 3, 1), ("filled", 3, 2),
                    ("filled", 4, 1), ("filled", 4, 2)]
    assert all(r.withinBound for r in recs)
    assert {r.k for r in recs if r.family == "filled"} == {3, 4}


def test_wrong_tree_aborts_with_parameters(monkeypatch):
    import heintree.bench as bench

    monkeypatch.setattr(bench, "trees_equivalent", lambda a, b: False)
    with pytest.raises(BenchFailure) as info:
        make_record("filled", make_filled((3,)), 4, 17, "given")
    assert info.value.instance["seed"] == 17
    assert "seed=17" in str(info.value)


def test_caterpillars_use_at_most_three_queries_per_leaf():
    recs = run_bench(load_config(CONFIGS[[p.name for p in CONFIGS].index("caterpillar.cfg")]))
    assert {r.n for r in recs} == {4, 8, 16, 32, 64, 128, 256}
    assert all(r.totalQueries <= 3 * r.n for r in recs)


def test_random_binary_within_bound():
    recs = run_bench(parse_config("families = random\nsizes = 64\nk = 3\nseeds = 0..19"))
    assert len(recs) == 20 and all(r.withinBound for r in recs)


def test_half_beanstalk_per_insertion():
    recs = run_bench(parse_config("families = beanstalk\ng = linear:1/2\nsizes = 243\n"
                                  "orders = given, random, depth-asc, depth-desc\nweights = unit"))
    limit = math.ceil(math.log(243, 3) - 1e-12) + 2
    assert limit == 7
    assert all(r.maxPerInsertion <= limit and r.withinBound for r in recs)
    assert all(r.beanstalkBound == 6 for r in recs)


@pytest.mark.parametrize("path", CONFIGS, ids=lambda p: p.name)
def test_shipped_configs_pass(path):
    recs = run_bench(load_config(path))
    assert recs and all(r.withinBound for r in recs)


def test_caterpillar_ratio_below_random_binary():
    cat = run_bench(parse_config("families = caterpillar\nsizes = 256\nweights = unit"))[0]
    rnd = run_bench(parse_config("families = random\nsizes = 256\nk = 3\nseeds = 0..19"))
    mean_random = sum(r.totalQueries for r in rnd) / len(rnd) / 256
    assert cat.totalQueries / 256 <= 3 < mean_random
