import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heintree.beanstalk import (
    INFINITY,
    GrowthSpec,
    beanstalk_complexity_bound,
    beanstalk_violations,
    corollary_bound,
    g_at_least,
    g_eval,
    g_hat_inverse,
    simple_iteration_bound,
)
from heintree.complexity import rooted_complexity
from heintree.generators import make_beanstalk, make_caterpillar

HALF = GrowthSpec.linear("1/2")
ONE = GrowthSpec.linear(1)
ROOT = GrowthSpec.power("1/2")
FOUR = GrowthSpec.constant(4)


def scan_inverse(spec, n, limit=10_000):
    for x in range(1, limit):
        if g_at_least(spec, x, n):
            return x
    return None


def test_g_values():
    assert g_eval(HALF, 10) == 5
    assert g_eval(FOUR, 123) == 4
    assert g_eval(ROOT, 16) == 4
    assert g_eval(ROOT, 2) == pytest.approx(math.sqrt(2))
    assert g_eval(HALF, 1) == Fraction(1, 2)
    assert g_eval(HALF.clamped(), 1) == 1


def test_parse_specs():
    assert GrowthSpec.parse("linear:1/2") == HALF
    assert GrowthSpec.parse("const:4") == FOUR
    assert str(GrowthSpec.parse("power:1/3")) == "power:1/3"
    assert GrowthSpec.parse("table:1,1,2").values == (1, 1, 2)
    for bad in ("linear:2", "power:1", "const:0", "table:2,1", "cubic:3", "linear"):
        with pytest.raises(ValueError):
            GrowthSpec.parse(bad)


def test_inverse_examples():
    assert g_hat_inverse(HALF, 9) == 18
    assert g_hat_inverse(FOUR, 5) == INFINITY
    assert g_hat_inverse(FOUR, 4) == 1
    assert g_hat_inverse(ROOT, 4) == 16
    assert g_hat_inverse(GrowthSpec.table([1, 1, 2]), 3) == INFINITY


@pytest.mark.parametrize("spec", [HALF, ONE, ROOT, GrowthSpec.linear("2/7"), GrowthSpec.power("2/3"),
                                  GrowthSpec.table([1, 1, 2, 2, 3])])
def test_inverse_matches_linear_scan(spec):
    for n in range(1, 60):
        expect = scan_inverse(spec, n)
        got = g_hat_inverse(spec, n)
        assert got == (INFINITY if expect is None else expect)


def test_bound_traces():
    res = beanstalk_complexity_bound(HALF, 9)
    assert (res.bound_value, res.trace) == (3, (1, 3, 9, 27))
    res = beanstalk_complexity_bound(ONE, 8)
    assert (res.bound_value, res.trace) == (4, (1, 2, 4, 8, 16))
    res = beanstalk_complexity_bound(HALF, 1)
    assert res.bound_value == 1 and res.trace[0] == 1


def test_saturating_g_uses_closed_form():
    res = beanstalk_complexity_bound(FOUR, 1000)
    assert res.used_closed_form
    assert res.bound_value == corollary_bound(FOUR, 1000) + 1


def test_closed_forms():
    assert corollary_bound(HALF, 9) == 2
    assert corollary_bound(ROOT, 16) == 3
    assert corollary_bound(FOUR, 50) == 3
    assert corollary_bound(ONE, 8) == 3
    for n in range(2, 2000):
        assert corollary_bound(HALF, n) == math.ceil(math.log(n, 3) - 1e-12)
    for n in (3, 4, 15, 16, 17, 255, 256, 257, 65536, 65537):
        assert corollary_bound(ROOT, n) == math.floor(math.log2(math.log2(n)) + 1e-12) + 1
    with pytest.raises(ValueError):
        corollary_bound(GrowthSpec.table([1, 2]), 5)


def test_simple_iteration():
    assert simple_iteration_bound(ROOT, 16) == 3
    assert simple_iteration_bound(GrowthSpec.constant(1), 100) == 1
    assert simple_iteration_bound(HALF, 8) == 3


@pytest.mark.parametrize("spec", [HALF, ONE, GrowthSpec.linear("1/3"), ROOT, GrowthSpec.power("2/3")])
def test_bounds_are_mutually_consistent(spec):
    for n in range(2, 400):
        iterated = beanstalk_complexity_bound(spec, n).bound_value
        assert iterated - 1 <= corollary_bound(spec, n)
        if not (spec.kind == "linear" and spec.gamma == 1):
            assert simple_iteration_bound(spec, n) >= iterated - 1


def test_constant_one_is_caterpillar():
    tree = make_beanstalk(GrowthSpec.constant(1), 6)
    cat = make_caterpillar(6)
    assert sorted(len(v) for v in tree.adj.values()) == sorted(len(v) for v in cat.adj.values())
    assert beanstalk_violations(tree, GrowthSpec.constant(1)) == []


def test_balanced_allowed_for_gamma_one():
    tree = make_beanstalk(ONE, 8)
    assert beanstalk_violations(tree, ONE) == []
    assert rooted_complexity(tree, tree.root).value == 3


def test_audit_flags_imbalance():
    cat = make_caterpillar(8)
    assert beanstalk_violations(cat, GrowthSpec.constant(1)) == []
    assert any(kind == "imbalance" for kind, _ in beanstalk_violations(make_beanstalk(ONE, 16), FOUR))


def test_half_beanstalks_meet_closed_form():
    for n in range(4, 513):
        tree = make_beanstalk(HALF, n)
        assert rooted_complexity(tree, tree.root).value <= corollary_bound(HALF, n)


@settings(max_examples=40, deadline=None)
@given(
    spec=st.sampled_from([HALF, ONE, ROOT, GrowthSpec.linear("1/3"), GrowthSpec.power("1/3"),
                          GrowthSpec.constant(1), GrowthSpec.constant(3), GrowthSpec.table([1, 2, 2, 3])]),
    n=st.integers(2, 300),
)
def test_generated_beanstalks_stay_below_iterated_bound(spec, n):
    tree = make_beanstalk(spec, n)
    assert tree.n_leaves == n
    assert beanstalk_violations(tree, spec) == []
    # bound from the clamped g, which the generator uses
    bound = beanstalk_complexity_bound(spec.clamped(), n).bound_value
    assert rooted_complexity(tree, tree.root).value < bound
