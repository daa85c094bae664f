"""Imbalance functions for g-beanstalks and the complexity bounds they imply.

A g-beanstalk is a rooted binary tree where, at every internal node, the
smaller child subtree has at most ``g(L)`` leaves, ``L`` being the leaf count
of the larger one.  All comparisons against ``g`` are exact: linear and
constant specs use rationals, and power specs ``g(x) = x^(p/q)`` compare via
``x^p`` against ``m^q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

INFINITY = math.inf
ITERATION_CAP = 10**6

Number = Union[int, Fraction]


@dataclass(frozen=True)
class GrowthSpec:
    """Imbalance function ``g``.

    ``kind`` is one of ``linear`` (``gamma * x``), ``power`` (``x ** gamma``),
    ``constant`` (``a``) or ``table`` (explicit values for x = 1, 2, ...,
    repeated past the end).  With ``floor_one`` set, values are raised to at
    least 1.
    """

    kind: str
    gamma: Optional[Fraction] = None
    a: Optional[int] = None
    values: tuple = ()
    floor_one: bool = False

    def __post_init__(self) -> None:
        if self.kind == "linear":
            if not 0 < self.gamma <= 1:
                raise ValueError("linear gamma must lie in (0, 1]")
        elif self.kind == "power":
            if not 0 < self.gamma < 1:
                raise ValueError("power gamma must lie in (0, 1)")
        elif self.kind == "constant":
            if self.a is None or self.a < 1:
                raise ValueError("constant a must be a positive integer")
        elif self.kind == "table":
            vals = self.values
            if not vals or any(v < 1 for v in vals):
                raise ValueError("table values must be non-empty and >= 1")
            if any(b < a for a, b in zip(vals, vals[1:])):
                raise ValueError("table values must be non-decreasing")
        else:
            raise ValueError(f"unknown growth kind {self.kind!r}")

    @classmethod
    def linear(cls, gamma) -> "GrowthSpec":
        return cls("linear", gamma=Fraction(gamma))

    @classmethod
    def power(cls, gamma) -> "GrowthSpec":
        return cls("power", gamma=Fraction(gamma))

    @classmethod
    def constant(cls, a: int) -> "GrowthSpec":
        return cls("constant", a=int(a))

    @classmethod
    def table(cls, values: Sequence) -> "GrowthSpec":
        return cls("table", values=tuple(Fraction(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "GrowthSpec":
        """``linear:1/2``, ``power:1/2``, ``const:4`` or ``table:1,1,2,3``."""
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        if not arg:
            raise ValueError(f"growth spec {text!r} lacks a parameter")
        if kind == "linear":
            return cls.linear(arg)
        if kind == "power":
            return cls.power(arg)
        if kind in ("const", "constant"):
            return cls.constant(int(arg))
        if kind == "table":
            return cls.table(arg.split(","))
        raise ValueError(f"unknown growth kind {kind!r}")

    def clamped(self) -> "GrowthSpec":
        return replace(self, floor_one=True)

    def __str__(self) -> str:
        if self.kind in ("linear", "power"):
            return f"{self.kind}:{self.gamma}"
        if self.kind == "constant":
            return f"const:{self.a}"
        return "table:" + ",".join(str(v) for v in self.values)


def _table_at(spec: GrowthSpec, x: Number) -> Fraction:
    idx = min(int(x), len(spec.values)) - 1
    return spec.values[max(idx, 0)]


def _int_root(value: int, q: int) -> Optional[int]:
    """Exact integer q-th root of *value*, or None."""
    r = round(value ** (1.0 / q))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**q == value:
            return cand
    return None


def g_eval(spec: GrowthSpec, n: Number):
    """``g(n)``; exact (Fraction) except for power specs at non-perfect powers."""
    if n < 1:
        raise ValueError("g is defined for n >= 1")
    if spec.kind == "linear":
        value = spec.gamma * n
    elif spec.kind == "constant":
        value = Fraction(spec.a)
    elif spec.kind == "table":
        value = _table_at(spec, n)
    else:
        n = Fraction(n)
        p, q = spec.gamma.numerator, spec.gamma.denominator
        num = _int_root(n.numerator**p, q)
        den = _int_root(n.denominator**p, q)
        if num is not None and den is not None:
            value = Fraction(num, den)
        else:
            value = float(n) ** float(spec.gamma)
    if spec.floor_one and value < 1:
        return Fraction(1)
    return value


def g_at_least(spec: GrowthSpec, x: int, m: Number) -> bool:
    """Exact test of ``g(x) >= m``."""
    m = Fraction(m)
    if spec.floor_one and m <= 1:
        return True
    if spec.kind == "power":
        p, q = spec.gamma.numerator, spec.gamma.denominator
        return x**p * m.denominator**q >= m.numerator**q
    return g_eval(spec, x) >= m


def g_hat_inverse(spec: GrowthSpec, n: Number):
    """Smallest natural x with ``g(x) >= n``, or INFINITY if g never gets there."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if spec.kind == "constant" and not g_at_least(spec, 1, n):
        return INFINITY
    if spec.kind == "table" and not g_at_least(spec, len(spec.values), n):
        return INFINITY
    hi = 1
    while not g_at_least(spec, hi, n):
        hi *= 2
        if hi > ITERATION_CAP * ITERATION_CAP:
            raise RuntimeError(f"no x with g(x) >= {n} found for {spec}")
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if g_at_least(spec, mid, n):
            hi = mid
        else:
            lo = mid + 1
    return lo


def h_step(spec: GrowthSpec, m: int):
    inv = g_hat_inverse(spec, m)
    return INFINITY if inv == INFINITY else inv + m


@dataclass(frozen=True)
class BeanstalkBound:
    """``bound_value`` is the least C with ``n < h^C(1)``; complexity is below it."""

    n: int
    bound_value: int
    trace: tuple
    used_closed_form: bool = False


def beanstalk_complexity_bound(spec: GrowthSpec, n: int) -> BeanstalkBound:
    if n < 1:
        raise ValueError("n must be >= 1")
    trace = [1]
    while not n < trace[-1]:
        if len(trace) > ITERATION_CAP:
            raise RuntimeError(f"h-iteration did not pass {n} for {spec}")
        nxt = h_step(spec, trace[-1])
        if nxt == INFINITY:
            # g saturates below the next iterate; fall back to the constant-g
            # closed form (C(n) <= value, so the strict bound is value + 1)
            a = spec.a if spec.kind == "constant" else math.ceil(max(spec.values))
            closed = corollary_bound(GrowthSpec.constant(a), max(n, 2))
            return BeanstalkBound(n, closed + 1, tuple(trace), used_closed_form=True)
        trace.append(nxt)
    return BeanstalkBound(n, len(trace) - 1, tuple(trace))


def _ceil_log(base: Fraction, n: int) -> int:
    """Smallest C >= 0 with ``base**C >= n`` (base > 1)."""
    c, acc = 0, Fraction(1)
    while acc < n:
        acc *= base
        c += 1
    return c


def corollary_bound(spec: GrowthSpec, n: int) -> int:
    """Closed-form complexity bound for linear, power and constant g."""
    if spec.kind == "linear":
        return _ceil_log(1 + 1 / spec.gamma, n)
    if spec.kind == "power":
        if n < 2:
            raise ValueError("power closed form needs n >= 2")
        # floor(log_{1/gamma} log2 n) + 1 = least C with 2^((q/p)^C) > n
        p, q = spec.gamma.numerator, spec.gamma.denominator
        c = 0
        while not 2 ** (q**c) > n ** (p**c):
            c += 1
        return c
    if spec.kind == "constant":
        return _ceil_log(Fraction(2), spec.a) + 1
    raise ValueError("table growth specs have no closed-form bound")


def simple_iteration_bound(spec: GrowthSpec, n: int) -> int:
    """Least C with ``g^(C)(n) < 2``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if spec.kind == "power":
        # g^(C)(n) = n^(gamma^C); compare n^e < 2 as n^num < 2^den
        e = Fraction(1)
        for c in range(1, ITERATION_CAP):
            e *= spec.gamma
            if n**e.numerator < 2**e.denominator:
                return c
        raise RuntimeError("iteration cap reached")
    x: Number = n
    for c in range(1, ITERATION_CAP):
        x = g_eval(spec, x)
        if x < 2:
            return c
    raise RuntimeError(f"g does not shrink below 2 from {n}; need g(m) < m")


def beanstalk_violations(tree, spec: GrowthSpec) -> list:
    """Internal nodes breaking the beanstalk rule (or not binary), using the
    tree's rooted designation.  ``g`` is floored at 1 as the definition needs."""
    root = tree.root
    if root is None:
        raise ValueError("tree carries no rooted designation")
    g = spec.clamped()
    adj = tree.adj
    if isinstance(root, tuple):
        tops = [(root[0], root[1]), (root[1], root[0])]
    else:
        tops = [(root, None)]
    leaves: dict[int, int] = {}
    bad = []
    for top, parent in tops:
        order, stack = [], [(top, parent)]
        while stack:
            u, p = stack.pop()
            order.append((u, p))
            stack.extend((v, u) for v in adj[u] if v != p)
        for u, p in reversed(order):
            kids = [v for v in adj[u] if v != p]
            leaves[u] = sum(leaves[v] for v in kids) if kids else 1
            if kids and len(kids) != 2:
                bad.append(("not-binary", u))
            elif kids:
                small, large = sorted(leaves[v] for v in kids)
                if not g_at_least(g, large, small):
                    bad.append(("imbalance", u))
    if isinstance(root, tuple):
        small, large = sorted((leaves[root[0]], leaves[root[1]]))
        if not g_at_least(g, large, small):
            bad.append(("imbalance", root))
    return bad
