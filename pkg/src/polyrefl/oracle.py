"""Reference oracles that share no code with the Horner normalizer.

``dense_expand`` multiplies out a PExpr into a coefficient map keyed by
exponent vectors.  ``find_counterexample`` searches a growing integer grid
for a point where two evaluations differ.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .horner import PEadd, PEc, PEI, PEmul, PEO, PEopp, PEpow, PEsub, PEX


def _clean(m):
    return {k: v for k, v in m.items() if v != 0}


def _add(a, b, sign=1):
    out = defaultdict(int, a)
    for k, v in b.items():
        out[k] += sign * v
    return _clean(out)


def _mul(a, b):
    out = defaultdict(int)
    for ka, va in a.items():
        for kb, vb in b.items():
            out[tuple(x + y for x, y in zip(ka, kb))] += va * vb
    return _clean(out)


def dense_expand(e, nvars):
    """Coefficient map ``{exponent vector: coefficient}`` of a ring PExpr.

    Variable ``PEX i`` is the ``i``-th coordinate (1-based).
    """
    zero = (0,) * nvars
    memo = {}
    stack = [(e, False)]
    while stack:
        n, done = stack.pop()
        if id(n) in memo:
            continue
        t = type(n)
        kids = ()
        if t in (PEadd, PEsub, PEmul):
            kids = (n.l, n.r)
        elif t in (PEopp, PEpow):
            kids = (n.e,)
        if not done and kids:
            stack.append((n, True))
            stack.extend((k, False) for k in kids)
            continue
        if t is PEO:
            r = {}
        elif t is PEI:
            r = {zero: 1}
        elif t is PEc:
            r = _clean({zero: n.c})
        elif t is PEX:
            v = [0] * nvars
            v[n.index - 1] = 1
            r = {tuple(v): 1}
        elif t is PEadd:
            r = _add(memo[id(n.l)], memo[id(n.r)])
        elif t is PEsub:
            r = _add(memo[id(n.l)], memo[id(n.r)], -1)
        elif t is PEmul:
            r = _mul(memo[id(n.l)], memo[id(n.r)])
        elif t is PEopp:
            r = {k: -v for k, v in memo[id(n.e)].items()}
        elif t is PEpow:
            r = {zero: 1}
            for _ in range(n.n):
                r = _mul(r, memo[id(n.e)])
        else:
            raise TypeError(f"not a ring PExpr: {n!r}")
        memo[id(n)] = r
    return memo[id(e)]


def grid_points(nvars, radius):
    """Integer points with max-norm exactly ``radius`` (all points for radius 0)."""
    rng = range(-radius, radius + 1)
    for p in itertools.product(rng, repeat=nvars):
        if radius == 0 or max(abs(x) for x in p) == radius:
            yield p


def find_counterexample(f, g, nvars, max_radius=8):
    """First integer point (by max-norm) where ``f(point) != g(point)``.

    A nonzero polynomial of degree ``d`` in each variable cannot vanish on a
    grid of side ``d + 1``, so ``max_radius >= d / 2`` suffices for polynomials.
    """
    for radius in range(max_radius + 1):
        for p in grid_points(nvars, radius):
            if f(p) != g(p):
                return p
    return None
