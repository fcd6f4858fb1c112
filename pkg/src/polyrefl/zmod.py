"""Homogeneous Z-module syntax, its formal-sum normal form, and the decision.

``AGExpr`` trees carry variable indices into a :class:`VarMap`; ``ag_norm``
counts signed occurrences of each variable, giving a dense coefficient list
(:class:`FormalSum`).  Two expressions are equal in every Z-module exactly
when the formal sum of their difference is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._tree import Node, fold


@dataclass(frozen=True, slots=True)
class AGX(Node):
    index: int


@dataclass(frozen=True, slots=True)
class AGO(Node):
    pass


@dataclass(frozen=True, slots=True)
class AGOpp(Node):
    e: Node


@dataclass(frozen=True, slots=True)
class AGAdd(Node):
    l: Node
    r: Node


AGExpr = (AGX, AGO, AGOpp, AGAdd)


class FormalSum(tuple):
    """Dense coefficient sequence; entry ``j`` is the coefficient of X_j."""

    def is_zero(self):
        return all(c == 0 for c in self)

    def __repr__(self):
        return f"FormalSum({list(self)})"


class VarMap:
    """Ordered atom table with the open-ended ``mem`` behaviour.

    Looking up an atom returns its index, appending it first if no
    structurally equal atom is present yet.  Indices are 0-based.
    """

    def __init__(self, entries=()):
        self.entries = []
        self._index = {}
        for e in entries:
            self.mem(e)

    def mem(self, term) -> int:
        i = self._index.get(term)
        if i is None:
            i = len(self.entries)
            self.entries.append(term)
            self._index[term] = i
        return i

    def find(self, term):
        return self._index.get(term)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"VarMap({self.entries!r})"


def nth(zero, vm, j):
    return vm[j] if 0 <= j < len(vm) else zero


def ag_eval(zero, opp, add, vm, e):
    def expand(n, _):
        if isinstance(n, AGOpp):
            return [(n.e, None)], None
        if isinstance(n, AGAdd):
            return [(n.l, None), (n.r, None)], None
        return (), None

    def combine(n, _c, _m, r):
        if isinstance(n, AGX):
            return nth(zero, vm, n.index)
        if isinstance(n, AGO):
            return zero
        if isinstance(n, AGOpp):
            return opp(r[0])
        return add(r[0], r[1])

    return fold(e, None, expand, combine)


def ag_norm(e) -> FormalSum:
    counts = {}
    stack = [(e, 1)]
    while stack:
        n, sign = stack.pop()
        if isinstance(n, AGX):
            counts[n.index] = counts.get(n.index, 0) + sign
        elif isinstance(n, AGOpp):
            stack.append((n.e, -sign))
        elif isinstance(n, AGAdd):
            stack.append((n.r, sign))
            stack.append((n.l, sign))
        elif not isinstance(n, AGO):
            raise TypeError(f"not an AGExpr node: {n!r}")
    width = max(counts) + 1 if counts else 0
    return FormalSum(counts.get(j, 0) for j in range(width))


def _scale(zero, add, x, n):
    # n *+ x by binary iterated addition
    acc = zero
    while n > 0:
        if n & 1:
            acc = add(acc, x)
        x = add(x, x)
        n >>= 1
    return acc


def ag_subst(zero, opp, add, vm, fs):
    """Sum of ``fs[j] * vm[j]`` using only the Z-module operations."""
    acc = zero
    for j, c in enumerate(fs):
        if c == 0:
            continue
        term = _scale(zero, add, nth(zero, vm, j), abs(c))
        acc = add(acc, opp(term) if c < 0 else term)
    return acc


def ag_difference(e1, e2) -> FormalSum:
    return ag_norm(AGAdd(e1, AGOpp(e2)))


def ag_decide(e1, e2) -> bool:
    return ag_difference(e1, e2).is_zero()


def zmod_ops(domain):
    """``(zero, opp, add)`` of an executable carrier domain."""
    return domain.zero(), domain.neg, domain.add


def show(e) -> str:
    """Print in constructor-application style, e.g. ``AGAdd (AGX 0) AGO``."""
    def expand(n, _):
        if isinstance(n, AGOpp):
            return [(n.e, None)], None
        if isinstance(n, AGAdd):
            return [(n.l, None), (n.r, None)], None
        return (), None

    def atom(s):
        return s if " " not in s else f"({s})"

    def combine(n, _c, _m, r):
        if isinstance(n, AGX):
            return f"AGX {n.index}"
        if isinstance(n, AGO):
            return "AGO"
        if isinstance(n, AGOpp):
            return f"AGOpp {atom(r[0])}"
        return f"AGAdd {atom(r[0])} {atom(r[1])}"

    return fold(e, None, expand, combine)
