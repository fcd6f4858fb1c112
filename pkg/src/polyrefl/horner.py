"""Polynomial syntax, sparse Horner normal forms and the ring/field deciders.

A :class:`SparsePoly` is one of

* ``Pc(c)``       the integer constant ``c``;
* ``Pinj(j, P)``  ``P`` evaluated with the first ``j`` variables skipped;
* ``PX(P, i, Q)`` ``P * X1^i + Q``, where ``Q`` does not mention ``X1``
  (it is evaluated with one variable skipped).

The smart constructors :func:`mk_pinj` and :func:`mk_px` keep every result
canonical, so two polynomials are equal as functions over the integers
exactly when they are equal as tuples.  Variables in :class:`PEX` are
1-based; ``PEX(k)`` reads entry ``k - 1`` of the variable map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from ._tree import Node, fold
from .errors import IndexOutOfRange


# PExpr / FExpr ---------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class PEO(Node):
    pass


@dataclass(frozen=True, slots=True)
class PEI(Node):
    pass


@dataclass(frozen=True, slots=True)
class PEc(Node):
    c: int


@dataclass(frozen=True, slots=True)
class PEX(Node):
    index: int


@dataclass(frozen=True, slots=True)
class PEadd(Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class PEsub(Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class PEmul(Node):
    l: Node
    r: Node


@dataclass(frozen=True, slots=True)
class PEopp(Node):
    e: Node


@dataclass(frozen=True, slots=True)
class PEpow(Node):
    e: Node
    n: int


@dataclass(frozen=True, slots=True)
class FEinv(Node):
    e: Node
    origin: object = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class FEdiv(Node):
    l: Node
    r: Node
    origin: object = field(default=None, compare=False)


# field syntax shares the polynomial constructors
FEO, FEI, FEc, FEX, FEadd, FEsub, FEmul, FEopp, FEpow = (
    PEO, PEI, PEc, PEX, PEadd, PEsub, PEmul, PEopp, PEpow)

_BIN = (PEadd, PEsub, PEmul)


def _expand(n, _):
    t = type(n)
    if t in _BIN or t is FEdiv:
        return [(n.l, None), (n.r, None)], None
    if t is PEopp or t is PEpow or t is FEinv:
        return [(n.e, None)], None
    return (), None


# sparse Horner polynomials -----------------------------------------------------

class Pc(NamedTuple):
    c: int


class Pinj(NamedTuple):
    j: int
    p: tuple


class PX(NamedTuple):
    p: tuple
    i: int
    q: tuple


P0 = Pc(0)
P1 = Pc(1)


def mk_pinj(j, p):
    if j == 0 or type(p) is Pc:
        return p
    if type(p) is Pinj:
        return Pinj(j + p.j, p.p)
    return Pinj(j, p)


def mk_px(p, i, q):
    tp = type(p)
    if tp is Pc:
        if p.c == 0:
            return mk_pinj(1, q)
    elif tp is PX and p.q == P0:
        return PX(p.p, p.i + i, q)
    return PX(p, i, q)


def mk_x(k):
    """The polynomial of the 1-based variable ``k``."""
    return mk_pinj(k - 1, PX(P1, 1, P0))


def popp(p):
    t = type(p)
    if t is Pc:
        return Pc(-p.c)
    if t is Pinj:
        return Pinj(p.j, popp(p.p))
    return PX(popp(p.p), p.i, popp(p.q))


def _addc(p, c):
    t = type(p)
    if t is Pc:
        return Pc(p.c + c)
    if t is Pinj:
        return Pinj(p.j, _addc(p.p, c))
    return PX(p.p, p.i, _addc(p.q, c))


def _addi(j, q, p):
    """``p + Pinj(j, q)``."""
    t = type(p)
    if t is Pc:
        return mk_pinj(j, _addc(q, p.c))
    if t is Pinj:
        d = p.j - j
        if d > 0:
            return mk_pinj(j, padd(Pinj(d, p.p), q))
        if d == 0:
            return mk_pinj(j, padd(p.p, q))
        return mk_pinj(p.j, _addi(-d, q, p.p))
    if j == 1:
        return PX(p.p, p.i, padd(p.q, q))
    return PX(p.p, p.i, _addi(j - 1, q, p.q))


def _addx(p2, i2, p):
    """``p + p2 * X1^i2``."""
    t = type(p)
    if t is Pc:
        return PX(p2, i2, p)
    if t is Pinj:
        return PX(p2, i2, p.p if p.j == 1 else Pinj(p.j - 1, p.p))
    d = p.i - i2
    if d > 0:
        return mk_px(padd(PX(p.p, d, P0), p2), i2, p.q)
    if d == 0:
        return mk_px(padd(p.p, p2), p.i, p.q)
    return mk_px(_addx(p2, -d, p.p), p.i, p.q)


def padd(p, p2):
    t2 = type(p2)
    if t2 is Pc:
        return _addc(p, p2.c) if p2.c else p
    if t2 is Pinj:
        return _addi(p2.j, p2.p, p)
    t = type(p)
    if t is Pc:
        return PX(p2.p, p2.i, _addc(p2.q, p.c))
    if t is Pinj:
        rest = p.p if p.j == 1 else Pinj(p.j - 1, p.p)
        return PX(p2.p, p2.i, padd(rest, p2.q))
    d = p.i - p2.i
    q = padd(p.q, p2.q)
    if d > 0:
        return mk_px(padd(PX(p.p, d, P0), p2.p), p2.i, q)
    if d == 0:
        return mk_px(padd(p.p, p2.p), p.i, q)
    return mk_px(_addx(p2.p, -d, p.p), p.i, q)


def psub(p, p2):
    return padd(p, popp(p2))


def _mulc_aux(p, c):
    t = type(p)
    if t is Pc:
        return Pc(p.c * c)
    if t is Pinj:
        return mk_pinj(p.j, _mulc_aux(p.p, c))
    return mk_px(_mulc_aux(p.p, c), p.i, _mulc_aux(p.q, c))


def pmulc(p, c):
    if c == 0:
        return P0
    if c == 1:
        return p
    return _mulc_aux(p, c)


def _muli(j, q, p):
    """``p * Pinj(j, q)``."""
    t = type(p)
    if t is Pc:
        return mk_pinj(j, pmulc(q, p.c))
    if t is Pinj:
        d = p.j - j
        if d > 0:
            return mk_pinj(j, pmul(Pinj(d, p.p), q))
        if d == 0:
            return mk_pinj(j, pmul(p.p, q))
        return mk_pinj(p.j, _muli(-d, q, p.p))
    tail = pmul(p.q, q) if j == 1 else _muli(j - 1, q, p.q)
    return mk_px(_muli(j, q, p.p), p.i, tail)


def pmul(p, p2):
    t2 = type(p2)
    if t2 is Pc:
        return pmulc(p, p2.c)
    if t2 is Pinj:
        return _muli(p2.j, p2.p, p)
    t = type(p)
    if t is Pc:
        return pmulc(p2, p.c)
    if t is Pinj:
        rest = p.p if p.j == 1 else Pinj(p.j - 1, p.p)
        return mk_px(pmul(p, p2.p), p2.i, pmul(rest, p2.q))
    # (P X^i + Q)(P' X^i' + Q')
    qq = pmul(p.q, p2.q)
    pq = _muli(1, p2.q, p.p)
    qp = pmul(mk_pinj(1, p.q), p2.p)
    pp = pmul(p.p, p2.p)
    return padd(mk_px(padd(mk_px(pp, p.i, P0), qp), p2.i, P0), mk_px(pq, p.i, qq))


def ppow(p, n):
    if n < 0:
        raise ValueError("negative exponent")
    acc = P1
    while n:
        if n & 1:
            acc = pmul(acc, p)
        n >>= 1
        if n:
            p = pmul(p, p)
    return acc


def pnorm(e):
    """Normalize a PExpr to its sparse Horner form."""
    def combine(n, _c, _m, r):
        t = type(n)
        if t is PEadd:
            return padd(r[0], r[1])
        if t is PEmul:
            return pmul(r[0], r[1])
        if t is PEsub:
            return psub(r[0], r[1])
        if t is PEopp:
            return popp(r[0])
        if t is PEpow:
            return ppow(r[0], n.n)
        if t is PEX:
            if n.index < 1:
                raise IndexOutOfRange(f"PEX index {n.index} must be positive")
            return mk_x(n.index)
        if t is PEc:
            return Pc(n.c)
        if t is PEO:
            return P0
        if t is PEI:
            return P1
        raise TypeError(f"not a PExpr node: {n!r}")

    return fold(e, None, _expand, combine)


def is_const(p, c=None):
    return type(p) is Pc and (c is None or p.c == c)


# evaluation ----------------------------------------------------------------

def _embed(dom, c):
    return dom.intmul(dom.one(), c)


def peval(e, vm, dom):
    """Evaluate a PExpr (or FExpr) in an executable carrier domain."""
    def combine(n, _c, _m, r):
        t = type(n)
        if t is PEadd:
            return dom.add(r[0], r[1])
        if t is PEmul:
            return dom.mul(r[0], r[1])
        if t is PEsub:
            return dom.sub(r[0], r[1])
        if t is PEopp:
            return dom.neg(r[0])
        if t is PEpow:
            return dom.pow(r[0], n.n)
        if t is FEinv:
            return dom.inv(r[0])
        if t is FEdiv:
            return dom.mul(r[0], dom.inv(r[1]))
        if t is PEX:
            if not 1 <= n.index <= len(vm):
                raise IndexOutOfRange(f"PEX {n.index} with {len(vm)} variables")
            return vm[n.index - 1]
        if t is PEc:
            return _embed(dom, n.c)
        if t is PEO:
            return dom.zero()
        return dom.one()

    return fold(e, None, _expand, combine)


def poly_eval(p, vm, dom, offset=0):
    t = type(p)
    if t is Pc:
        return _embed(dom, p.c)
    if t is Pinj:
        return poly_eval(p.p, vm, dom, offset + p.j)
    if offset >= len(vm):
        raise IndexOutOfRange(f"variable {offset + 1} with {len(vm)} variables")
    head = dom.mul(poly_eval(p.p, vm, dom, offset), dom.pow(vm[offset], p.i))
    return dom.add(head, poly_eval(p.q, vm, dom, offset + 1))


# deciders ---------------------------------------------------------------------

def ring_decide(e1, e2) -> bool:
    return pnorm(e1) == pnorm(e2)


def ring_difference(e1, e2):
    return psub(pnorm(e1), pnorm(e2))


@dataclass(frozen=True)
class SideCondition:
    """Obligation ``expr != 0``; ``poly`` is the normal form of ``expr``."""

    expr: Node
    poly: tuple = field(repr=False)
    origin: object = field(default=None, compare=False)


class Fraction_(NamedTuple):
    # numerator polynomial over a multiset of denominator factors
    num: tuple
    den: tuple  # ((factor, exponent), ...) sorted by first occurrence


def _den_product(den):
    acc = P1
    for f, k in den:
        acc = pmul(acc, ppow(f, k))
    return acc


def _lcm(d1, d2):
    """Least common multiple by factor multiplicity (no polynomial gcd)."""
    out = dict(d1)
    for f, k in d2:
        if out.get(f, 0) < k:
            out[f] = k
    return tuple(out.items())


def _cofactor(common, den):
    have = dict(den)
    acc = P1
    for f, k in common:
        e = k - have.get(f, 0)
        if e:
            acc = pmul(acc, ppow(f, e))
    return acc


def _den_mul(d1, d2, scale=1):
    out = dict(d1)
    for f, k in d2:
        out[f] = out.get(f, 0) + k * scale
    return tuple(out.items())


@dataclass
class FieldForm:
    """``num / den`` valid wherever every condition in ``conds`` holds."""

    num: tuple
    den: tuple
    factors: tuple
    conds: list
    suppressed: list

    @property
    def num_expr(self):
        return to_pexpr(self.num)

    @property
    def den_expr(self):
        return to_pexpr(self.den)


def coefficients(p):
    """Every constant coefficient of a normal form."""
    stack = [p]
    while stack:
        q = stack.pop()
        t = type(q)
        if t is Pc:
            yield q.c
        elif t is Pinj:
            stack.append(q.p)
        else:
            stack.extend((q.p, q.q))


def zero_mod(p, char=0) -> bool:
    """``p`` vanishes identically in characteristic ``char``."""
    if not char:
        return p == P0
    return all(c % char == 0 for c in coefficients(p))


def _nonzero_constant(poly, char):
    # char None: unknown characteristic, only units are known to be nonzero
    if type(poly) is not Pc:
        return False
    if char is None:
        return poly.c in (1, -1)
    return poly.c % char != 0 if char else poly.c != 0


class _Conds:
    def __init__(self, char=0):
        self.char = char
        self.conds = []
        self.suppressed = []
        self._seen = set()

    def emit(self, poly, origin):
        if poly in self._seen:
            return
        self._seen.add(poly)
        cond = SideCondition(to_pexpr(poly), poly, origin)
        if _nonzero_constant(poly, self.char):
            self.suppressed.append(cond)
        else:
            self.conds.append(cond)


def _fadd(a, b):
    if a.den == b.den:
        return Fraction_(padd(a.num, b.num), a.den)
    common = _lcm(a.den, b.den)
    n = padd(pmul(a.num, _cofactor(common, a.den)), pmul(b.num, _cofactor(common, b.den)))
    return Fraction_(n, common)


def _finv(a, origin, sink):
    sink.emit(a.num, origin)
    num = _den_product(a.den)
    n = a.num
    if type(n) is Pc and n.c in (1, -1):
        return Fraction_(pmulc(num, n.c), ())
    return Fraction_(num, ((n, 1),))


def _field_fold(e, sink):
    def combine(n, _c, _m, r):
        t = type(n)
        if t is PEadd:
            return _fadd(r[0], r[1])
        if t is PEsub:
            return _fadd(r[0], Fraction_(popp(r[1].num), r[1].den))
        if t is PEmul:
            a, b = r
            return Fraction_(pmul(a.num, b.num), _den_mul(a.den, b.den))
        if t is PEopp:
            return Fraction_(popp(r[0].num), r[0].den)
        if t is PEpow:
            a = r[0]
            return Fraction_(ppow(a.num, n.n), _den_mul((), a.den, n.n) if n.n else ())
        if t is FEinv:
            return _finv(r[0], n.origin, sink)
        if t is FEdiv:
            a, b = r
            binv = _finv(b, n.origin, sink)
            return Fraction_(pmul(a.num, binv.num), _den_mul(a.den, binv.den))
        if t is PEX:
            return Fraction_(mk_x(n.index), ())
        if t is PEc:
            return Fraction_(Pc(n.c), ())
        if t is PEO:
            return Fraction_(P0, ())
        if t is PEI:
            return Fraction_(P1, ())
        raise TypeError(f"not an FExpr node: {n!r}")

    return fold(e, None, _expand, combine)


def field_simplify(e, sink=None, char=0) -> FieldForm:
    own = sink is None
    sink = sink or _Conds(char)
    fr = _field_fold(e, sink)
    den = tuple((f, k) for f, k in fr.den if k)
    return FieldForm(fr.num, _den_product(den), den,
                     sink.conds if own else list(sink.conds),
                     sink.suppressed if own else list(sink.suppressed))


@dataclass
class FieldDecision:
    equal: bool
    conds: list
    suppressed: list
    lhs: FieldForm
    rhs: FieldForm
    difference: tuple  # normal form of lhs_num*cof - rhs_num*cof


def field_decide(lhs, rhs, char=0) -> FieldDecision:
    """Cross-multiply over the common denominator and compare numerators.

    ``char`` is the characteristic (None when unknown); it decides which
    constant denominators are known to be nonzero and which numerator
    differences vanish.
    """
    sink = _Conds(char)
    a, b = field_simplify(lhs, sink), field_simplify(rhs, sink)
    common = _lcm(a.factors, b.factors)
    diff = psub(pmul(a.num, _cofactor(common, a.factors)),
                pmul(b.num, _cofactor(common, b.factors)))
    return FieldDecision(zero_mod(diff, char or 0), sink.conds, sink.suppressed, a, b, diff)


# conversions and printing -------------------------------------------------------

def to_pexpr(p, offset=0):
    """A PExpr whose normal form is ``p`` (used for round trips and printing)."""
    t = type(p)
    if t is Pc:
        return PEc(p.c)
    if t is Pinj:
        return to_pexpr(p.p, offset + p.j)
    x = PEX(offset + 1)
    xi = x if p.i == 1 else PEpow(x, p.i)
    head = xi if p.p == P1 else PEmul(to_pexpr(p.p, offset), xi)
    if p.q == P0:
        return head
    return PEadd(head, to_pexpr(p.q, offset + 1))


def monomials(p):
    """Coefficient map keyed by sparse exponent vectors ``((var, exp), ...)``
    with 0-based variables in increasing order."""
    out = {}

    def walk(p, offset, prefix, coeff_key):
        t = type(p)
        if t is Pc:
            if p.c:
                key = tuple(sorted(coeff_key.items()))
                out[key] = out.get(key, 0) + p.c
            return
        if t is Pinj:
            walk(p.p, offset + p.j, prefix, coeff_key)
            return
        k2 = dict(coeff_key)
        k2[offset] = k2.get(offset, 0) + p.i
        walk(p.p, offset, prefix, k2)
        walk(p.q, offset + 1, prefix, coeff_key)

    walk(p, 0, None, {})
    return {k: v for k, v in out.items() if v}


def dense_monomials(p, nvars):
    """Coefficient map keyed by dense exponent tuples of length ``nvars``."""
    out = {}
    for key, c in monomials(p).items():
        exps = [0] * nvars
        for v, e in key:
            if v >= nvars:
                raise IndexOutOfRange(f"variable {v + 1} beyond {nvars}")
            exps[v] = e
        out[tuple(exps)] = c
    return out


def n_vars(p):
    return max((v + 1 for key in monomials(p) for v, _ in key), default=0)


def _default_name(i):
    return f"x{i}"


def horner_text(p, name=_default_name, offset=0):
    """Nested Horner rendering, e.g. ``(1)*x1^2 + ((2)*x2 + 0)``."""
    t = type(p)
    if t is Pc:
        return str(p.c)
    if t is Pinj:
        return horner_text(p.p, name, offset + p.j)
    x = name(offset + 1)
    pw = x if p.i == 1 else f"{x}^{p.i}"
    return f"({horner_text(p.p, name, offset)})*{pw} + {horner_text(p.q, name, offset + 1)}"


def monomial_table(p, name=_default_name):
    """One ``coefficient  monomial`` row per term, highest degree first."""
    rows = []
    items = sorted(monomials(p).items(),
                   key=lambda kv: (-sum(e for _, e in kv[0]), [(v, -e) for v, e in kv[0]]))
    for key, c in items:
        mono = "*".join(name(v + 1) + (f"^{e}" if e > 1 else "") for v, e in key) or "1"
        rows.append(f"{c:>8}  {mono}")
    return "\n".join(rows) if rows else f"{0:>8}  1"


_PREC = {PEadd: 1, PEsub: 1, PEmul: 2, FEdiv: 2, PEopp: 3, PEpow: 4, FEinv: 4}


def pretty(e, name=_default_name) -> str:
    """Infix rendering with MathComp-style operators."""
    def combine(n, _c, _m, r):
        t = type(n)
        if t is PEX:
            return (name(n.index), 5)
        if t is PEc:
            return (str(n.c), 5 if n.c >= 0 else 3)
        if t is PEO:
            return ("0", 5)
        if t is PEI:
            return ("1", 5)
        p = _PREC[t]

        def par(x, need):
            return x[0] if x[1] >= need else f"({x[0]})"

        if t is PEadd:
            rt = type(n.r)
            if rt is PEc and n.r.c < 0:
                return (f"{par(r[0], 1)} - {-n.r.c}", 1)
            if rt is PEopp:
                return (f"{par(r[0], 1)} - {r[1][0][1:]}", 1)
            return (f"{par(r[0], 1)} + {par(r[1], 2)}", 1)
        if t is PEsub:
            return (f"{par(r[0], 1)} - {par(r[1], 2)}", 1)
        if t is PEmul:
            return (f"{par(r[0], 2)} * {par(r[1], 3)}", 2)
        if t is FEdiv:
            return (f"{par(r[0], 2)} / {par(r[1], 3)}", 2)
        if t is PEopp:
            return (f"-{par(r[0], 4)}", p)
        if t is PEpow:
            return (f"{par(r[0], 5)} ^+ {n.n}", p)
        return (f"{par(r[0], 5)}^-1", p)

    return fold(e, None, _expand, combine)[0]


def show(e) -> str:
    """Constructor-application rendering, e.g. ``PEadd (PEX 1) PEI``."""
    def combine(n, _c, _m, r):
        t = type(n)
        args = [s if " " not in s else f"({s})" for s in r]
        if t is PEc:
            args = [str(n.c) if n.c >= 0 else f"({n.c})"]
        elif t is PEX:
            args = [str(n.index)]
        elif t is PEpow:
            args.append(str(n.n))
        return " ".join([t.__name__] + args)

    return fold(e, None, _expand, combine)


def show_poly(p) -> str:
    """Constructor rendering of a SparsePoly."""
    t = type(p)
    if t is Pc:
        return f"Pc {p.c}" if p.c >= 0 else f"Pc ({p.c})"
    if t is Pinj:
        return f"Pinj {p.j} ({show_poly(p.p)})"
    return f"PX ({show_poly(p.p)}) {p.i} ({show_poly(p.q)})"
