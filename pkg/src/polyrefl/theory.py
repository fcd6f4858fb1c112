"""Theory files: line-oriented carrier and homomorphism declarations.

::

    # comment
    carrier int : numDomainType = integers
    carrier F97 : fieldType = modular 97
    hom embed_ZQ : rmorphism int -> rat = embed
    hom double : additive int -> int = scale 2
"""

from __future__ import annotations

import re

from .carriers import Registry
from .errors import GoalSyntaxError

DEFAULT_THEORY = """\
carrier int : numDomainType = integers
carrier rat : numFieldType = rationals
carrier Z : comUnitRingType = integers
carrier F97 : fieldType = modular 97
hom embed_ZQ : rmorphism int -> rat = embed
"""

_CARRIER = re.compile(r"carrier\s+(?P<name>\w+)\s*:\s*(?P<kind>\w+)\s*=\s*(?P<sem>.+?)\s*$")
_HOM = re.compile(r"hom\s+(?P<name>\w+)\s*:\s*(?P<kind>\w+)\s+(?P<dom>\w+)\s*->\s*(?P<cod>\w+)"
                  r"\s*=\s*(?P<fn>.+?)\s*$")


def builtin_fn(spec, reg: Registry, dom, cod):
    """Executable semantics for ``embed``, ``scale k``, ``mod m`` and ``opaque``."""
    words = spec.split()
    cd = reg.carrier(cod).domain
    if words == ["opaque"] or cd is None or reg.carrier(dom).domain is None:
        return None
    if words == ["embed"]:
        return cd.coerce
    if len(words) == 2 and words[0] == "scale" and re.fullmatch(r"-?\d+", words[1]):
        k = int(words[1])
        return lambda x: cd.intmul(cd.coerce(x), k)
    if len(words) == 2 and words[0] == "mod" and words[1].isdigit():
        m = int(words[1])
        return lambda x: cd.coerce(x % m)
    raise ValueError(spec)


def load_theory(text: str, reg: Registry = None) -> Registry:
    reg = reg if reg is not None else Registry()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip())
        m = _CARRIER.fullmatch(stripped)
        if m:
            reg.declare_carrier(m["name"], m["kind"], m["sem"])
            continue
        m = _HOM.fullmatch(stripped)
        if m:
            try:
                fn = builtin_fn(m["fn"], reg, m["dom"], m["cod"])
            except ValueError:
                pos = col + stripped.index(m["fn"])
                raise GoalSyntaxError(pos, {"embed", "scale <int>", "mod <m>", "opaque"},
                                      m["fn"], line=lineno) from None
            reg.declare_hom(m["name"], m["kind"], m["dom"], m["cod"], fn)
            continue
        raise GoalSyntaxError(col, {"'carrier'", "'hom'"}, stripped.split()[0], line=lineno)
    return reg


def default_registry(freeze=True) -> Registry:
    reg = load_theory(DEFAULT_THEORY)
    return reg.freeze() if freeze else reg
