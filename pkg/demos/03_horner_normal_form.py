"""
Sparse Horner normal form
=========================

Ring goals are decided by normalizing both sides to a sparse Horner
polynomial.  The normal form is unique, so equal polynomials compare equal
structurally.
"""

from polyrefl import default_registry, parse, solve
from polyrefl.horner import PEadd, PEmul, PEpow, PEsub, PEX, horner_text, pnorm

# (x1 + x2)^2 - x2 * (2 * x1 + x2) is x1^2
x1, x2 = PEX(1), PEX(2)
e = PEsub(PEpow(PEadd(x1, x2), 2), PEmul(x2, PEadd(PEadd(x1, x1), x2)))
p = pnorm(e)
print(p)
print(horner_text(p, lambda i: f"x{i}"))

# the same through the goal language
reg = default_registry()
v = solve(parse("(a + b) ^+ 2 - b * (2 * a + b) = a * a : rat [ring]", reg), reg)
print(v.status, v.normal_forms)

# a wrong coefficient is refuted with the polynomial difference
v = solve(parse("(a + b) ^+ 2 = a ^+ 2 + b ^+ 2 + a * b : rat [ring]", reg), reg)
print(v.status, "difference:", v.difference)
