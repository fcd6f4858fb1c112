"""
Deciding Z-module equations with formal sums
============================================

Each side of a Z-module goal is reified into an AGExpr over a shared
variable map, normalized to a vector of integer coefficients, and the two
vectors are compared.
"""

from polyrefl import default_registry, parse, solve
from polyrefl.carriers import IntegerDomain
from polyrefl.zmod import ag_subst, zmod_ops

reg = default_registry()
goal = parse("(x + (-y)) + x = (-y) + (x + x) : int [zmodule]", reg)
v = solve(goal, reg)

# the reified trees, one per side
print(v.poly[0])
print(v.poly[1])

# both normalize to 2*x - y
print(v.atom_names(), v.normal_forms)
print(v.status)

# substituting values into the normal form gives the value of the expression
ops = zmod_ops(IntegerDomain())
print(ag_subst(*ops, [5, 3], v.normal_forms[0]))  # 2*5 - 3

# a false goal is refuted with the coefficient difference
print(solve(parse("x + x = x : int [zmodule]", reg), reg).difference)
