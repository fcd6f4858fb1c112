"""
Instance aliasing
=================

The same Z-module structure on ``int`` can be reached directly or by
projecting from the ring structure.  Matching instances up to projection
lets every operator node be reified; a literal comparison of instance terms
misses one and turns a whole subterm into an opaque atom.
"""

from polyrefl import default_registry, parse, solve
from polyrefl.reify import reify_goal

reg = default_registry()
text = "((x : int@ringType) + y) - z = (x + y : int@zmodType) - z : int [zmodule]"
goal = parse(text, reg)

# the two additions carry different instance paths
print(goal.lhs.args[0].instance, "vs", goal.rhs.args[0].instance)

# matching up to projection: no operator becomes an atom
q, _, _ = reify_goal(goal, reg)
print("conversion matcher, operator atoms:", q.operator_atoms)
print(solve(goal, reg).status)

# a literal matcher gives up on the projected instance
q, _, _ = reify_goal(goal, reg, matcher="syntactic")
print("syntactic matcher, operator atoms:", q.operator_atoms)
for e in q.trace[:3]:
    print(" ", e)
