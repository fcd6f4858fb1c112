"""
Field goals and their side conditions
=====================================

Field goals are cross-multiplied.  Every denominator yields a nonzero side
condition; over an ordered domain a condition built from embedded integers
reduces to an integer disequation, which is decided when it is ground or
linear in one variable.
"""

from polyrefl import default_registry, parse, solve

reg = default_registry()

# (n^2 - 1) / (n - 1) = n + 1 needs n != 1, which is genuinely false at n = 1
v = solve(parse("((n^+2)%:R - 1)/(n%:R - 1) = n%:R + 1 : rat [field]", reg), reg)
print(v.status)
for r in v.residuals:
    print(" ", r.ring, "->", r.int, f"({r.int_status}: {r.reason})")
    print("  derivation:", r.trace)

# with denominator 2n - 1 the condition 2n != 1 holds for every integer
v = solve(parse("((n^+2)%:R*2 - 1 + n%:R*2 - n%:R)/(n%:R*2 - 1) = n%:R + 1 : rat [field]", reg), reg)
print(v.status)
for r in v.discharged:
    print(" ", r.ring, "->", r.int, f"({r.reason})")

# over a finite field nothing is reduced to the integers
v = solve(parse("x / x = 1 : F97 [field]", reg), reg)
print(v.status, [r.ring for r in v.residuals])
