"""
Pushing homomorphisms to the leaves
===================================

Images of sums under additive maps and of polynomials under ring morphisms
are rewritten so that only atoms sit under a morphism.  Integer and natural
embeddings of literals become plain constants, so ``6%:R`` and
``(Posz 6)%:~R`` meet without evaluating anything in the target carrier.
"""

from polyrefl import default_registry, load_theory, parse, solve
from polyrefl.fuzz import FUZZ_THEORY

reg = load_theory(FUZZ_THEORY).freeze()

# an additive map distributes over sums
v = solve(parse("double_q(x + y) = double_q(x) + double_q(y) : rat [zmodule]", reg), reg)
print(v.status, v.atom_names())

# a ring morphism from int to rat commutes with the ring operations
v = solve(parse("embed_ZQ(a * b + 1) = embed_ZQ(a) * embed_ZQ(b) + 1 : rat [ring]", reg), reg)
print(v.status, v.atom_names())

# embedding coherence with an instrumented rat domain
reg = default_registry()
rat = reg.domain("rat")
rat.ops = 0
v = solve(parse("6%:R * 6%:R = (Posz 6 * 6)%:~R : rat [ring]", reg), reg)
print(v.status, "rat operations:", rat.ops)
