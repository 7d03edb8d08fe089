"""
Weights and iterated local cohomology
=====================================

Every composition factor of H^j_{Z_q}(IC_{Z_p}) gets a weight determined by
its support and degree alone. On square matrices the Q-summands carry a
single Tate twist, which makes iterated functors easy to follow.
"""

from dethodge import MatrixShape, TwistedSimple, iterate, lc_mhm, weight_graded

s = MatrixShape(4, 4)
mhm = lc_mhm(s, TwistedSimple(4), q=2)
for j, mod in mhm.degrees.items():
    print(f"H^{j}: {mod}   weights {sorted(mod.weights(s).elements())}")

#############################################################################
# Group by weight instead of by degree.
for w, by_degree in weight_graded(mhm).items():
    print(w, {j: [str(ts) for ts in c] for j, c in by_degree.items()})

#############################################################################
# H^i_{Z_0} H^j_{Z_2} of the structure sheaf, keyed by (j, i).
it = iterate(s, TwistedSimple(4), [2, 0])
for (j, i), mod in it.table.items():
    print(f"H^{i}_Z0 H^{j}_Z2 = {mod}")

#############################################################################
# Off the square case modules are semisimple and each factor is pushed
# through on its own.
rect = iterate(MatrixShape(5, 4), TwistedSimple(4), [2, 1])
print(len(rect.table), "nonzero bidegrees for 5x4, chain [2, 1]")
