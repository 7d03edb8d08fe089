"""
Hodge ideals of the determinant
===============================

On n x n matrices F_k of the localization at det is the Hodge ideal I_k(Z)
twisted by (k+1) copies of the divisor. Ideals here are weight predicates:
S_lambda x S_lambda lies in the ideal or it does not.
"""

import numpy as np

from dethodge import (Box, dominant_weights, hodge_ideal_member, hodge_ideal_symbolic_member,
                      qpideal_identity_check)

n = 3
w = dominant_weights(n, Box(0, 4))
for k in range(4):
    inside = w[hodge_ideal_member(w, n, k)]
    print(f"I_{k}: {len(inside)} of {len(w)} weights in the box; smallest by |lambda|:",
          min(inside.tolist(), key=sum))

#############################################################################
# The same ideals as intersections of symbolic powers of minors (a rule taken
# from the literature on GL-invariant ideals, used only as a cross-check).
agree = all(np.array_equal(hodge_ideal_member(w, n, k), hodge_ideal_symbolic_member(w, n, k))
            for k in range(6))
print("symbolic-power description agrees:", agree)

#############################################################################
# F_k(Q_p) as a quotient of I_k(Z) by powers of (p+1)-minors, checked weight
# by weight.
for p in range(n + 1):
    print(p, qpideal_identity_check(n, p, 3, Box(-10, 8)).dumps())
