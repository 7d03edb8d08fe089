"""
The Hodge filtration as dominant weights
========================================

F_k of each local cohomology module is a disjoint union of the sets D^r_d,
one per composition factor, with an offset fixed by the weight. Everything
infinite is cut down to an explicit box of weights.
"""

from dethodge import (Box, FiltrationQuery, MatrixShape, TwistedSimple, filtration_dim,
                      generation_level, hodge_filtration, lc_class, start_level)

s = MatrixShape(5, 3)
table = lc_class(s, p=2, q=1)
for j in table.degrees():
    starts = {r: start_level(s, 2, 1, j, r) for r in table.factors(j)}
    print(f"H^{j}: start levels {starts}, generation level {generation_level(s, 2, 1, j)}")

#############################################################################
# The first nonzero piece of H^3 sits at level 4.
box = Box(-8, 2)
for k in range(3, 6):
    piece = hodge_filtration(s, 2, 1, 3, k, box)
    print(k, len(piece), [lam for lam, _ in piece.sorted_items()[:3]])

#############################################################################
# Dimensions grow with k inside a fixed box.
q44 = MatrixShape(4, 4)
for k in range(0, 5):
    print(k, filtration_dim(FiltrationQuery(q44, TwistedSimple(4), 2, 4, k, Box(-6, 1))))
