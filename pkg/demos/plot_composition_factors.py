"""
Composition factors of local cohomology
=======================================

Local cohomology of the structure sheaf of 4x4 matrices with support in the
rank <= 2 locus, first as classes in the Grothendieck group, then split into
the indecomposable summands Q_r.
"""

from dethodge import MatrixShape, gauss_binom, lc_class, q_table

# The generating function is built from Gaussian binomials in t^2.
print("C(4,2)_t =", gauss_binom(4, 2))

#############################################################################
# Factor table: degree j -> {r: multiplicity of D_r}
s = MatrixShape(4, 4)
table = lc_class(s, p=4, q=2)
for j, row in table.entries.items():
    print(f"H^{j}:", " + ".join(f"D_{r}" for r in sorted(row, reverse=True)))

#############################################################################
# On square matrices every module here is a sum of Q_r, and Q_r has the
# factors D_0..D_r once each, so b_r = a_r - a_{r+1}.
print(q_table(table).entries)

#############################################################################
# A rectangular case has more degrees and a gap in the rank pattern.
wide = lc_class(MatrixShape(7, 5), p=5, q=3)
for j, row in wide.entries.items():
    print(j, dict(sorted(row.items(), reverse=True)))
