"""
Exact subspaces
===============

Subspaces are stored in reduced row echelon form over the rationals, so two
spans are equal exactly when their stored bases are equal.
"""
from fractions import Fraction

from maninlab.exactlin import Mat, Subspace

# two planes in Q^4 sharing a line
A = Subspace.span([[1, 0, 0, 0], [0, 1, 1, 0]], 4)
B = Subspace.span([[0, 1, 1, 0], [0, 0, 0, 1]], 4)
print("dim A + B =", (A + B).dim, " dim A & B =", (A & B).dim)

# the canonical basis ignores how a space was presented
assert Subspace.span([[2, 0, 0, 0], [1, 3, 3, 0]], 4) == A

# orthogonal complements with respect to a split form
gram = Mat.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
L = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0]], 4)
print("L is Lagrangian:", L.perp(gram) == L)

# rationals never turn into floats
M = Mat.from_rows([[Fraction(1, 3), 1], [2, Fraction(-1, 2)]])
print("inverse:", M.inverse().to_json())
