"""
sl(n+1) in a Chevalley basis
============================

The bracket table of sl3 is read off from elementary matrices, and the
trace form is the invariant form.  Every realization identity is checked on
every basis tuple.
"""
from maninlab.liealg import build_type_A, realization_defects

g = build_type_A(2)
print("basis:", [g.label(k) for k in range(g.dim)])

# [E_a, E_-a] = H_a for the first simple root
a = g.datum.simple_root(0)
minus_a = tuple(-x for x in a)
print("[E_a, E_-a] == H_a:", g.bracket(g.E(a), g.E(minus_a)) == g.H(a))

# the pairing <x, H_a> recovers a(x)
x = g.H_simple(1)
print("<H_2, H_1> =", g.form_value(x, g.H(a)), " a1(H_2) =", g.root_value(a, x))

# Jacobi, invariance and the root relations, exhaustively
for n in (1, 2, 3):
    defects = realization_defects(build_type_A(n))
    print(f"A{n} defects:", {k: len(v) if isinstance(v, list) else v for k, v in defects.items()})
