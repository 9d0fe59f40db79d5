"""
Weyl groups and their lifts
===========================

W(A2) is generated by two simple reflections.  Minimal coset representatives
for a parabolic subgroup are the shortest elements of each coset, and
Weyl representatives lift group elements to automorphisms of g.
"""
from maninlab.liealg import build_type_A
from maninlab.weyl import weyl_group, weyl_rep

g = build_type_A(2)
W = weyl_group(g)
print("|W(A2)| =", len(W))

# left cosets of W_{a1}: three representatives of lengths 0, 1, 2
reps = W.coset_reps([0], "left")
print("W^{a1}:", [w.word for w in reps])

# the lift of s1 s2 maps root spaces to root spaces
rho = weyl_rep(g, [0, 1])
print("lift is an automorphism:", rho.is_automorphism_of(g))
w = W.from_word([0, 1])
beta = g.datum.simple_root(0)
image = rho.act(g.E(beta))
print("E_a1 goes to a multiple of E_w(a1):", g.span([image]) == g.span([g.E(w(beta))]))
