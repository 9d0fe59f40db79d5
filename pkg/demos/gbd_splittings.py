"""
Lagrangian splittings of g + g
==============================

Generalized Belavin-Drinfeld triples (S, T, d) are enumerated for A2.  A
compatible pair of quadruples gives two transversal Lagrangian subalgebras.
"""
from maninlab.double import (Double, build_delorme_splitting, enumerate_systems, enumerate_triples,
                             standard_splitting, validate_gbd_system)
from maninlab.liealg import build_type_A

D = Double(build_type_A(2))
triples = enumerate_triples(D.g)
print(f"{len(triples)} triples, {sum(ok for *_, ok in triples)} valid")
for S, T, d, ok in triples[:6]:
    print("  S =", S, "T =", T, "d =", d, "valid" if ok else "invalid")

# the standard splitting: g_diag against b- + b with opposite Cartans
sp = standard_splitting(D)
print("standard: dims", sp.u.dim, sp.u_prime.dim, "intersection", sp.certificate())

# every enumerated system passes its own validation and gives a splitting
systems = enumerate_systems(D, samples_per_quad=1)
for q1, q2 in systems[:5]:
    assert validate_gbd_system(D, q1, q2).valid
    s = build_delorme_splitting(D, q1, q2)
    print("  S1 =", sorted(q1.S), "S2 =", sorted(q2.S), "lagrangian:",
          D.is_lagrangian(s.u) and D.is_lagrangian(s.u_prime))
print(len(systems), "systems in total")
