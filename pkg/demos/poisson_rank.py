"""
Rank of the Poisson structure on D/Q
====================================

A splitting gives an r-matrix R.  At a point g Q the rank of the projected
bivector is read off from the Drinfeld Lagrangian subalgebra, and compared
with the rank of the skew matrix it defines.
"""
import random

from maninlab.double import Double, r_subalg, standard_splitting
from maninlab.liealg import build_type_A
from maninlab.poisson import SplittingContext, coisotropic_catalog, random_group_element, rank_at_point, \
    schouten_identity_failures

D = Double(build_type_A(1))
sp = standard_splitting(D)
ctx = SplittingContext(D, sp.u, sp.u_prime)
print("R is antisymmetric:", ctx.A.is_antisymmetric())
print("Schouten identity failures:", len(schouten_identity_failures(D, ctx.A)))

# b- + b is coisotropic; walk a few random points of its orbit
q = r_subalg(D, [], [], {}, "doubleprime")
rng = random.Random(0)
for _ in range(4):
    rep = rank_at_point(ctx, q, random_group_element(D, rng), "b- + b")
    print(f"rank {rep.rank_formula} (oracle {rep.rank_oracle}), corank_UU {rep.corank_UU}, "
          f"corank_NN {rep.corank_NN}")

print("catalog of base stabilizers:", [name for name, _ in coisotropic_catalog(D)][:4], "...")
