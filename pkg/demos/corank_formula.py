"""
The corank on orbit intersections
=================================

Points lying on an N(l1)-orbit and an N(l2)-orbit at once are built from
Weyl data, and the corank predicted from the X/Y/Z subspaces of h + h is
compared with two direct computations.
"""
from maninlab.checks import rank_main_configurations, splittings_for
from maninlab.double import Double, build_delorme_splitting
from maninlab.liealg import build_type_A
from maninlab.poisson import SplittingContext
from maninlab.rankformula import evaluate_common_point, find_common_point

D = Double(build_type_A(2))
systems = splittings_for(D, 2)
contexts = {}
shown = 0
for sname, system, base, v1, v2 in rank_main_configurations(D, systems):
    if sname not in contexts:
        sp = build_delorme_splitting(D, *system)
        contexts[sname] = SplittingContext(D, sp.u, sp.u_prime)
    cps = find_common_point(D, system, base, v1, v2, u_prime=contexts[sname].up)
    if not cps:
        print(f"{sname}: v1={v1.word} v2={v2.word}  no common point constructed")
        continue
    ev = evaluate_common_point(D, contexts[sname], system, cps[0])
    print(f"{sname}: S={sorted(base.S)} T={sorted(base.T)} v1={v1.word} v2={v2.word}  "
          f"formula {ev['corank_main']}  N-orbits {ev['corank_NN']}  "
          f"intersection - rank {ev['intersection_minus_rank']}")
    shown += 1
    if shown == 12:
        break
