"""Verification routines: each runs one family of exact checks and returns counts plus failing cases."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .double import (Double, Quad, build_delorme_splitting, enumerate_systems, enumerate_triples,
                     lagrangian_subalg, r_subalg, sample_lagrangian_V, standard_system)
from .exactlin import Subspace
from .liealg import LieAlgebra, build_type_A, realization_defects
from .poisson import (SplittingContext, bracket_in_perp, check_ad_invariance_of_R, coisotropic_catalog,
                      corank_UU, drinfeld_core_invariant, intersection_translations, nilpotent_directions,
                      sample_q_translations,
                      normalizer_condition, projected_membership, random_group_element, rank_at_point,
                      rank_formula, sample_torus_solution, schouten_identity_failures,
                      torus_solution_classes)
from .rankformula import (OrbitIndex, bd_reduction, evaluate_common_point, find_common_point,
                          fromluy_decompose, orbit_index_sets)
from .weyl import exp_ad, torus_element, weyl_group


@dataclass
class CheckResult:
    name: str
    total: int = 0
    failed: int = 0
    empty: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failed == 0 and self.total > 0

    def record(self, ok: bool, detail=None) -> None:
        self.total += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < 10:
                self.failures.append(detail)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "total": self.total, "failed": self.failed,
                "empty_intersections": self.empty, "failures": self.failures, "info": self.info}


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def splittings_for(D: Double, count: int, seed: int = 0) -> list[tuple[str, tuple[Quad, Quad]]]:
    """The standard system followed by enumerated systems spread over the catalog."""
    out = [("standard", standard_system(D))]
    if count <= 1:
        return out
    systems = enumerate_systems(D, 1, seed)
    step = max(1, len(systems) // (count - 1))
    for k, s in enumerate(systems[::step][: count - 1]):
        out.append((f"system[{k * step}]", s))
    return out


def _context(D: Double, system) -> SplittingContext:
    sp = build_delorme_splitting(D, *system)
    return SplittingContext(D, sp.u, sp.u_prime)


@_timed
def check_realization(ranks=(1, 2, 3), algebras: list | None = None) -> CheckResult:
    res = CheckResult("realization")
    for L in (algebras if algebras is not None else [build_type_A(n) for n in ranks]):
        defects = realization_defects(L)
        res.record(not any(defects.values()), {"rank": L.rank, **defects})
    return res


@_timed
def check_schouten(ranks=(1, 2), splittings: int = 3) -> CheckResult:
    res = CheckResult("schouten")
    for n in ranks:
        D = Double(build_type_A(n))
        for name, system in splittings_for(D, splittings):
            ctx = _context(D, system)
            bad = schouten_identity_failures(D, ctx.A)
            res.record(not bad, {"rank": n, "splitting": name, "triples": bad[:5]})
    return res


@_timed
def check_projected_membership(ranks=(1, 2), splittings: int = 2, points: int = 2, seed: int = 0) -> CheckResult:
    res = CheckResult("projected_membership")
    rng = random.Random(seed)
    for n in ranks:
        D = Double(build_type_A(n))
        catalog = [(nm, q) for nm, q in coisotropic_catalog(D) if nm != "D"]
        for sname, system in splittings_for(D, splittings):
            ctx = _context(D, system)
            for qname, q in catalog:
                for k in range(points):
                    g = random_group_element(D, rng) if k else None
                    adq = g.act_space(q) if g is not None else q
                    in_u, in_up = projected_membership(D, ctx.A, ctx.u, ctx.up, adq)
                    res.record(in_u and in_up, {"rank": n, "splitting": sname, "q": qname})
    return res


@_timed
def check_rank_oracle(ranks=(1, 2), splittings: int = 2, points: int = 200, seed: int = 0) -> CheckResult:
    res = CheckResult("rank_oracle")
    rng = random.Random(seed)
    odd = 0
    for n in ranks:
        D = Double(build_type_A(n))
        catalog = coisotropic_catalog(D)
        for sname, system in splittings_for(D, splittings):
            ctx = _context(D, system)
            for _ in range(points):
                qname, q = rng.choice(catalog)
                g = random_group_element(D, rng)
                rep = rank_at_point(ctx, q, g, qname)
                odd += rep.rank_oracle % 2
                res.record(rep.agree, {"rank": n, "splitting": sname, **rep.to_json()})
    res.info["odd_ranks"] = odd
    return res


@_timed
def check_regularity(ranks=(1, 2), points: int = 2, translations: int = 20, seed: int = 0,
                     attempts: int = 8) -> CheckResult:
    """Rank and corank constant along intersection translations, for q with [q,q] in q^perp.

    Every point gets `translations` sampled Q-translations exp(ad x), x in Ad_g q, for the
    invariance of q^perp + u cap q.  Base points are resampled up to `attempts` times to find
    ones admitting intersection translations; q for which none turn up are listed in info.
    """
    res = CheckResult("regularity")
    rng = random.Random(seed)
    skipped = 0
    for n in ranks:
        D = Double(build_type_A(n))
        ctx = _context(D, standard_system(D))
        for qname, q in coisotropic_catalog(D):
            if not bracket_in_perp(D, q):
                skipped += 1
                continue
            chosen = []
            for _ in range(attempts):
                g = random_group_element(D, rng)
                moves = intersection_translations(ctx, D, q, g, rng, translations)
                if moves:
                    chosen.append((g, moves))
                if len(chosen) == points:
                    break
            if not chosen:
                res.info.setdefault("no_intersection_translations", []).append(f"A{n} {qname}")
                chosen = [(random_group_element(D, rng), []) for _ in range(points)]
            for g, moves in chosen:
                base = rank_at_point(ctx, q, g, qname)
                adq = g.act_space(q)
                q_moves = sample_q_translations(D, q, rng, translations, g)
                for b in q_moves:
                    res.record(drinfeld_core_invariant(D, ctx.u, adq, b), {"rank": n, "q": qname, "kind": "core"})
                for a in moves:
                    rep = rank_at_point(ctx, q, a @ g, qname)
                    ok = rep.rank_formula == base.rank_formula and rep.corank_UU == base.corank_UU
                    res.record(ok, {"rank": n, "q": qname, "base": base.rank_formula, "moved": rep.rank_formula})
                res.info.setdefault("q_translations_per_point", []).append(len(q_moves))
                res.info.setdefault("translations_per_point", []).append(len(moves))
    res.info["skipped_q"] = skipped
    return res


@_timed
def check_normalizer_condition(ranks=(1, 2), V_samples: int = 5) -> CheckResult:
    res = CheckResult("normalizer_condition")
    for n in ranks:
        D = Double(build_type_A(n))
        for S, T, d, _ in enumerate_triples(D.g, valid_only=True):
            for seed in range(V_samples):
                V = sample_lagrangian_V(D, S, T, d, seed=seed)
                for variant in ("plain", "prime", "doubleprime"):
                    l = lagrangian_subalg(D, S, T, d, V, variant)
                    res.record(normalizer_condition(D, l), {"rank": n, "S": S, "T": T, "variant": variant})
    return res


@_timed
def check_lagrangian_corank(ranks=(1, 2), points: int = 100, seed: int = 0) -> CheckResult:
    """corank_UU = 0 whenever the stabilizer is Lagrangian."""
    res = CheckResult("lagrangian_corank")
    rng = random.Random(seed)
    for n in ranks:
        D = Double(build_type_A(n))
        lags = []
        for S, T, d, _ in enumerate_triples(D.g, valid_only=True):
            for variant in ("plain", "prime", "doubleprime"):
                lags.append(lagrangian_subalg(D, S, T, d, sample_lagrangian_V(D, S, T, d, seed=rng.randrange(5)),
                                              variant))
        systems = splittings_for(D, 3)
        for _ in range(points):
            ctx = _context(D, rng.choice(systems)[1])
            q = rng.choice(lags)
            g = random_group_element(D, rng)
            adq = g.act_space(q)
            r = rank_formula(ctx, adq)
            res.record(corank_UU(ctx, adq, r) == 0, {"rank": n})
    return res


@_timed
def check_torus_intersection(ranks=(1, 2), a2_sample_step: int = 5) -> CheckResult:
    """n(l1) cap n(l2) is a Cartan subspace of dim z_S1 + z_S2."""
    res = CheckResult("torus_intersection")
    for n in ranks:
        D = Double(build_type_A(n))
        systems = enumerate_systems(D, 1, 0)
        if n >= 2:
            systems = systems[::a2_sample_step]
        hh = D.cartan_pair()
        for q1, q2 in systems:
            ctx = _context(D, (q1, q2))
            inter = ctx.n_u & ctx.n_up
            expect = D.parabolic(q1.S).z.dim + D.parabolic(q2.S).z.dim
            classes = len(torus_solution_classes(D.g.rank, q1.dmap, q2.dmap))
            ok = inter.dim == expect and inter <= hh and classes == expect
            res.record(ok, {"rank": n, "dim": inter.dim, "expected": expect, "classes": classes})
    return res


def rank_main_configurations(D: Double, systems, V_seed: int = 1):
    W = weyl_group(D.g)
    triples = enumerate_triples(D.g, valid_only=True)
    for sname, system in systems:
        q1, _ = system
        for S, T, d, _ in triples:
            base = Quad.make(S, T, d, sample_lagrangian_V(D, S, T, d, seed=V_seed))
            for v1 in W.coset_reps(S, "left"):
                for v2 in W.coset_reps(q1.T, "right"):
                    yield sname, system, base, v1, v2


@_timed
def check_rank_main(ranks=(1, 2), splittings: int = 4, min_configs: int = 100, seed: int = 0) -> CheckResult:
    """corank_main = corank_NN = intersection dim - oracle rank at constructed common points."""
    res = CheckResult("rank_main")
    rng = random.Random(seed)
    bd = CheckResult("bd_reduction")
    for n in ranks:
        D = Double(build_type_A(n))
        systems = splittings_for(D, splittings)
        configs = list(rank_main_configurations(D, systems))
        standard = [c for c in configs if c[0] == "standard"]
        others = [c for c in configs if c[0] != "standard"]
        rng.shuffle(others)
        chosen = standard + others[: max(0, min_configs - len(standard))]
        contexts = {}
        for sname, system, base, v1, v2 in chosen:
            if sname not in contexts:
                contexts[sname] = _context(D, system)
            ctx = contexts[sname]
            cps = find_common_point(D, system, base, v1, v2, u_prime=ctx.up)
            if not cps:
                res.empty += 1
                continue
            ev = evaluate_common_point(D, ctx, system, cps[0])
            ok = ev["corank_main"] == ev["corank_NN"] == ev["intersection_minus_rank"] and ev["corank_main"] >= 0
            per_rank = res.info.setdefault("points_per_rank", {})
            per_rank[n] = per_rank.get(n, 0) + 1
            res.record(ok, {"rank": n, "splitting": sname, "corank_main": ev["corank_main"],
                            "corank_NN": ev["corank_NN"], "intersection_minus_rank": ev["intersection_minus_rank"]})
            if sname == "standard":
                bd.record(bd_reduction(D, ev["xyz"]) == ev["corank_main"], {"rank": n})
    res.info["bd_reduction"] = {"total": bd.total, "failed": bd.failed}
    if bd.failed:
        res.failed += bd.failed
        res.failures.extend(bd.failures)
    return res


@_timed
def check_fromluy(ranks=(1, 2), splittings: int = 3, seed: int = 0, max_configs: int = 150) -> CheckResult:
    res = CheckResult("fromluy")
    rng = random.Random(seed)
    diff_total = diff_failed = literal_mismatch = 0
    for n in ranks:
        D = Double(build_type_A(n))
        g = D.g
        configs = list(rank_main_configurations(D, splittings_for(D, splittings), V_seed=2))
        rng.shuffle(configs)
        contexts = {}
        for sname, system, base, v1, v2 in configs[:max_configs]:
            q1, _ = system
            if sname not in contexts:
                contexts[sname] = _context(D, system)
            ctx = contexts[sname]
            S, T, d = base.S, base.T, base.dmap
            Tv, _ = orbit_index_sets(D, system, base, OrbitIndex("N_l1", v1, v2))
            m2 = torus_element(g, [rng.choice((2, -1, 3)) for _ in range(g.rank)])
            roots = [b for b in g.roots if g.datum.in_span(b, Tv)]
            if roots:
                x = [0] * g.dim
                x[g.E_index(rng.choice(roots))] = rng.choice((1, -2))
                m2 = m2 @ exp_ad(g, x)
            idx = OrbitIndex("N_l1", v1, v2, m2)
            from .double import r_perp
            a_primes = [r_perp(D, q1.S, q1.T, q1.dmap, "prime"), ctx.u, r_subalg(D, q1.S, q1.T, q1.dmap, "prime")]
            a_s = [r_perp(D, S, T, d), lagrangian_subalg(D, S, T, d, base.V), r_subalg(D, S, T, d)]
            reports = []
            for ap in a_primes:
                for a in a_s:
                    rep = fromluy_decompose(D, system, base, idx, ap, a)
                    literal_mismatch += rep.nil_literal_dim != rep.nil_dim
                    res.record(rep.ok, {"rank": n, **rep.to_json()})
                    reports.append(rep)
            for rep in reports[1:]:
                diff_total += 1
                diff_failed += (rep.intersection_dim - reports[0].intersection_dim) != (rep.YX_dim - reports[0].YX_dim)
    res.info.update({"difference_identities": diff_total, "difference_failed": diff_failed,
                     "literal_nil_space_mismatches": literal_mismatch})
    res.total += diff_total
    res.failed += diff_failed
    return res


@_timed
def check_torus_invariance(ranks=(1, 2), splittings: int = 3, samples: int = 20, seed: int = 0) -> CheckResult:
    """Ad_h R = R for torus solutions h; a unipotent on one factor is a negative control."""
    res = CheckResult("torus_invariance")
    rng = random.Random(seed)
    controls = 0
    for n in ranks:
        D = Double(build_type_A(n))
        g = D.g
        for sname, system in splittings_for(D, splittings):
            q1, q2 = system
            ctx = _context(D, system)
            for _ in range(samples):
                h = sample_torus_solution(D, q1.dmap, q2.dmap, rng)
                res.record(check_ad_invariance_of_R(ctx.A, h), {"rank": n, "splitting": sname})
            e = g.E(g.datum.simple_root(0))
            control = D.pair_element(exp_ad(g, e), None)
            ok = not check_ad_invariance_of_R(ctx.A, control)
            controls += ok
            res.record(ok, {"rank": n, "splitting": sname, "negative_control": True})
    res.info["negative_controls_rejected"] = controls
    return res


SUITE = {
    "realization": check_realization,
    "schouten": check_schouten,
    "projected_membership": check_projected_membership,
    "rank_oracle": check_rank_oracle,
    "regularity": check_regularity,
    "normalizer_condition": check_normalizer_condition,
    "lagrangian_corank": check_lagrangian_corank,
    "torus_intersection": check_torus_intersection,
    "rank_main": check_rank_main,
    "fromluy": check_fromluy,
    "torus_invariance": check_torus_invariance,
}
