"""Corank of the Poisson structure on orbit intersections in the variety of Lagrangian subalgebras of g + g.

A splitting ``l1 + l2`` comes from a gBD system ``(quad1, quad2)`` with
``l1 = l'(quad1)`` and ``l2 = l''(quad2)``, so ``N(l1) = R'`` and ``N(l2) = R''``.
An N(l1)-orbit is indexed by a base quadruple ``(S, T, d, V)``, a pair
``(v1, v2)`` in ``W^S x ^{T1}W`` and a Levi element ``m2``; an N(l2)-orbit by
``(w1, w2)`` in ``^{S2}W x W^T`` and ``m1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .double import (Double, Quad, partial_map_fixpoint, r_perp, r_subalg, lagrangian_subalg,
                     theta_graph, z_pair)
from .exactlin import Mat, Subspace
from .liealg import neg
from .poisson import SplittingContext, corank_NN, NN_intersection_dim, oracle_rank
from .weyl import GroupElement, WeylElement, torus_element, weyl_group, weyl_rep

__all__ = [
    "partial_map_fixpoint", "OrbitIndex", "XYZBundle", "CommonPoint", "orbit_index_sets", "build_xyz",
    "corank_main", "find_common_point", "fromluy_decompose", "bd_reduction", "theta_weyl",
    "evaluate_common_point", "difference_identity", "FromLuYReport",
]


class InconsistentIndex(ValueError):
    pass


@dataclass
class OrbitIndex:
    """Weyl pair and Levi element of an orbit; ``side`` is 'N_l1' for (v1, v2, m2) or 'N_l2' for (w1, w2, m1)."""

    side: str
    x1: WeylElement
    x2: WeylElement
    levi: GroupElement | None = None

    def to_json(self) -> dict:
        keys = ("v1", "v2", "m2_word") if self.side == "N_l1" else ("w1", "w2", "m1_word")
        return {keys[0]: [i + 1 for i in self.x1.word], keys[1]: [i + 1 for i in self.x2.word],
                keys[2]: self.levi.provenance if self.levi is not None else []}


def _simple_of(W, w: WeylElement, i: int) -> int | None:
    return W.simple_index(w(W.datum.simple_root(i)))


def theta_weyl(W, d: dict, c: WeylElement) -> WeylElement:
    """The image of c in W_S under s_a -> s_{d a}."""
    return W.from_word([d[i] for i in c.word])


def _check_index(W, base: Quad, system: tuple[Quad, Quad], idx: OrbitIndex) -> None:
    q1, q2 = system
    if idx.side == "N_l1":
        ok = idx.x1 in W.coset_reps(base.S, "left") and idx.x2 in W.coset_reps(q1.T, "right")
    elif idx.side == "N_l2":
        ok = idx.x1 in W.coset_reps(q2.S, "right") and idx.x2 in W.coset_reps(base.T, "left")
    else:
        raise InconsistentIndex(f"unknown side {idx.side!r}")
    if not ok:
        raise InconsistentIndex("Weyl pair is not a pair of minimal coset representatives")


def orbit_index_sets(D: Double, system: tuple[Quad, Quad], base: Quad, idx: OrbitIndex) -> tuple[frozenset, frozenset]:
    """(T(v1,v2), S1(v1,v2)) for side N_l1, (S(w1,w2), S2(w1,w2)) for side N_l2."""
    W = weyl_group(D.g)
    _check_index(W, base, system, idx)
    q1, q2 = system
    d = base.dmap
    if idx.side == "N_l1":
        dinv = {t: s for s, t in d.items()}
        d1 = q1.dmap
        v1, v2inv = idx.x1, W.inverse(idx.x2)
        mapping = {}
        for a in base.T:
            b = _simple_of(W, v1, dinv[a])
            if b is None or b not in d1:
                continue
            mapping[a] = _simple_of(W, v2inv, d1[b])
        Tv = partial_map_fixpoint(mapping, base.T)
        S1v = frozenset(_simple_of(W, v1, dinv[a]) for a in Tv)
        return Tv, S1v
    d2inv = {t: s for s, t in q2.d}
    w1inv, w2 = W.inverse(idx.x1), idx.x2
    mapping = {}
    for a in base.S:
        b = _simple_of(W, w2, d[a])
        if b is None or b not in d2inv:
            continue
        mapping[a] = _simple_of(W, w1inv, d2inv[b])
    Sw = partial_map_fixpoint(mapping, base.S)
    S2w = frozenset(_simple_of(W, idx.x1, a) for a in Sw)
    return Sw, S2w


def _z_cap_h(D: Double, A: Iterable[int], B: Iterable[int]) -> Subspace:
    """z_A cap h_B inside g."""
    return D.parabolic(A).z & D.parabolic(B).h_S


def weyl_pair_element(D: Double, x1: WeylElement, x2: WeylElement) -> GroupElement:
    return D.pair_element(weyl_rep(D.g, x1.word), weyl_rep(D.g, x2.word))


@dataclass
class XYZBundle:
    T_v: frozenset
    S_w: frozenset
    S1_v: frozenset
    S2_w: frozenset
    X1: Subspace
    X2: Subspace
    Y1: Subspace
    Y2: Subspace
    Z1: Subspace
    Z2: Subspace
    X_tilde: Subspace
    p: Mat
    g_v: GroupElement
    g_w: GroupElement

    def dims(self) -> dict[str, int]:
        return {k: getattr(self, k).dim for k in ("X1", "X2", "Y1", "Y2", "Z1", "Z2", "X_tilde")}


def z_projection(D: Double, S, T) -> Mat:
    """Projection of h + h onto z_S + z_T along h_S + h_T (root spaces are sent to zero)."""
    return Mat.diag_blocks(D.parabolic(S).z_proj, D.parabolic(T).z_proj)


def build_xyz(D: Double, system: tuple[Quad, Quad], base: Quad, idx1: OrbitIndex, idx2: OrbitIndex) -> XYZBundle:
    if idx1.side != "N_l1" or idx2.side != "N_l2":
        raise InconsistentIndex("expected one index per side")
    q1, q2 = system
    S, T, d = base.S, base.T, base.dmap
    Tv, S1v = orbit_index_sets(D, system, base, idx1)
    Sw, S2w = orbit_index_sets(D, system, base, idx2)
    dinv = {t: s for s, t in d.items()}
    zz = z_pair(D, S, T)
    X1 = zz + theta_graph(D, S, T, d, _z_cap_h(D, [dinv[a] for a in Tv], S))
    graph_Sw = theta_graph(D, S, T, d, _z_cap_h(D, Sw, S))
    X2 = zz + graph_Sw
    g1 = theta_graph(D, q1.S, q1.T, q1.dmap, _z_cap_h(D, S1v, q1.S))
    g2 = theta_graph(D, q2.S, q2.T, q2.dmap, _z_cap_h(D, S2w, q2.S))
    Y1 = z_pair(D, q1.S, q1.T) + g1
    Y2 = z_pair(D, q2.S, q2.T) + g2
    Z1 = q1.V + g1
    Z2 = q2.V + g2
    gv = weyl_pair_element(D, idx1.x1, idx1.x2)
    gw = weyl_pair_element(D, idx2.x1, idx2.x2)
    p = z_projection(D, S, T)
    Vt = (X1 & gv.act_space_inverse(Z1)).image(p)
    return XYZBundle(Tv, Sw, S1v, S2w, X1, X2, Y1, Y2, Z1, Z2, Vt + graph_Sw, p, gv, gw)


def corank_main(D: Double, system: tuple[Quad, Quad], base: Quad, idx1: OrbitIndex, idx2: OrbitIndex,
                terms: dict | None = None, xyz: XYZBundle | None = None) -> int:
    q1, q2 = system
    b = xyz if xyz is not None else build_xyz(D, system, base, idx1, idx2)
    gvX1 = b.g_v.act_space(b.X1)
    t = {
        "z_S1": D.parabolic(q1.S).z.dim,
        "z_S2": D.parabolic(q2.S).z.dim,
        "z_S": D.parabolic(base.S).z.dim,
        "Y1_cap_X1": (b.Y1 & gvX1).dim,
        "Z1_cap_X1": (b.Z1 & gvX1).dim,
        "Y2_cap_X2": (b.Y2 & b.g_w.act_space(b.X2)).dim,
        "Z2_cap_Xt": (b.Z2 & b.g_w.act_space(b.X_tilde)).dim,
    }
    if terms is not None:
        terms.update(t)
    return (t["z_S1"] + t["z_S2"] + t["z_S"] - t["Y1_cap_X1"] + t["Z1_cap_X1"]
            - t["Y2_cap_X2"] + t["Z2_cap_Xt"])


def bd_reduction(D: Double, xyz: XYZBundle) -> int:
    """dim(h_{-diag} cap Ad_(w1,w2) X~): the corank for the standard splitting."""
    return (D.h_diag(-1) & xyz.g_w.act_space(xyz.X_tilde)).dim


# -- common points of an N(l1)-orbit and an N(l2)-orbit ----------------------------------

@dataclass
class CommonPoint:
    """The Lagrangian Ad_g l_{S,T,d,V}, g = (v1 m, v2 m2), shown to equal Ad_{r''(w1 m1, w2)} l_{S,T,d,V}."""

    base: Quad
    idx1: OrbitIndex
    idx2: OrbitIndex
    g: GroupElement
    point: Subspace
    r2: GroupElement
    extra: dict = field(default_factory=dict)


def _sign_tori(g) -> list[GroupElement]:
    return [torus_element(g, signs) for signs in itertools.product((1, -1), repeat=g.rank)]


def _levi_normalizing(D: Double, base: Quad, l: Subspace, c: WeylElement) -> list[GroupElement]:
    """Lifts (c dot, theta(c) dot) times sign tori that normalize l."""
    W = weyl_group(D.g)
    tc = theta_weyl(W, base.dmap, c)
    rho = weyl_pair_element(D, c, tc)
    out = []
    for t1 in _sign_tori(D.g):
        for t2 in _sign_tori(D.g):
            cand = rho @ D.pair_element(t1, t2)
            if cand.act_space(l) == l:
                out.append(cand)
    return out


def find_common_point(D: Double, system: tuple[Quad, Quad], base: Quad, v1: WeylElement, v2: WeylElement,
                      m2: GroupElement | None = None, u_prime: Subspace | None = None,
                      all_certificates: bool = False) -> list[CommonPoint]:
    """Certify the point Ad_{(v1, v2 m2)} l_{S,T,d,V} on an N(l2)-orbit.

    Searches c in W_S with v1 c = a w1 (a in W_{S2}, w1 in ^{S2}W) and
    w2 = theta2(a)^{-1} v2 theta(c) in W^T, then sign tori and m1 in the sign
    torus.  A certificate is accepted only if r'' = g rho (w1 m1, w2)^{-1}
    normalizes l2 exactly.  An empty list means no common point was constructed.
    """
    g = D.g
    W = weyl_group(g)
    q1, q2 = system
    S, T, d = base.S, base.T, base.dmap
    idx1 = OrbitIndex("N_l1", v1, v2, m2)
    _check_index(W, base, system, idx1)
    if u_prime is None:
        u_prime = lagrangian_subalg(D, q2.S, q2.T, q2.dmap, q2.V, "doubleprime")
    l = lagrangian_subalg(D, S, T, d, base.V, "plain")
    second = weyl_rep(g, v2.word) if m2 is None else weyl_rep(g, v2.word) @ m2
    gpt = D.pair_element(weyl_rep(g, v1.word), second)
    point = gpt.act_space(l)
    left_S2 = set(W.coset_reps(q2.S, "right"))
    right_T = set(W.coset_reps(T, "left"))
    d2 = q2.dmap
    found = []
    seen = set()
    for c in W.subgroup(S):
        x = v1 * c
        for a in W.subgroup(q2.S):
            w1 = W.inverse(a) * x
            if w1 not in left_S2:
                continue
            w2 = W.inverse(theta_weyl(W, d2, a)) * v2 * theta_weyl(W, d, c)
            if w2 not in right_T or (w1, w2) in seen and not all_certificates:
                continue
            for rho in _levi_normalizing(D, base, l, c):
                for m1 in _sign_tori(g):
                    gw = D.pair_element(weyl_rep(g, w1.word) @ m1, weyl_rep(g, w2.word))
                    r2 = gpt @ rho @ gw.inverse()
                    if r2.act_space(u_prime) == u_prime:
                        seen.add((w1, w2))
                        idx2 = OrbitIndex("N_l2", w1, w2, m1)
                        found.append(CommonPoint(base, idx1, idx2, gpt, point, r2, {"c": list(c.word)}))
                        if not all_certificates:
                            break
                else:
                    continue
                break
    return found


# -- the direct sum decomposition of a' cap Ad a ---------------------------------------

def in_family(D: Double, a: Subspace, S, T, d, variant: str) -> bool:
    """a lies between r^perp and r (of the given variant)."""
    return r_perp(D, S, T, d, variant) <= a <= r_subalg(D, S, T, d, variant)


@dataclass
class FromLuYReport:
    intersection_dim: int
    red_dim: int
    nil_dim: int
    nil_closed_form: int
    YX_dim: int
    f1_dim: int
    red_matches: bool
    nil_literal_dim: int = 0

    @property
    def ok(self) -> bool:
        return (self.red_dim + self.nil_dim == self.intersection_dim and self.nil_dim == self.nil_closed_form
                and self.red_matches and self.red_dim == self.YX_dim + self.f1_dim)

    def to_json(self) -> dict:
        return {"intersection_dim": self.intersection_dim, "red_dim": self.red_dim, "nil_dim": self.nil_dim,
                "nil_closed_form": self.nil_closed_form, "YX_dim": self.YX_dim, "f1_dim": self.f1_dim,
                "red_matches": self.red_matches, "nil_literal_dim": self.nil_literal_dim, "ok": self.ok}


def nil_second_factor(D: Double, T1, B) -> Subspace:
    """Root vectors E_beta with beta > 0 in span(T1) but not in span(B), plus n^-_{T1}.

    Second components of r'-elements whose first component lies in n_{S1(v)}
    land here; for T1 empty it is n^- = n^-_B.
    """
    g = D.g
    PT1 = D.parabolic(T1)
    pos = [b for b in g.positive_roots if g.datum.in_span(b, T1) and not g.datum.in_span(b, B)]
    return Subspace.span([g.E(b) for b in pos], g.dim) + PT1.n_minus


def fromluy_decompose(D: Double, system: tuple[Quad, Quad], base: Quad, idx: OrbitIndex,
                      a_prime: Subspace, a: Subspace) -> FromLuYReport:
    """Split a' cap Ad_{(v1, v2 m2)} a into its Levi and nilradical parts and compare with the closed forms."""
    g = D.g
    W = weyl_group(g)
    q1, _ = system
    S, T, d = base.S, base.T, base.dmap
    if idx.side != "N_l1":
        raise InconsistentIndex("decomposition is stated for N(l1)-orbits")
    if not in_family(D, a_prime, q1.S, q1.T, q1.dmap, "prime"):
        raise ValueError("a' does not lie between r'^perp and r'")
    if not in_family(D, a, S, T, d, "plain"):
        raise ValueError("a does not lie between r^perp and r")
    Tv, S1v = orbit_index_sets(D, system, base, idx)
    dS1v = [q1.dmap[s] for s in S1v]
    second = weyl_rep(g, idx.x2.word) if idx.levi is None else weyl_rep(g, idx.x2.word) @ idx.levi
    gfull = D.pair_element(weyl_rep(g, idx.x1.word), second)
    gv = weyl_pair_element(D, idx.x1, idx.x2)
    I = a_prime & gfull.act_space(a)
    PA, PB = D.parabolic(S1v), D.parabolic(dS1v)
    red = I & D.direct_sum(PA.m, PB.m)
    nil = I & D.direct_sum(PA.n, nil_second_factor(D, q1.T, dS1v))
    nil_literal = I & D.direct_sum(PA.n, PB.n_minus)
    n = D.parabolic(()).n
    nil_closed = idx.x2.length + (n & weyl_rep(g, idx.x1.word).act_space(D.parabolic(S).n)).dim
    dinv = {t: s for s, t in d.items()}
    Ya = (a_prime & z_pair(D, q1.S, q1.T)) + theta_graph(D, q1.S, q1.T, q1.dmap, _z_cap_h(D, S1v, q1.S))
    Xa = (a & z_pair(D, S, T)) + theta_graph(D, S, T, d, _z_cap_h(D, [dinv[t] for t in Tv], S))
    YX = Ya & gv.act_space(Xa)
    f1 = (r_perp(D, q1.S, q1.T, q1.dmap, "prime") & gfull.act_space(r_perp(D, S, T, d, "plain"))
          & D.direct_sum(PA.mbar, PB.mbar))
    red_matches = (YX & f1).dim == 0 and YX + f1 == red
    return FromLuYReport(I.dim, red.dim, nil.dim, nil_closed, YX.dim, f1.dim, red_matches, nil_literal.dim)


def difference_identity(D: Double, system, base: Quad, idx: OrbitIndex, pair_a: tuple[Subspace, Subspace],
                        pair_b: tuple[Subspace, Subspace]) -> bool:
    """dim(a' cap Ad a) - dim(b' cap Ad b) equals the difference of the Y cap X dims."""
    ra = fromluy_decompose(D, system, base, idx, *pair_a)
    rb = fromluy_decompose(D, system, base, idx, *pair_b)
    return ra.intersection_dim - rb.intersection_dim == ra.YX_dim - rb.YX_dim


# -- evaluating all routes at a common point ----------------------------------------------

def evaluate_common_point(D: Double, ctx: SplittingContext, system: tuple[Quad, Quad], cp: CommonPoint) -> dict:
    """corank_main, corank_NN at the point with q = r_{S,T,d}, and intersection dim minus oracle rank."""
    base = cp.base
    q = r_subalg(D, base.S, base.T, base.dmap, "plain")
    adq = cp.g.act_space(q)
    terms: dict = {}
    xyz = build_xyz(D, system, base, cp.idx1, cp.idx2)
    cm = corank_main(D, system, base, cp.idx1, cp.idx2, terms, xyz)
    cn = corank_NN(ctx, adq)
    inter = NN_intersection_dim(ctx, adq)
    rank = oracle_rank(D, ctx.A, adq)
    return {"corank_main": cm, "corank_NN": cn, "intersection_minus_rank": inter - rank,
            "rank_oracle": rank, "terms": terms, "xyz_dims": xyz.dims(), "xyz": xyz}
