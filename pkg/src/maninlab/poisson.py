"""r-matrices of Lagrangian splittings, the projected bivector at a point of D/Q, and rank formulas.

A bivector is stored as an antisymmetric matrix ``A`` with
``R = sum_{i<j} A_ij e_i ^ e_j``, where ``x ^ y = x (x) y - y (x) x``; as a
2-tensor R has coefficient matrix ``A``.  Bivectors are evaluated on pairs of
elements of the double through the form: ``R(a, b) = (G a)^T A (G b)``.

A point of D/Q is represented only by its stabilizer ``Ad_g q``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactlin import Mat, Subspace, as_fraction, rank_fraction_free
from .liealg import QuadraticLieAlgebra
from .weyl import GroupElement


class NotTransversal(ValueError):
    pass


class NotCoisotropic(ValueError):
    pass


class TheoryViolation(AssertionError):
    pass


# -- dual bases and the r-matrix ---------------------------------------------------

def pairing_matrix(alg: QuadraticLieAlgebra, xs: Sequence, ys: Sequence) -> Mat:
    return Mat.from_rows([[alg.form_value(x, y) for y in ys] for x in xs], cols=len(ys))


def dual_bases(alg: QuadraticLieAlgebra, u: Subspace, up: Subspace) -> tuple[list, list]:
    """Bases x of u and xi of u' with <x_i, xi_j> = delta_ij."""
    if u.dim + up.dim != alg.dim or (u & up).dim:
        raise NotTransversal("u and u' do not form a direct sum decomposition")
    xs = u.vectors()
    ys = up.vectors()
    P = pairing_matrix(alg, xs, ys)
    try:
        C = P.inverse().T
    except ZeroDivisionError:
        raise NotTransversal("pairing between u and u' is degenerate") from None
    xis = []
    for j in range(len(xs)):
        row = C.row(j)
        xis.append(tuple(sum((c * y[k] for c, y in zip(row, ys) if c), Fraction(0)) for k in range(alg.dim)))
    return xs, xis


def wedge(x: Sequence, y: Sequence) -> Mat:
    """Coefficient matrix of x ^ y."""
    n = len(x)
    return Mat.from_rows([[as_fraction(x[i]) * as_fraction(y[j]) - as_fraction(y[i]) * as_fraction(x[j])
                           for j in range(n)] for i in range(n)])


def bivector_from_pairs(pairs, dim: int, coeff=Fraction(1)) -> Mat:
    acc = [[Fraction(0)] * dim for _ in range(dim)]
    for a, b in pairs:
        a = [as_fraction(v) for v in a]
        b = [as_fraction(v) for v in b]
        for i in range(dim):
            if a[i] or b[i]:
                for j in range(dim):
                    acc[i][j] += coeff * (a[i] * b[j] - b[i] * a[j])
    return Mat.from_rows(acc)


def r_matrix(alg: QuadraticLieAlgebra, u: Subspace, up: Subspace, bases=None) -> Mat:
    """R = 1/2 sum_j xi_j ^ x_j."""
    xs, xis = bases if bases is not None else dual_bases(alg, u, up)
    return bivector_from_pairs(zip(xis, xs), alg.dim, Fraction(1, 2))


def evaluate_bivector(alg: QuadraticLieAlgebra, A: Mat, a: Sequence, b: Sequence) -> Fraction:
    ga = alg.gram.apply(a)
    gb = alg.gram.apply(b)
    Ag = A.apply(gb)
    return sum((x * y for x, y in zip(ga, Ag)), Fraction(0))


# -- Schouten bracket ----------------------------------------------------------------

SCHOUTEN_SCALE = Fraction(-4)


def _wedge3(coefs: dict, x: dict, j: int, k: int, scale: Fraction) -> None:
    """Accumulate scale * x ^ e_j ^ e_k into a dict over sorted triples."""
    for i, c in x.items():
        if i == j or i == k or j == k:
            continue
        t = [i, j, k]
        sign = 1
        # insertion sort with parity
        for p in range(1, 3):
            q = p
            while q > 0 and t[q - 1] > t[q]:
                t[q - 1], t[q] = t[q], t[q - 1]
                sign = -sign
                q -= 1
        key = tuple(t)
        coefs[key] = coefs.get(key, Fraction(0)) + sign * scale * c


def schouten_square(alg: QuadraticLieAlgebra, A: Mat) -> dict[tuple[int, int, int], Fraction]:
    """[R, R] as coefficients on e_i ^ e_j ^ e_k (i < j < k).

    Computed as SCHOUTEN_SCALE times the expansion
    [x^y, z^w] = [x,z]^y^w - [x,w]^y^z - [y,z]^x^w + [y,w]^x^z on
    R = sum_{i<j} A_ij e_i ^ e_j.  The scale fixes the bracket normalization
    so that the r-matrix of a Lagrangian splitting satisfies
    <[R,R], a^b^c> = 2<a,[b,c]> under ``pair_trivector``.
    """
    d = alg.dim
    terms = [(i, j, A[i, j]) for i in range(d) for j in range(i + 1, d) if A[i, j]]
    br: dict[tuple[int, int], dict[int, int]] = {}

    def b(p: int, q: int) -> dict[int, int]:
        key = (p, q)
        if key not in br:
            br[key] = alg.structure_constant(p, q)
        return br[key]

    out: dict[tuple[int, int, int], Fraction] = {}
    for (x, y, a1) in terms:
        for (z, w, a2) in terms:
            s = SCHOUTEN_SCALE * a1 * a2
            _wedge3(out, b(x, z), y, w, s)
            _wedge3(out, b(x, w), y, z, -s)
            _wedge3(out, b(y, z), x, w, -s)
            _wedge3(out, b(y, w), x, z, s)
    return {k: v for k, v in out.items() if v}


def pair_trivector(alg: QuadraticLieAlgebra, C: dict, a: Sequence, b: Sequence, c: Sequence) -> Fraction:
    """<T, a^b^c> = sum over the full antisymmetric array of C_ijk <e_i,a><e_j,b><e_k,c>."""
    ga, gb, gc = alg.gram.apply(a), alg.gram.apply(b), alg.gram.apply(c)
    tot = Fraction(0)
    for (i, j, k), v in C.items():
        det = (ga[i] * (gb[j] * gc[k] - gb[k] * gc[j])
               - ga[j] * (gb[i] * gc[k] - gb[k] * gc[i])
               + ga[k] * (gb[i] * gc[j] - gb[j] * gc[i]))
        if det:
            tot += v * det
    return tot


def schouten_identity_failures(alg: QuadraticLieAlgebra, A: Mat) -> list[tuple[int, int, int]]:
    """Basis triples where <[R,R], a^b^c> differs from 2<a,[b,c]>."""
    C = schouten_square(alg, A)
    d = alg.dim
    bad = []
    for i, j, k in combinations(range(d), 3):
        ei, ej, ek = alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k)
        lhs = pair_trivector(alg, C, ei, ej, ek)
        rhs = 2 * alg.form_value(ei, alg.bracket(ej, ek))
        if lhs != rhs:
            bad.append((i, j, k))
    return bad


# -- cobracket --------------------------------------------------------------------

def cobracket(alg: QuadraticLieAlgebra, u: Subspace, up: Subspace, x: Sequence, bases=None) -> Mat:
    """delta_u(x) in wedge^2 u, as a bivector coefficient matrix on the double."""
    if not u.contains(x):
        raise ValueError("x is not in u")
    xs, xis = bases if bases is not None else dual_bases(alg, u, up)
    n = len(xs)
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            c = alg.form_value(x, alg.bracket(xis[a], xis[b]))
            if c:
                pairs.append((tuple(c * v for v in xs[a]), xs[b]))
    return bivector_from_pairs(pairs, alg.dim)


def pair_bivector_with_wedge(alg: QuadraticLieAlgebra, A: Mat, y: Sequence, z: Sequence) -> Fraction:
    """<B, y^z> for a bivector B = sum_{i<j} A_ij e_i^e_j, matching <x^x', y^z> = <x,y><x',z> - <x,z><x',y>."""
    return evaluate_bivector(alg, A, y, z)


# -- projection to D/Q ---------------------------------------------------------------

def project_bivector(alg: QuadraticLieAlgebra, A: Mat, q_pt: Subspace) -> tuple[Mat, list]:
    """Skew matrix M_ab = R(y_a, y_b) on a basis y of q_pt^perp."""
    qp = alg.perp(q_pt)
    if not qp <= q_pt:
        raise NotCoisotropic("stabilizer is not coisotropic")
    ys = qp.vectors()
    gys = [alg.gram.apply(y) for y in ys]
    Ag = [A.apply(gy) for gy in gys]
    rows = [[sum((p * q for p, q in zip(gys[a], Ag[b])), Fraction(0)) for b in range(len(ys))]
            for a in range(len(ys))]
    return (Mat.from_rows(rows, cols=len(ys)) if ys else Mat.zeros(0, 0)), ys


def oracle_rank(alg: QuadraticLieAlgebra, A: Mat, q_pt: Subspace) -> int:
    M, _ = project_bivector(alg, A, q_pt)
    if not M.is_antisymmetric():
        raise TheoryViolation("projected bivector is not skew")
    return rank_fraction_free(M)


def _skew_vec(M: Mat) -> list[Fraction]:
    n = M.rows
    return [M[i, j] for i in range(n) for j in range(i + 1, n)]


def projected_wedge_image(alg: QuadraticLieAlgebra, space: Subspace, ys: list) -> Subspace:
    """Image of wedge^2(space) in skew forms on span(ys), as upper-triangle vectors."""
    gys = [alg.gram.apply(y) for y in ys]
    vs = space.vectors()
    pr = [[sum((p * q for p, q in zip(v, gy)), Fraction(0)) for gy in gys] for v in vs]
    m = len(ys)
    vecs = []
    for a, b in combinations(range(len(vs)), 2):
        vecs.append([pr[a][i] * pr[b][j] - pr[a][j] * pr[b][i] for i in range(m) for j in range(i + 1, m)])
    return Subspace.span(vecs, m * (m - 1) // 2)


def projected_membership(alg: QuadraticLieAlgebra, A: Mat, u: Subspace, up: Subspace,
                         q_pt: Subspace) -> tuple[bool, bool]:
    """Whether the projected R lies in the projected images of wedge^2 u and wedge^2 u'."""
    M, ys = project_bivector(alg, A, q_pt)
    v = _skew_vec(M)
    if not v:
        return True, True
    return projected_wedge_image(alg, u, ys).contains(v), projected_wedge_image(alg, up, ys).contains(v)


# -- Drinfeld subalgebra and rank formulas ------------------------------------------------

def drinfeld_subalgebra(alg: QuadraticLieAlgebra, u: Subspace, q: Subspace, g: GroupElement | None = None,
                        check: bool = True) -> Subspace:
    """Ad_g q^perp + u cap Ad_g q."""
    adq = g.act_space(q) if g is not None else q
    l = alg.perp(adq) + (u & adq)
    if check and not alg.is_lagrangian(l):
        raise TheoryViolation("Drinfeld subalgebra is not Lagrangian")
    return l


@dataclass
class SplittingContext:
    """Data of a splitting reused across many points: dual bases, R, and the normalizers."""

    alg: QuadraticLieAlgebra
    u: Subspace
    up: Subspace
    name: str = ""
    A: Mat = None
    n_u: Subspace = None
    n_up: Subspace = None

    def __post_init__(self):
        if self.A is None:
            self.A = r_matrix(self.alg, self.u, self.up)
        if self.n_u is None:
            self.n_u = self.alg.normalizer_in(self.u)
        if self.n_up is None:
            self.n_up = self.alg.normalizer_in(self.up)


def rank_formula(ctx: SplittingContext, adq: Subspace, dims: dict | None = None) -> int:
    ld = drinfeld_subalgebra(ctx.alg, ctx.u, adq)
    u_q = (ctx.u & adq).dim
    up_ld = (ctx.up & ld).dim
    if dims is not None:
        dims.update({"u_cap_q": u_q, "u_prime_cap_ld": up_ld})
    return ctx.u.dim - u_q - up_ld


def corank_UU(ctx: SplittingContext, adq: Subspace, rank: int, dims: dict | None = None) -> int:
    alg = ctx.alg
    Ud = ctx.u.dim - (ctx.u & adq).dim
    Upd = ctx.up.dim - (ctx.up & adq).dim
    DQ = alg.dim - adq.dim
    inter = Ud + Upd - DQ
    if dims is not None:
        dims.update({"U_orbit": Ud, "U_prime_orbit": Upd, "D_over_Q": DQ, "UU_intersection": inter})
    return inter - rank


def corank_NN(ctx: SplittingContext, adq: Subspace, dims: dict | None = None) -> int:
    alg = ctx.alg
    ld = drinfeld_subalgebra(alg, ctx.u, adq)
    terms = {
        "n_u_prime": ctx.n_up.dim,
        "D_over_Q": alg.dim - adq.dim,
        "n_u": ctx.n_u.dim,
        "u": ctx.u.dim,
        "n_u_cap_q": (ctx.n_u & adq).dim,
        "u_cap_q": (ctx.u & adq).dim,
        "n_u_prime_cap_q": (ctx.n_up & adq).dim,
        "u_prime_cap_ld": (ctx.up & ld).dim,
    }
    if dims is not None:
        dims.update({"NN." + k: v for k, v in terms.items()})
    return (terms["n_u_prime"] - terms["D_over_Q"] + terms["n_u"] - terms["u"] - terms["n_u_cap_q"]
            + terms["u_cap_q"] - terms["n_u_prime_cap_q"] + terms["u_prime_cap_ld"])


def NN_intersection_dim(ctx: SplittingContext, adq: Subspace) -> int:
    alg = ctx.alg
    return (ctx.n_u.dim - (ctx.n_u & adq).dim) + (ctx.n_up.dim - (ctx.n_up & adq).dim) - (alg.dim - adq.dim)


@dataclass
class RankReport:
    q_provenance: str
    g_word: list
    rank_oracle: int
    rank_formula: int
    corank_UU: int
    corank_NN: int
    dims: dict = field(default_factory=dict)
    corank_main: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        ok = self.rank_oracle == self.rank_formula and self.rank_oracle % 2 == 0
        ok = ok and self.corank_UU >= 0 and self.corank_NN >= 0
        if self.corank_main is not None:
            ok = ok and self.corank_main == self.corank_NN == self.dims.get("NN_intersection", 0) - self.rank_oracle
        return ok

    def to_json(self) -> dict:
        out = {"point": {"q_provenance": self.q_provenance, "g_word": self.g_word},
               "rank_oracle": self.rank_oracle, "rank_formula": self.rank_formula,
               "corank_UU": self.corank_UU, "corank_NN": self.corank_NN,
               "dims": dict(sorted(self.dims.items())), "agree": self.agree}
        if self.corank_main is not None:
            out["corank_main"] = self.corank_main
        out.update(self.extra)
        return out


def rank_at_point(ctx: SplittingContext, q: Subspace, g: GroupElement | None, q_provenance: str = "") -> RankReport:
    alg = ctx.alg
    if not alg.is_coisotropic(q):
        raise NotCoisotropic("base stabilizer is not coisotropic")
    adq = g.act_space(q) if g is not None else q
    if not alg.is_coisotropic(adq):
        raise TheoryViolation("translated stabilizer is not coisotropic")
    dims: dict = {}
    rf = rank_formula(ctx, adq, dims)
    ro = oracle_rank(alg, ctx.A, adq)
    cu = corank_UU(ctx, adq, rf, dims)
    cn = corank_NN(ctx, adq, dims)
    dims["NN_intersection"] = NN_intersection_dim(ctx, adq)
    return RankReport(q_provenance, g.provenance if g is not None else [], ro, rf, cu, cn, dims)


def transport_bivector(A: Mat, g: GroupElement) -> Mat:
    M = g.matrix
    return M @ A @ M.T


def check_ad_invariance_of_R(A: Mat, g: GroupElement) -> bool:
    return transport_bivector(A, g) == A


# -- sampling points and torus symmetries ------------------------------------------------

_TORUS_VALUES = (Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(3), Fraction(-1, 3))


def random_group_element(D, rng: random.Random, max_len: int = 4) -> GroupElement:
    """A product of at most ``max_len`` generators of G x G: Weyl representatives, unipotents and torus elements."""
    from .weyl import exp_ad, torus_element, weyl_group, weyl_rep

    g = D.g
    W = weyl_group(g)
    out = GroupElement.identity(D.dim)
    for _ in range(rng.randint(0, max_len)):
        kind = rng.choice(("weyl", "exp", "torus"))
        if kind == "weyl":
            f = weyl_rep(g, rng.choice(W.elements).word)
        elif kind == "exp":
            roots = g.positive_roots if rng.random() < 0.5 else [tuple(-c for c in b) for b in g.positive_roots]
            x = [Fraction(0)] * g.dim
            for beta in roots:
                c = rng.randint(-2, 2)
                if c:
                    x[g.E_index(beta)] += c
            f = exp_ad(g, x)
        else:
            f = torus_element(g, [rng.choice(_TORUS_VALUES) for _ in range(g.rank)])
        side = rng.choice(("left", "right", "both"))
        if side == "both":
            out = out @ D.diag_element(f)
        elif side == "left":
            out = out @ D.pair_element(f, None)
        else:
            out = out @ D.pair_element(None, f)
    return out


def coisotropic_catalog(D) -> list[tuple[str, Subspace]]:
    """Coisotropic subalgebras of the double used as base stabilizers: r_{S,T,d} in all variants, and D itself."""
    from .double import VARIANTS, enumerate_triples, r_subalg

    out = [("D", D.full())]
    for S, T, d, _ in enumerate_triples(D.g, valid_only=True):
        for variant in VARIANTS:
            q = r_subalg(D, S, T, d, variant)
            name = f"r[{variant}] S={[s + 1 for s in S]} T={[t + 1 for t in T]} d={ {k + 1: v + 1 for k, v in sorted(d.items())} }"
            out.append((name, q))
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def torus_solution_classes(rank: int, d1: dict, d2: dict) -> list[list[int]]:
    """Coordinate classes of (h1, h2) in H x H with h1^a = h2^{d1 a} on dom d1 and h1^b = h2^{d2 b} on dom d2.

    Coordinates 0..rank-1 belong to h1, rank..2 rank-1 to h2.
    """
    uf = _UnionFind(2 * rank)
    for d in (d1, d2):
        for a, b in d.items():
            uf.union(a, rank + b)
    classes: dict[int, list[int]] = {}
    for i in range(2 * rank):
        classes.setdefault(uf.find(i), []).append(i)
    return sorted(classes.values())


def sample_torus_solution(D, d1: dict, d2: dict, rng: random.Random) -> GroupElement:
    from .weyl import torus_element

    r = D.g.rank
    coords = [Fraction(1)] * (2 * r)
    for cls in torus_solution_classes(r, d1, d2):
        v = rng.choice(_TORUS_VALUES)
        for i in cls:
            coords[i] = v
    return D.pair_element(torus_element(D.g, coords[:r]), torus_element(D.g, coords[r:]))


# -- regularity -----------------------------------------------------------------------------

def bracket_in_perp(alg: QuadraticLieAlgebra, q: Subspace) -> bool:
    """[q, q] inside q^perp."""
    return alg.bracket_spaces(q, q) <= alg.perp(q)


def normalizer_condition(alg: QuadraticLieAlgebra, l: Subspace) -> bool:
    """[n(l), n(l)] = n(l)^perp."""
    nl = alg.normalizer_in(l)
    return alg.bracket_spaces(nl, nl) == alg.perp(nl)


def split_along(ctx: SplittingContext, z: Sequence) -> tuple[tuple, tuple]:
    """z = z_u + z_u' for the splitting."""
    key = "_split_basis"
    cache = ctx.__dict__.get(key)
    if cache is None:
        B = Mat.from_rows(ctx.u.vectors() + ctx.up.vectors()).T
        cache = (B, B.inverse())
        ctx.__dict__[key] = cache
    B, Binv = cache
    c = Binv.apply(z)
    k = ctx.u.dim
    zu = B.apply(list(c[:k]) + [0] * (len(c) - k))
    return zu, tuple(a - b for a, b in zip(z, zu))


def nilpotent_directions(D, q: Subspace) -> list:
    """Vectors of q lying in a product of nilradicals of opposite or equal Borels, hence ad-nilpotent."""
    P0 = D.parabolic(())
    out = []
    for a in (P0.n, P0.n_minus):
        for b in (P0.n, P0.n_minus):
            out.extend((q & D.direct_sum(a, b)).vectors())
    return out


def intersection_translations(ctx: SplittingContext, D, q: Subspace, g: GroupElement, rng: random.Random,
                              count: int) -> list[GroupElement]:
    """Elements a of U with a.pt in U.pt cap U'.pt, where pt has stabilizer Ad_g q.

    For z in Ad_g q ad-nilpotent with [z_u, z_u'] = 0, exp(ad z_u) = exp(ad -z_u') exp(ad z),
    so a = exp(ad z_u) moves pt inside both orbits.  Directions are combined with
    small random coefficients.
    """
    from .weyl import exp_ad

    dirs = [g.act(v) for v in nilpotent_directions(D, q)]
    out: list[GroupElement] = []
    found: list = []
    tries = 0
    while dirs and len(out) < count and tries < 20 * count:
        tries += 1
        k = rng.randint(1, min(2, len(dirs)))
        picks = rng.sample(dirs, k)
        coeffs = [rng.choice((1, -1, 2)) for _ in picks]
        z = [sum((c * p[i] for c, p in zip(coeffs, picks)), Fraction(0)) for i in range(D.dim)]
        zu, zup = split_along(ctx, z)
        if not any(zu) or any(D.bracket(zu, zup)):
            continue
        try:
            out.append(exp_ad(D, zu))
        except ValueError:
            continue
        found.append(zu)
    # multiples of a valid z are valid
    while found and len(out) < count:
        c = rng.choice((2, -1, 3, Fraction(1, 2), Fraction(-1, 3)))
        out.append(exp_ad(D, [c * v for v in rng.choice(found)]))
    return out


def sample_q_translations(D, q: Subspace, rng: random.Random, count: int,
                          g: GroupElement | None = None) -> list[GroupElement]:
    """`count` elements exp(ad x), x a random small combination of nilpotent vectors of Ad_g q."""
    from .weyl import exp_ad

    dirs = nilpotent_directions(D, q)
    if g is not None:
        dirs = [g.act(v) for v in dirs]
    out: list[GroupElement] = []
    tries = 0
    while dirs and len(out) < count and tries < 50 * count:
        tries += 1
        picks = rng.sample(dirs, rng.randint(1, min(3, len(dirs))))
        coeffs = [rng.choice((1, -1, 2, Fraction(1, 2))) for _ in picks]
        x = [sum((c * p[i] for c, p in zip(coeffs, picks)), Fraction(0)) for i in range(D.dim)]
        if not any(x):
            continue
        try:
            out.append(exp_ad(D, x))
        except ValueError:
            continue
    return out


def drinfeld_core_invariant(D, u: Subspace, q: Subspace, b: GroupElement) -> bool:
    """Ad_b (q^perp + u cap q) = q^perp + u cap q."""
    core = D.perp(q) + (u & q)
    return b.act_space(core) == core
