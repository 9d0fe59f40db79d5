"""The double g + g with the split form, parabolic data, theta_d, and Lagrangian subalgebras.

Index sets S, T are sets of simple-root indices (0-based); a bijection d is a
dict ``{s: t}``.  Subspaces of the double use coordinates ``(x1, x2)`` with the
first factor's coordinates first.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, combinations
from typing import Iterable, Mapping, Sequence

from .exactlin import Mat, Subspace, as_fraction, kernel
from .liealg import LieAlgebra, QuadraticLieAlgebra, Root, neg
from .weyl import GroupElement, WeylGroup, torus_element, weyl_group, weyl_rep

Bij = Mapping[int, int]


class InvalidTriple(ValueError):
    pass


class InvalidLagrangian(ValueError):
    pass


class TransversalityFailure(AssertionError):
    pass


class ThetaInconsistent(AssertionError):
    pass


def _unit(n: int, i: int) -> list[int]:
    return [int(k == i) for k in range(n)]


def partial_map_fixpoint(mapping: Mapping, seed: Iterable) -> frozenset:
    """Largest subset X of ``seed`` with mapping(x) defined and in X for every x in X.

    ``mapping`` is a partial map given as a dict (or anything with ``get``);
    values outside the seed, or missing keys, drop an element.
    """
    current = set(seed)
    while True:
        keep = {a for a in current if mapping.get(a) is not None and mapping.get(a) in current}
        if keep == current:
            return frozenset(current)
        current = keep


class Double(QuadraticLieAlgebra):
    """d = g + g with bracket componentwise and form <<x1,y1>> - <<x2,y2>>."""

    def __init__(self, g: LieAlgebra):
        self.g = g
        n = g.dim
        table: dict[tuple[int, int], dict[int, int]] = {}
        for i in range(n):
            for j in range(i + 1, n):
                out = g.structure_constant(i, j)
                if out:
                    table[(i, j)] = dict(out)
                    table[(i + n, j + n)] = {k + n: c for k, c in out.items()}
        G = g.gram.num
        gram = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                gram[i][j] = G[i][j]
                gram[i + n][j + n] = -G[i][j]
        labels = [f"({lab},0)" for lab in g.labels] + [f"(0,{lab})" for lab in g.labels]
        super().__init__(labels, table, Mat(gram, 1))
        self.n = n
        self._parabolic: dict[frozenset, ParabolicData] = {}
        self._theta: dict[tuple, Mat] = {}

    # -- embeddings ---------------------------------------------------------
    def pair(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        return tuple(as_fraction(a) for a in x) + tuple(as_fraction(b) for b in y)

    def left(self, x: Sequence) -> tuple[Fraction, ...]:
        return self.pair(x, [0] * self.n)

    def right(self, y: Sequence) -> tuple[Fraction, ...]:
        return self.pair([0] * self.n, y)

    def split(self, v: Sequence) -> tuple[tuple, tuple]:
        return tuple(v[: self.n]), tuple(v[self.n:])

    def direct_sum(self, a: Subspace, b: Subspace) -> Subspace:
        n = self.n
        rows = [list(r) + [0] * n for r in a.int_vectors()] + [[0] * n + list(r) for r in b.int_vectors()]
        return Subspace._from_int_rows(rows, 2 * n)

    def graph(self, m: Mat, domain: Subspace) -> Subspace:
        """{(x, m x) : x in domain}."""
        vecs = [tuple(x) + m.apply(x) for x in domain.vectors()]
        return Subspace.span(vecs, 2 * self.n)

    def swap_matrix(self) -> Mat:
        n = self.n
        return Mat([[int(j == (i + n) % (2 * n)) for j in range(2 * n)] for i in range(2 * n)], 1)

    def swap(self, v: Subspace) -> Subspace:
        return v.image(self.swap_matrix())

    def diagonal(self) -> Subspace:
        n = self.n
        return Subspace._from_int_rows([_unit(n, i) + _unit(n, i) for i in range(n)], 2 * n)

    def cartan_pair(self) -> Subspace:
        h = self.g.cartan()
        return self.direct_sum(h, h)

    def h_diag(self, sign: int = 1) -> Subspace:
        n, r = self.n, self.g.rank
        return Subspace._from_int_rows([_unit(n, i) + [sign * v for v in _unit(n, i)] for i in range(r)], 2 * n)

    # -- group elements on the double ------------------------------------------
    def pair_element(self, g1: GroupElement | None, g2: GroupElement | None) -> GroupElement:
        e = Mat.identity(self.n)
        m1 = g1.matrix if g1 is not None else e
        m2 = g2.matrix if g2 is not None else e
        prov = [dict(r, factor="left") for r in (g1.provenance if g1 else [])]
        prov += [dict(r, factor="right") for r in (g2.provenance if g2 else [])]
        return GroupElement(Mat.diag_blocks(m1, m2), prov)

    def diag_element(self, g: GroupElement) -> GroupElement:
        return GroupElement(Mat.diag_blocks(g.matrix, g.matrix), [dict(r, factor="both") for r in g.provenance])

    # -- parabolic data and theta ------------------------------------------------
    def parabolic(self, S: Iterable[int]) -> "ParabolicData":
        key = frozenset(S)
        p = self._parabolic.get(key)
        if p is None:
            p = ParabolicData(self.g, key)
            self._parabolic[key] = p
        return p

    def theta(self, S: Iterable[int], T: Iterable[int], d: Bij) -> Mat:
        """theta_d as a g-endomorphism: theta on mbar_S, zero on z_S + n_S + n_S^-."""
        key = (frozenset(S), frozenset(T), tuple(sorted(d.items())))
        m = self._theta.get(key)
        if m is None:
            m = theta_map(self.g, S, T, d, self)
            self._theta[key] = m
        return m


@dataclass(frozen=True)
class Quad:
    """A quadruple (S, T, d, V) with V a subspace of the double."""

    S: frozenset
    T: frozenset
    d: tuple  # sorted (s, t) pairs
    V: Subspace

    @property
    def dmap(self) -> dict[int, int]:
        return dict(self.d)

    @classmethod
    def make(cls, S, T, d: Bij, V: Subspace) -> "Quad":
        return cls(frozenset(S), frozenset(T), tuple(sorted(dict(d).items())), V)


class ParabolicData:
    """p_S, m_S, n_S and friends as subspaces of g, plus the projection onto mbar_S."""

    def __init__(self, g: LieAlgebra, S: frozenset):
        self.g = g
        self.S = S
        datum = g.datum
        dim, r = g.dim, g.rank
        self.roots_S = [b for b in g.roots if datum.in_span(b, S)]
        pos_out = [b for b in g.positive_roots if not datum.in_span(b, S)]
        E = lambda b: _unit(dim, g.E_index(b))
        self.n = Subspace._from_int_rows([E(b) for b in pos_out], dim)
        self.n_minus = Subspace._from_int_rows([E(neg(b)) for b in pos_out], dim)
        h = g.cartan()
        self.h = h
        self.h_S = Subspace._from_int_rows([_unit(dim, i) for i in sorted(S)], dim)
        self.z = h & g.perp(self.h_S)
        self.mbar = self.h_S + Subspace._from_int_rows([E(b) for b in self.roots_S], dim)
        self.m = self.z + self.mbar
        self.p = self.m + self.n
        self.p_minus = self.m + self.n_minus
        # projection onto mbar along z + n + n^-
        cols = self.mbar.vectors() + self.z.vectors() + self.n.vectors() + self.n_minus.vectors()
        B = Mat.from_rows(cols).T
        k = self.mbar.dim
        keep = Mat.from_rows([[int(i == j and i < k) for j in range(dim)] for i in range(dim)])
        self.chi = B @ keep @ B.inverse()
        # projection onto z along h_S (on the Cartan) and killing root spaces
        zcols = self.z.vectors() + self.h_S.vectors() + [tuple(Fraction(int(t == g.E_index(b))) for t in range(dim))
                                                          for b in g.roots]
        Bz = Mat.from_rows(zcols).T
        kz = self.z.dim
        keepz = Mat.from_rows([[int(i == j and i < kz) for j in range(dim)] for i in range(dim)])
        self.z_proj = Bz @ keepz @ Bz.inverse()

    def dims(self) -> dict[str, int]:
        return {"n_S": self.n.dim, "m_S": self.m.dim, "z_S": self.z.dim}


def root_image(d: Bij, beta: Root) -> Root:
    """d extended linearly to roots in the span of its domain."""
    n = len(beta)
    out = [0] * n
    for i, c in enumerate(beta):
        if c:
            out[d[i]] += c
    return tuple(out)


def validate_gbd_triple(g: LieAlgebra, S: Iterable[int], T: Iterable[int], d: Bij) -> bool:
    S, T = set(S), set(T)
    if set(d.keys()) != S or set(d.values()) != T or len(S) != len(T):
        return False
    C = g.datum.cartan
    return all(C[d[a]][d[b]] == C[a][b] for a in S for b in S)


def theta_map(g: LieAlgebra, S, T, d: Bij, D: "Double | None" = None) -> Mat:
    if not validate_gbd_triple(g, S, T, d):
        raise InvalidTriple(f"({sorted(S)}, {sorted(T)}, {dict(d)}) is not a gBD triple")
    dim, r = g.dim, g.rank
    datum = g.datum
    img: dict[int, tuple] = {}
    for a in S:
        img[a] = g.H_simple(d[a])
    roots_S = sorted((b for b in g.roots if datum.in_span(b, S)), key=lambda b: (sum(abs(c) for c in b)))
    for beta in roots_S:
        k = g.E_index(beta)
        height = sum(abs(c) for c in beta)
        if height == 1:
            img[k] = g.E(root_image(d, beta))
            continue
        sign = 1 if sum(beta) > 0 else -1
        # beta = gamma + sign * alpha_i with gamma in Delta_S
        for i in sorted(S):
            gamma = list(beta)
            gamma[i] -= sign
            gamma = tuple(gamma)
            if gamma in g.root_index and datum.in_span(gamma, S):
                a = tuple(sign * c for c in datum.simple_root(i))
                br = g.bracket(g.E(gamma), g.E(a))
                c = br[k]
                if c == 0:
                    continue
                val = g.bracket(img[g.E_index(gamma)], img[g.E_index(a)])
                img[k] = tuple(v / c for v in val)
                break
        else:
            raise ThetaInconsistent(f"no bracket word for root {beta}")
    # matrix: theta o chi_S
    P = ParabolicData(g, frozenset(S)) if D is None else D.parabolic(S)
    # theta on the basis of mbar_S: H_alpha (alpha in S) and E_beta (beta in Delta_S)
    basis = [g.basis_vector(a) for a in sorted(S)] + [g.E(b) for b in roots_S]
    images = [img[a] for a in sorted(S)] + [img[g.E_index(b)] for b in roots_S]
    comp = P.z.vectors() + P.n.vectors() + P.n_minus.vectors()
    B = Mat.from_rows(basis + comp).T
    Y = Mat.from_rows(images + [tuple([Fraction(0)] * dim)] * len(comp)).T if basis + comp else Mat.zeros(dim, dim)
    M = Y @ B.inverse()
    # bracket preservation on mbar_S
    for x, tx in zip(basis, images):
        for y, ty in zip(basis, images):
            if M.apply(g.bracket(x, y)) != g.bracket(tx, ty):
                raise ThetaInconsistent("theta_d fails to preserve brackets")
    return M


def check_theta(g: LieAlgebra, S, T, d: Bij, M: Mat) -> bool:
    """theta is bracket preserving on mbar_S and maps it isomorphically onto mbar_T."""
    PS, PT = ParabolicData(g, frozenset(S)), ParabolicData(g, frozenset(T))
    basis = PS.mbar.vectors()
    for x in basis:
        for y in basis:
            if M.apply(g.bracket(x, y)) != g.bracket(M.apply(x), M.apply(y)):
                return False
    return PS.mbar.image(M) == PT.mbar


VARIANTS = ("plain", "prime", "doubleprime")


def _nil_part(D: Double, PS: ParabolicData, PT: ParabolicData, variant: str) -> Subspace:
    if variant == "plain":
        return D.direct_sum(PS.n, PT.n)
    if variant == "prime":
        return D.direct_sum(PS.n, PT.n_minus)
    if variant == "doubleprime":
        return D.direct_sum(PS.n_minus, PT.n)
    raise ValueError(f"unknown variant {variant!r}")


def _parabolic_pair(D: Double, PS: ParabolicData, PT: ParabolicData, variant: str) -> Subspace:
    if variant == "plain":
        return D.direct_sum(PS.p, PT.p)
    if variant == "prime":
        return D.direct_sum(PS.p, PT.p_minus)
    if variant == "doubleprime":
        return D.direct_sum(PS.p_minus, PT.p)
    raise ValueError(f"unknown variant {variant!r}")


def theta_graph(D: Double, S, T, d: Bij, domain: Subspace) -> Subspace:
    """{(x, theta_d x) : x in domain}, domain a subspace of mbar_S."""
    return D.graph(D.theta(S, T, d), domain)


def z_pair(D: Double, S, T) -> Subspace:
    return D.direct_sum(D.parabolic(S).z, D.parabolic(T).z)


def check_V(D: Double, S, T, V: Subspace) -> None:
    zz = z_pair(D, S, T)
    if not V <= zz:
        raise InvalidLagrangian("V does not lie in z_S + z_T")
    if 2 * V.dim != zz.dim or not D.is_isotropic(V):
        raise InvalidLagrangian("V is not Lagrangian in z_S + z_T")


def lagrangian_subalg(D: Double, S, T, d: Bij, V: Subspace, variant: str = "plain") -> Subspace:
    if not validate_gbd_triple(D.g, S, T, d):
        raise InvalidTriple("not a gBD triple")
    check_V(D, S, T, V)
    PS, PT = D.parabolic(S), D.parabolic(T)
    return V + theta_graph(D, S, T, d, PS.mbar) + _nil_part(D, PS, PT, variant)


def r_subalg(D: Double, S, T, d: Bij, variant: str = "plain") -> Subspace:
    """{(x1, x2) in p x p : theta_d chi_S x1 = chi_T x2} (with the variant's parabolics)."""
    PS, PT = D.parabolic(S), D.parabolic(T)
    th = D.theta(S, T, d)
    n = D.n
    rows = [[th[i, j] for j in range(n)] + [-PT.chi[i, j] for j in range(n)] for i in range(n)]
    ker = kernel(Mat.from_rows(rows))
    return ker & _parabolic_pair(D, PS, PT, variant)


def r_perp(D: Double, S, T, d: Bij, variant: str = "plain") -> Subspace:
    PS, PT = D.parabolic(S), D.parabolic(T)
    return theta_graph(D, S, T, d, PS.mbar) + _nil_part(D, PS, PT, variant)


# -- Lagrangian subspaces of z_S + z_T -------------------------------------------

def _reflection(gram: Mat, w: Sequence[Fraction]) -> Mat:
    """Reflection x -> x - 2<x,w>/<w,w> w on the ambient with the given gram."""
    n = gram.rows
    gw = gram.apply(w)
    ww = sum(a * b for a, b in zip(w, gw))
    rows = [[Fraction(int(i == j)) - 2 * w[i] * gw[j] / ww for j in range(n)] for i in range(n)]
    return Mat.from_rows(rows)


def cartan_isometry(g: LieAlgebra, pairs: Sequence[tuple[Sequence, Sequence]]) -> Mat:
    """An isometry of g (acting on the Cartan part, identity elsewhere) sending each u to v.

    The pairs must have matching Gram matrices; the trace form on the real
    Cartan is definite, so successive reflections always exist.
    """
    gram = g.gram
    sigma = Mat.identity(g.dim)
    us = [tuple(as_fraction(a) for a in u) for u, _ in pairs]
    vs = [tuple(as_fraction(a) for a in v) for _, v in pairs]
    # Gram-Schmidt with shared coefficients keeps the two families congruent
    ou, ov = [], []
    for u, v in zip(us, vs):
        for a, b in zip(ou, ov):
            c = g.form_value(u, a) / g.form_value(a, a)
            u = tuple(x - c * y for x, y in zip(u, a))
            v = tuple(x - c * y for x, y in zip(v, b))
        if any(u):
            ou.append(u)
            ov.append(v)
    for u, v in zip(ou, ov):
        su = sigma.apply(u)
        w = tuple(a - b for a, b in zip(su, v))
        if any(w):
            sigma = _reflection(gram, w) @ sigma
    return sigma


def canonical_z_isometry(D: Double, S, T, d: Bij) -> Mat:
    """A form isometry of g mapping H_alpha to H_{d alpha}; it carries z_S onto z_T."""
    g = D.g
    return cartan_isometry(g, [(g.H_simple(a), g.H_simple(d[a])) for a in sorted(S)])


def sample_lagrangian_V(D: Double, S, T, d: Bij | None = None, seed: int = 0) -> Subspace:
    """A seeded Lagrangian subspace of z_S + z_T.

    Every Lagrangian there is the graph of an isometry z_S -> z_T (the form is
    definite on each factor).  We take a fixed isometry and compose it with
    seeded reflections of z_S along small integer vectors.
    """
    g = D.g
    S, T = sorted(S), sorted(T)
    if len(S) != len(T):
        raise ValueError("|S| must equal |T|")
    if d is None:
        d = next((dict(zip(S, p)) for p in permutations(T) if validate_gbd_triple(g, S, T, dict(zip(S, p)))), None)
        if d is None:
            raise InvalidTriple("no gBD bijection between S and T")
    PS = D.parabolic(S)
    if PS.z.dim == 0:
        return Subspace.zero(2 * D.n)
    sigma = canonical_z_isometry(D, S, T, d)
    rng = random.Random(seed)
    zb = PS.z.vectors()
    phi = sigma
    steps = rng.randint(0, 3)
    for _ in range(steps):
        coeffs = [rng.randint(-2, 2) for _ in zb]
        w = tuple(sum((c * v[k] for c, v in zip(coeffs, zb)), Fraction(0)) for k in range(g.dim))
        if any(w):
            phi = phi @ _reflection(g.gram, w)
    if rng.random() < 0.5:
        phi = phi.scale(-1)
    return D.graph(phi, PS.z)


def canonical_V_choices(D: Double, S, T, d: Bij) -> list[Subspace]:
    """The fixed isometry's graph and its negative."""
    PS = D.parabolic(S)
    if PS.z.dim == 0:
        return [Subspace.zero(2 * D.n)]
    sigma = canonical_z_isometry(D, S, T, d)
    return [D.graph(sigma, PS.z), D.graph(sigma.scale(-1), PS.z)]


# -- gBD systems and splittings ------------------------------------------------------

def fixpoint_condition_set(quad1: Quad, quad2: Quad) -> frozenset:
    """S2^{d1^{-1} d2}."""
    d1inv = {t: s for s, t in quad1.d}
    d2 = quad2.dmap
    mapping = {a: d1inv.get(d2[a]) for a in quad2.S}
    return partial_map_fixpoint(mapping, quad2.S)


def cartan_part(D: Double, quad: Quad) -> Subspace:
    PS = D.parabolic(quad.S)
    return quad.V + theta_graph(D, quad.S, quad.T, quad.dmap, PS.h_S)


@dataclass
class SystemDiagnostics:
    valid: bool
    triple1: bool
    triple2: bool
    V1: bool
    V2: bool
    fixpoint: frozenset = frozenset()
    cartan_intersection_dim: int = 0

    def to_json(self) -> dict:
        return {"valid": self.valid, "triple1": self.triple1, "triple2": self.triple2, "V1": self.V1,
                "V2": self.V2, "condition1_fixpoint": sorted(self.fixpoint),
                "condition2_intersection_dim": self.cartan_intersection_dim}


def validate_gbd_system(D: Double, quad1: Quad, quad2: Quad) -> SystemDiagnostics:
    t1 = validate_gbd_triple(D.g, quad1.S, quad1.T, quad1.dmap)
    t2 = validate_gbd_triple(D.g, quad2.S, quad2.T, quad2.dmap)
    v1 = v2 = False
    try:
        check_V(D, quad1.S, quad1.T, quad1.V)
        v1 = True
    except InvalidLagrangian:
        pass
    try:
        check_V(D, quad2.S, quad2.T, quad2.V)
        v2 = True
    except InvalidLagrangian:
        pass
    if not (t1 and t2 and v1 and v2):
        return SystemDiagnostics(False, t1, t2, v1, v2)
    fp = fixpoint_condition_set(quad1, quad2)
    inter = (cartan_part(D, quad1) & cartan_part(D, quad2)).dim
    return SystemDiagnostics(not fp and inter == 0, t1, t2, v1, v2, fp, inter)


@dataclass
class Splitting:
    u: Subspace
    u_prime: Subspace
    system: tuple[Quad, Quad] | None = None
    name: str = ""

    def certificate(self) -> int:
        return (self.u & self.u_prime).dim


def build_delorme_splitting(D: Double, quad1: Quad, quad2: Quad) -> Splitting:
    u = lagrangian_subalg(D, quad1.S, quad1.T, quad1.dmap, quad1.V, "prime")
    up = lagrangian_subalg(D, quad2.S, quad2.T, quad2.dmap, quad2.V, "doubleprime")
    if (u & up).dim != 0:
        raise TransversalityFailure("u and u' intersect nontrivially")
    return Splitting(u, up, (quad1, quad2))


def standard_system(D: Double) -> tuple[Quad, Quad]:
    G = range(D.g.rank)
    q1 = Quad.make(G, G, {i: i for i in G}, Subspace.zero(2 * D.n))
    q2 = Quad.make((), (), {}, D.h_diag(-1))
    return q1, q2


def standard_splitting(D: Double) -> Splitting:
    q1, q2 = standard_system(D)
    s = build_delorme_splitting(D, q1, q2)
    s.name = "standard"
    return s


def l0(D: Double) -> Subspace:
    P = D.parabolic(())
    return D.direct_sum(P.n_minus, P.n) + D.h_diag(-1)


# -- enumeration ---------------------------------------------------------------------

def enumerate_triples(g: LieAlgebra, valid_only: bool = False) -> list[tuple[tuple, tuple, dict, bool]]:
    """All (S, T, d) with |S| = |T| and d a bijection, flagged by the gBD condition.

    Ordered lexicographically by (S, T, d) with subsets listed by size then lex.
    """
    r = g.rank
    subsets = [c for k in range(r + 1) for c in combinations(range(r), k)]
    out = []
    for S in subsets:
        for T in subsets:
            if len(S) != len(T):
                continue
            for perm in permutations(T):
                d = dict(zip(S, perm))
                ok = validate_gbd_triple(g, S, T, d)
                if ok or not valid_only:
                    out.append((S, T, d, ok))
    return out


def enumerate_systems(D: Double, samples_per_quad: int = 2, seed: int = 0) -> list[tuple[Quad, Quad]]:
    """Valid gBD systems over all triple pairs, with a few seeded V's per quadruple."""
    triples = enumerate_triples(D.g, valid_only=True)
    out = []
    for (S1, T1, d1, _) in triples:
        Vs1 = _V_family(D, S1, T1, d1, samples_per_quad, seed)
        for (S2, T2, d2, _) in triples:
            Vs2 = _V_family(D, S2, T2, d2, samples_per_quad, seed + 7)
            for V1 in Vs1:
                for V2 in Vs2:
                    q1, q2 = Quad.make(S1, T1, d1, V1), Quad.make(S2, T2, d2, V2)
                    if validate_gbd_system(D, q1, q2).valid:
                        out.append((q1, q2))
    return out


def _V_family(D: Double, S, T, d, k: int, seed: int) -> list[Subspace]:
    seen: list[Subspace] = []
    for V in canonical_V_choices(D, S, T, d):
        if V not in seen:
            seen.append(V)
    s = seed
    while len(seen) < k + 2 and s < seed + 4 * k + 8:
        V = sample_lagrangian_V(D, S, T, d, s)
        if V not in seen:
            seen.append(V)
        s += 1
    return seen


# -- conjugation identities ----------------------------------------------------------

def adjusted_rep(D: Double, word: Sequence[int], A: Iterable[int]) -> GroupElement:
    """A representative of the Weyl element sending E_alpha to E_{x alpha} exactly for alpha in A.

    x must send A to simple roots; the canonical representative can introduce
    signs, which a torus factor removes.
    """
    g = D.g
    W = weyl_group(g)
    x = W.from_word(word)
    rep = weyl_rep(g, x.word)
    coords = [Fraction(1)] * g.rank
    for a in A:
        target = x(g.datum.simple_root(a))
        j = W.simple_index(target)
        if j is None:
            raise ValueError("x does not send A to simple roots")
        c = rep.act(g.E(g.datum.simple_root(a)))[g.E_index(target)]
        coords[j] = 1 / c
    return torus_element(g, coords) @ rep


def conjugation_identities(D: Double, S, T, d: Bij, V: Subspace) -> dict[str, bool]:
    g = D.g
    W = weyl_group(g)
    S, T = sorted(S), sorted(T)
    out = {}
    # prime twin
    _, xT = W.special_elements(T)
    xr = adjusted_rep(D, xT.word, T)
    gT = D.pair_element(None, xr)
    T2 = W.minus_w0(T)
    dT = {s: W.simple_index(xT(g.datum.simple_root(d[s]))) for s in S}
    VT = gT.act_space(V)
    rhs = gT.act_space_inverse(lagrangian_subalg(D, S, T2, dT, VT, "plain"))
    out["l_prime"] = rhs == lagrangian_subalg(D, S, T, d, V, "prime")
    out["r_prime"] = gT.act_space_inverse(r_subalg(D, S, T2, dT, "plain")) == r_subalg(D, S, T, d, "prime")
    # doubleprime twin
    _, xS = W.special_elements(S)
    xs = adjusted_rep(D, xS.word, S)
    gS = D.pair_element(xs, None)
    S2 = W.minus_w0(S)
    xSinv = W.inverse(xS)
    dS = {}
    for s2 in S2:
        pre = xSinv(g.datum.simple_root(s2))
        dS[s2] = d[W.simple_index(pre)]
    VS = gS.act_space(V)
    rhs2 = gS.act_space_inverse(lagrangian_subalg(D, S2, T, dS, VS, "plain"))
    out["l_doubleprime"] = rhs2 == lagrangian_subalg(D, S, T, d, V, "doubleprime")
    out["r_doubleprime"] = gS.act_space_inverse(r_subalg(D, S2, T, dS, "plain")) == r_subalg(D, S, T, d, "doubleprime")
    return out


# -- normalizer description ---------------------------------------------------------

def normalizer_closed_form(D: Double, S, T, d: Bij, variant: str = "plain") -> Subspace:
    """(mbar^theta + z_S + z_T) + nil part."""
    PS, PT = D.parabolic(S), D.parabolic(T)
    return theta_graph(D, S, T, d, PS.mbar) + z_pair(D, S, T) + _nil_part(D, PS, PT, variant)
