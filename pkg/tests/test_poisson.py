import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maninlab.checks import splittings_for
from maninlab.double import (Double, build_delorme_splitting, enumerate_triples, l0, lagrangian_subalg, r_subalg,
                             sample_lagrangian_V, standard_splitting)
from maninlab.exactlin import Mat, Subspace
from maninlab.liealg import build_type_A
from maninlab.poisson import (NotCoisotropic, NotTransversal, SplittingContext, bracket_in_perp,
                              check_ad_invariance_of_R, cobracket, coisotropic_catalog, corank_NN, corank_UU,
                              drinfeld_core_invariant, drinfeld_subalgebra, dual_bases, evaluate_bivector,
                              intersection_translations, oracle_rank, pair_bivector_with_wedge, pair_trivector,
                              pairing_matrix, project_bivector, projected_membership, r_matrix, random_group_element,
                              rank_at_point, rank_formula, sample_q_translations, sample_torus_solution,
                              schouten_identity_failures, schouten_square, torus_solution_classes)
from maninlab.weyl import exp_ad, torus_element

H, E, F = 0, 1, 2


@pytest.fixture(scope="module")
def std1(D1):
    sp = standard_splitting(D1)
    return SplittingContext(D1, sp.u, sp.u_prime)


def sl2_vectors(D):
    g = D.g
    return {k: g.basis_vector(i) for k, i in (("h", H), ("e", E), ("f", F))}


def b_minus_b(D):
    return r_subalg(D, [], [], {}, "doubleprime")


# -- dual bases and R ----------------------------------------------------------

def test_dual_basis_of_hh(D1, std1):
    v = sl2_vectors(D1)
    hh = D1.pair(v["h"], v["h"])
    xs = [hh, D1.pair(v["e"], v["e"]), D1.pair(v["f"], v["f"])]
    ys = std1.up.vectors()
    C = pairing_matrix(D1, xs, ys).inverse().T
    xi = tuple(sum((c * y[k] for c, y in zip(C.row(0), ys)), Fraction(0)) for k in range(6))
    h_minus_h = D1.pair(v["h"], [-c for c in v["h"]])
    assert D1.form_value(hh, h_minus_h) == 4
    assert xi == tuple(Fraction(1, 4) * a for a in h_minus_h)


def test_dual_bases_pairing_is_identity(D2):
    for _, system in splittings_for(D2, 3):
        sp = build_delorme_splitting(D2, *system)
        xs, xis = dual_bases(D2, sp.u, sp.u_prime)
        assert pairing_matrix(D2, xs, xis) == Mat.identity(len(xs))
        ys, etas = dual_bases(D2, sp.u_prime, sp.u)
        assert pairing_matrix(D2, etas, ys) == Mat.identity(len(ys))


def test_dual_bases_rejects_non_transversal(D1):
    with pytest.raises(NotTransversal):
        dual_bases(D1, D1.diagonal(), D1.diagonal())


def test_r_matrix_basis_independence(D1, std1):
    A = r_matrix(D1, std1.u, std1.up)
    rng = random.Random(0)
    xs = std1.u.vectors()
    for _ in range(5):
        # permute and rescale the basis of u, then recompute the dual basis
        rng.shuffle(xs)
        scales = [Fraction(rng.choice((1, -2, 3))) for _ in xs]
        xs2 = [tuple(s * c for c in x) for s, x in zip(scales, xs)]
        P = pairing_matrix(D1, xs2, std1.up.vectors())
        C = P.inverse().T
        ys = std1.up.vectors()
        xis = [tuple(sum((c * y[k] for c, y in zip(C.row(j), ys)), Fraction(0)) for k in range(6))
               for j in range(3)]
        assert r_matrix(D1, std1.u, std1.up, bases=(xs2, xis)) == A


def test_r_matrix_value_and_swap(D1, std1):
    v = sl2_vectors(D1)
    A = std1.A
    assert A.is_antisymmetric()
    ee, f0 = D1.pair(v["e"], v["e"]), D1.left(v["f"])
    assert evaluate_bivector(D1, A, ee, f0) == Fraction(1, 2)
    assert r_matrix(D1, std1.up, std1.u) == A.scale(-1)


# -- Schouten bracket ------------------------------------------------------------

def test_schouten_examples(D1, std1):
    v = sl2_vectors(D1)
    C = schouten_square(D1, std1.A)
    assert pair_trivector(D1, C, D1.left(v["e"]), D1.left(v["f"]), D1.left(v["h"])) == 4
    diag = [D1.pair(v[k], v[k]) for k in ("e", "f", "h")]
    assert pair_trivector(D1, C, *diag) == 0
    # three vectors of q^perp for coisotropic q give zero
    q = b_minus_b(D1)
    a, b = D1.perp(q).vectors()
    assert pair_trivector(D1, C, a, b, a) == 0
    assert pair_trivector(D1, C, a, b, tuple(x + y for x, y in zip(a, b))) == 0


@pytest.mark.parametrize("n", [1, 2])
def test_schouten_identity_on_several_splittings(n):
    D = Double(build_type_A(n))
    for _, system in splittings_for(D, 3):
        sp = build_delorme_splitting(D, *system)
        assert schouten_identity_failures(D, r_matrix(D, sp.u, sp.u_prime)) == []


# -- cobracket -------------------------------------------------------------------

def test_cobracket_pairing_identity(D1, std1):
    v = sl2_vectors(D1)
    hh = D1.pair(v["h"], v["h"])
    delta = cobracket(D1, std1.u, std1.up, hh)
    ys = std1.up.vectors()
    for i in range(3):
        for j in range(3):
            lhs = pair_bivector_with_wedge(D1, delta, ys[i], ys[j])
            assert lhs == D1.form_value(hh, D1.bracket(ys[i], ys[j]))
    # the value lies in wedge^2 u: it pairs to zero with anything from u
    xs = std1.u.vectors()
    assert all(pair_bivector_with_wedge(D1, delta, xs[0], y) == 0 for y in ys)


@given(a=st.lists(st.integers(-3, 3), min_size=3, max_size=3), b=st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_cobracket_is_linear(D1, a, b):
    sp = standard_splitting(D1)
    x, y = D1.pair(a, a), D1.pair(b, b)
    s = tuple(p + q for p, q in zip(x, y))
    dx, dy, ds = (cobracket(D1, sp.u, sp.u_prime, t) for t in (x, y, s))
    assert ds == dx + dy


def test_cobracket_rejects_outside(D1, std1):
    with pytest.raises(ValueError):
        cobracket(D1, std1.u, std1.up, D1.left(sl2_vectors(D1)["e"]))


# -- projection and rank --------------------------------------------------------------

def test_project_bivector_examples(D1, std1):
    M, ys = project_bivector(D1, std1.A, D1.full())
    assert M.shape == (0, 0) and oracle_rank(D1, std1.A, D1.full()) == 0
    M, ys = project_bivector(D1, std1.A, b_minus_b(D1))
    assert M == Mat.zeros(2, 2)
    with pytest.raises(NotCoisotropic):
        project_bivector(D1, std1.A, D1.zero())


def test_drinfeld_subalgebra_examples(D1, std1):
    q = b_minus_b(D1)
    P = D1.parabolic(())
    expect = D1.direct_sum(P.n_minus, P.n) + D1.h_diag(1)
    assert drinfeld_subalgebra(D1, std1.u, q) == expect
    lag = l0(D1)
    assert drinfeld_subalgebra(D1, std1.u, lag) == lag


def test_drinfeld_subalgebra_is_lagrangian_on_samples(D2):
    rng = random.Random(5)
    catalog = coisotropic_catalog(D2)
    for _, system in splittings_for(D2, 2):
        ctx = SplittingContext(D2, *(lambda s: (s.u, s.u_prime))(build_delorme_splitting(D2, *system)))
        for _ in range(100):
            _, q = rng.choice(catalog)
            g = random_group_element(D2, rng)
            assert D2.is_lagrangian(drinfeld_subalgebra(D2, ctx.u, q, g))


def test_standard_sl2_point(D1, std1):
    q = b_minus_b(D1)
    dims = {}
    assert rank_formula(std1, q, dims) == 0
    assert dims == {"u_cap_q": 1, "u_prime_cap_ld": 2}
    # U'.pt is a single point (u' lies in q), so the U- and U'-orbits meet in dimension 0
    assert corank_UU(std1, q, 0, dims) == 0 and dims["U_prime_orbit"] == 0
    terms = {}
    assert corank_NN(std1, q, terms) == 0
    order = ["n_u_prime", "D_over_Q", "n_u", "u", "n_u_cap_q", "u_cap_q", "n_u_prime_cap_q", "u_prime_cap_ld"]
    assert [terms["NN." + k] for k in order] == [4, 2, 3, 3, 1, 1, 4, 2]


def test_full_stabilizer(D1, std1):
    rep = rank_at_point(std1, D1.full(), None, "D")
    assert rep.rank_formula == rep.rank_oracle == rep.corank_UU == 0


@pytest.mark.parametrize("n", [1, 2])
def test_rank_formula_matches_oracle(n):
    D = Double(build_type_A(n))
    rng = random.Random(n)
    catalog = coisotropic_catalog(D)
    for _, system in splittings_for(D, 2):
        sp = build_delorme_splitting(D, *system)
        ctx = SplittingContext(D, sp.u, sp.u_prime)
        for _ in range(40):
            name, q = rng.choice(catalog)
            rep = rank_at_point(ctx, q, random_group_element(D, rng), name)
            assert rep.rank_oracle == rep.rank_formula and rep.rank_oracle % 2 == 0
            assert rep.corank_UU >= 0 and rep.corank_NN >= 0 and rep.agree


def test_lagrangian_stabilizers_have_zero_corank(D2):
    rng = random.Random(2)
    for _, system in splittings_for(D2, 2):
        sp = build_delorme_splitting(D2, *system)
        ctx = SplittingContext(D2, sp.u, sp.u_prime)
        for S, T, d, _ in enumerate_triples(D2.g, valid_only=True):
            l = lagrangian_subalg(D2, S, T, d, sample_lagrangian_V(D2, S, T, d, seed=1), "plain")
            rep = rank_at_point(ctx, l, random_group_element(D2, rng))
            assert rep.corank_UU == 0
            dm = rep.dims
            same_orbits = (dm["NN.n_u"] - dm["NN.n_u_cap_q"] == dm["U_orbit"]
                           and dm["NN.n_u_prime"] - dm["NN.n_u_prime_cap_q"] == dm["U_prime_orbit"])
            if D2.normalizer_in(l) == l and same_orbits:
                assert rep.corank_NN == rep.corank_UU


def test_projected_membership_on_catalog(D2):
    for _, system in splittings_for(D2, 2):
        sp = build_delorme_splitting(D2, *system)
        A = r_matrix(D2, sp.u, sp.u_prime)
        for name, q in coisotropic_catalog(D2):
            assert projected_membership(D2, A, sp.u, sp.u_prime, q) == (True, True), name


# -- symmetries ----------------------------------------------------------------------

def test_ad_invariance_examples(D1, std1):
    g = D1.g
    assert check_ad_invariance_of_R(std1.A, torus_element(g, [1]).__class__.identity(6))
    t = torus_element(g, [Fraction(3)])
    assert check_ad_invariance_of_R(std1.A, D1.diag_element(t))
    bad = D1.pair_element(exp_ad(g, g.basis_vector(E)), None)
    assert not check_ad_invariance_of_R(std1.A, bad)


def test_torus_solutions_fix_R(D2):
    rng = random.Random(4)
    for _, (q1, q2) in splittings_for(D2, 4):
        sp = build_delorme_splitting(D2, q1, q2)
        A = r_matrix(D2, sp.u, sp.u_prime)
        classes = torus_solution_classes(2, q1.dmap, q2.dmap)
        assert len(classes) == D2.parabolic(q1.S).z.dim + D2.parabolic(q2.S).z.dim
        for _ in range(10):
            assert check_ad_invariance_of_R(A, sample_torus_solution(D2, q1.dmap, q2.dmap, rng))


# -- regularity --------------------------------------------------------------------

def test_regularity_on_catalog(D1, std1):
    rng = random.Random(9)
    for name, q in coisotropic_catalog(D1):
        if not bracket_in_perp(D1, q):
            continue
        g = random_group_element(D1, rng)
        adq = g.act_space(q)
        for b in sample_q_translations(D1, q, rng, 20, g):
            assert drinfeld_core_invariant(D1, std1.u, adq, b)
        base = rank_at_point(std1, q, g, name)
        for a in intersection_translations(std1, D1, q, g, rng, 20):
            moved = rank_at_point(std1, q, a @ g, name)
            assert (moved.rank_formula, moved.corank_UU) == (base.rank_formula, base.corank_UU)
