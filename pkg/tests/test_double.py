import pytest
from hypothesis import given, strategies as st

from maninlab.double import (VARIANTS, Double, InvalidLagrangian, InvalidTriple, Quad, build_delorme_splitting,
                             check_theta, conjugation_identities, enumerate_systems, enumerate_triples, l0,
                             lagrangian_subalg, normalizer_closed_form, partial_map_fixpoint, r_subalg,
                             sample_lagrangian_V, standard_splitting, standard_system, theta_map, validate_gbd_system,
                             validate_gbd_triple)
from maninlab.exactlin import Mat, Subspace
from maninlab.liealg import build_type_A

H, E, F = 0, 1, 2


def lagrangians(D, V_samples=3):
    for S, T, d, _ in enumerate_triples(D.g, valid_only=True):
        for seed in range(V_samples):
            V = sample_lagrangian_V(D, S, T, d, seed=seed)
            for variant in VARIANTS:
                yield (S, T, d, variant), lagrangian_subalg(D, S, T, d, V, variant)


def test_double_form(sl2, D1):
    assert D1.dim == 6
    e, f = sl2.basis_vector(E), sl2.basis_vector(F)
    assert D1.form_value(D1.left(e), D1.right(f)) == 0
    assert D1.form_value(D1.pair(e, e), D1.pair(f, f)) == 0
    assert D1.form_value(D1.left(e), D1.left(f)) == 1
    assert D1.form_value(D1.right(e), D1.right(f)) == -1


def test_double_invariance_and_swap(D1):
    from maninlab.liealg import realization_defects
    assert D1.gram.is_symmetric()
    sw = D1.swap_matrix()
    for i in range(D1.dim):
        for j in range(D1.dim):
            x, y = D1.basis_vector(i), D1.basis_vector(j)
            assert D1.form_value(sw.apply(x), sw.apply(y)) == -D1.form_value(x, y)
            for k in range(D1.dim):
                z = D1.basis_vector(k)
                assert D1.form_value(D1.bracket(x, y), z) == D1.form_value(x, D1.bracket(y, z))


def test_parabolic_examples(sl2, sl3, D1, D2):
    P = D1.parabolic(())
    assert P.m == sl2.cartan() and P.z == sl2.cartan()
    assert P.n == sl2.span([sl2.basis_vector(E)])
    PG = D2.parabolic((0, 1))
    assert PG.p == sl3.full() and PG.z.dim == 0
    P1 = D2.parabolic((0,))
    assert P1.m.dim == 4 and P1.n.dim == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_parabolic_decompositions(n):
    D = Double(build_type_A(n))
    g = D.g
    for k in range(1 << n):
        S = tuple(i for i in range(n) if k >> i & 1)
        P = D.parabolic(S)
        assert P.z + P.h_S == g.cartan() and (P.z & P.h_S).dim == 0
        assert P.m == P.z + P.mbar and P.p == P.m + P.n
        assert P.n.dim == sum(1 for b in g.positive_roots if not g.datum.in_span(b, S))
        # chi projects onto mbar
        assert P.chi @ P.chi == P.chi and g.full().image(P.chi) == P.mbar


def test_theta_examples(sl3, D2):
    M = theta_map(sl3, [0, 1], [0, 1], {0: 0, 1: 1})
    P = D2.parabolic((0, 1))
    assert all(M.apply(x) == x for x in P.mbar.vectors())
    M = theta_map(sl3, [0], [1], {0: 1})
    a1, a2 = sl3.datum.simple_root(0), sl3.datum.simple_root(1)
    assert M.apply(sl3.E(a1)) == sl3.E(a2)
    assert check_theta(sl3, [0], [1], {0: 1}, M)


def test_theta_rejects_bad_triple():
    g = build_type_A(3)
    assert not validate_gbd_triple(g, [0, 1], [0, 2], {0: 0, 1: 2})
    with pytest.raises(InvalidTriple):
        theta_map(g, [0, 1], [0, 2], {0: 0, 1: 2})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_theta_preserves_brackets_on_all_triples(n):
    g = build_type_A(n)
    for S, T, d, _ in enumerate_triples(g, valid_only=True):
        assert check_theta(g, S, T, d, theta_map(g, S, T, d))


def test_validate_triple_examples(sl3):
    assert validate_gbd_triple(sl3, [], [], {})
    assert validate_gbd_triple(sl3, [0], [1], {0: 1})


def test_enumerate_triples_counts(sl2, sl3):
    assert [(S, T) for S, T, _, ok in enumerate_triples(sl2) if ok] == [((), ()), ((0,), (0,))]
    assert any(S == (0,) and T == (1,) and d == {0: 1} and ok for S, T, d, ok in enumerate_triples(sl3))


def test_lagrangian_examples(D1, D2):
    assert lagrangian_subalg(D1, [0], [0], {0: 0}, Subspace.zero(6)) == D1.diagonal()
    assert lagrangian_subalg(D1, [], [], {}, D1.h_diag(-1), "doubleprime") == l0(D1)
    for (_, l) in lagrangians(D2, 1):
        assert l.dim == D2.g.dim


@pytest.mark.parametrize("n", [1, 2])
def test_catalog_is_lagrangian_and_self_consistent(n):
    D = Double(build_type_A(n))
    for (S, T, d, variant), l in lagrangians(D):
        assert D.is_lagrangian(l) and D.is_subalgebra(l)
        r = r_subalg(D, S, T, d, variant)
        assert D.is_subalgebra(r) and l <= r
        zS, zT = D.parabolic(S).z.dim, D.parabolic(T).z.dim
        assert 2 * (r.dim - l.dim) == zS + zT
        # the normalizer of l is r, and matches the closed form
        N = D.normalizer_in(l)
        assert N == r == normalizer_closed_form(D, S, T, d, variant)
        assert D.normalizer_in(N) == N
        # [n(l), n(l)] = n(l)^perp
        assert D.derived_subalgebra(N) == D.perp(N)


@pytest.mark.parametrize("n", [1, 2])
def test_self_normalizing_coisotropic_contains_perp_in_derived(n):
    D = Double(build_type_A(n))
    for S, T, d, _ in enumerate_triples(D.g, valid_only=True):
        for variant in VARIANTS:
            q = r_subalg(D, S, T, d, variant)
            assert D.is_coisotropic(q)
            if D.normalizer_in(q) == q:
                assert D.perp(q) <= D.derived_subalgebra(q)


def test_r_subalg_examples(D1):
    assert r_subalg(D1, [0], [0], {0: 0}) == D1.diagonal()
    P = D1.parabolic(())
    assert r_subalg(D1, [], [], {}, "doubleprime") == D1.direct_sum(P.n_minus + P.h, P.n + P.h)


def test_V_validation(D1):
    with pytest.raises(InvalidLagrangian):
        lagrangian_subalg(D1, [], [], {}, D1.diagonal())
    with pytest.raises(InvalidLagrangian):
        lagrangian_subalg(D1, [], [], {}, D1.cartan_pair())


def test_sample_V_examples(D1, D2):
    assert sample_lagrangian_V(D2, [0, 1], [0, 1]).dim == 0
    for seed in range(10):
        V = sample_lagrangian_V(D1, [], [], seed=seed)
        assert V.dim == 1 and D1.is_isotropic(V)
        assert V == sample_lagrangian_V(D1, [], [], seed=seed)


@given(seed=st.integers(0, 10_000))
def test_sampled_V_is_lagrangian(D2, seed):
    for S, T in (((), ()), ((0,), (1,)), ((1,), (0,))):
        V = sample_lagrangian_V(D2, S, T, seed=seed)
        zz = D2.direct_sum(D2.parabolic(S).z, D2.parabolic(T).z)
        assert V <= zz and 2 * V.dim == zz.dim and D2.is_isotropic(V)


def test_system_examples(D1):
    q1, q2 = standard_system(D1)
    assert validate_gbd_system(D1, q1, q2).valid
    bad = Quad.make((), (), {}, D1.h_diag(1))
    diag = validate_gbd_system(D1, q1, bad)
    assert not diag.valid and diag.cartan_intersection_dim == 1 and not diag.fixpoint
    same = Quad.make((0,), (0,), {0: 0}, Subspace.zero(6))
    diag = validate_gbd_system(D1, same, same)
    assert not diag.valid and diag.fixpoint == {0}


def test_standard_splitting(D1):
    sp = standard_splitting(D1)
    assert sp.u == D1.diagonal() and sp.u_prime == l0(D1)
    assert sp.certificate() == 0


@pytest.mark.parametrize("n", [1, 2])
def test_enumerated_systems_split(n):
    D = Double(build_type_A(n))
    systems = enumerate_systems(D, 1, 0)
    assert systems
    for q1, q2 in systems:
        sp = build_delorme_splitting(D, q1, q2)
        assert sp.u.dim + sp.u_prime.dim == D.dim and sp.certificate() == 0
        assert D.is_lagrangian(sp.u) and D.is_lagrangian(sp.u_prime)
        # n(u) = (u' cap n(u)) + u
        for a, b in ((sp.u, sp.u_prime), (sp.u_prime, sp.u)):
            N = D.normalizer_in(a)
            assert N == (b & N) + a
        # n(l1) cap n(l2) is a Cartan subspace of dim z_S1 + z_S2
        inter = D.normalizer_in(sp.u) & D.normalizer_in(sp.u_prime)
        assert inter.dim == D.parabolic(q1.S).z.dim + D.parabolic(q2.S).z.dim
        assert inter <= D.cartan_pair()


@pytest.mark.parametrize("n", [1, 2])
def test_conjugation_identities(n):
    D = Double(build_type_A(n))
    for S, T, d, _ in enumerate_triples(D.g, valid_only=True):
        for seed in range(2):
            V = sample_lagrangian_V(D, S, T, d, seed=seed)
            assert all(conjugation_identities(D, S, T, d, V).values())


def test_partial_map_fixpoint_examples():
    assert partial_map_fixpoint({0: 0, 1: 1}, {0, 1}) == {0, 1}
    assert partial_map_fixpoint({0: 1}, {0}) == frozenset()
    assert partial_map_fixpoint({0: 1, 1: 0}, {0, 1}) == {0, 1}


@given(st.dictionaries(st.integers(0, 5), st.integers(0, 5)), st.sets(st.integers(0, 5)))
def test_partial_map_fixpoint_is_largest_invariant_subset(mapping, seed):
    fp = partial_map_fixpoint(mapping, seed)
    assert fp <= seed
    assert all(a in mapping and mapping[a] in fp for a in fp)
    # any invariant subset of the seed is inside the fixpoint
    for a in seed - fp:
        orbit, x = set(), a
        while x in seed and x in mapping and x not in orbit:
            orbit.add(x)
            x = mapping[x]
        assert not (x in orbit and orbit <= seed)
