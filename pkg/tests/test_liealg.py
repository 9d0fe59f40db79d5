import random

import pytest
from hypothesis import given, strategies as st

from maninlab.exactlin import Subspace
from maninlab.liealg import NotASubalgebra, build_type_A, perturbed_copy, realization_defects

H, E, F = 0, 1, 2  # sl2 basis order


def vec(L, **coords):
    v = [0] * L.dim
    for k, c in coords.items():
        v[int(k[1:])] = c
    return v


def test_build_type_A_sizes():
    for n in (1, 2, 3):
        L = build_type_A(n)
        assert L.dim == n * (n + 2)
        assert len(L.roots) == 2 * len(L.positive_roots)
    assert len(build_type_A(2).positive_roots) == 3
    with pytest.raises(ValueError):
        build_type_A(0)


def test_sl2_realization(sl2):
    alpha = sl2.positive_roots[0]
    assert sl2.roots == [alpha, (-alpha[0],)]
    assert sl2.bracket(sl2.basis_vector(E), sl2.basis_vector(F)) == sl2.H(alpha)
    assert sl2.to_matrix(sl2.H(alpha)) == [[1, 0], [0, -1]]
    assert sl2.form_value(sl2.H(alpha), sl2.H(alpha)) == 2


def test_sl2_brackets_and_form(sl2):
    b = sl2.bracket
    e, f, h = (sl2.basis_vector(i) for i in (E, F, H))
    assert b(e, f) == h
    assert b(h, e) == tuple(2 * x for x in e)
    assert sl2.form_value(e, f) == 1
    assert sl2.form_value(e, e) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_realization_defects_vanish(n):
    assert realization_defects(build_type_A(n)) == {"jacobi": 0, "invariance": 0, "normalization": 0, "pairing": 0}


def test_root_pairing_convention(sl3):
    # <<x, H_beta>> = beta(x) on the Cartan, for every root
    for beta in sl3.roots:
        for i in range(sl3.rank):
            x = sl3.basis_vector(i)
            assert sl3.form_value(x, sl3.H(beta)) == sl3.root_value(beta, x)


vec8 = st.lists(st.integers(-3, 3), min_size=8, max_size=8)


@given(x=vec8, y=vec8, z=vec8)
def test_jacobi_and_invariance_random(sl3, x, y, z):
    assert not any(sl3.jacobi_defect(x, y, z))
    assert sl3.form_value(sl3.bracket(x, y), z) == sl3.form_value(x, sl3.bracket(y, z))
    assert sl3.bracket(x, y) == tuple(-c for c in sl3.bracket(y, x))
    assert sl3.form_value(x, y) == sl3.form_value(y, x)


def test_bracket_dimension_mismatch(sl2):
    with pytest.raises(ValueError):
        sl2.bracket([1, 0], [0, 1, 0])


def test_derived_subalgebra_examples(sl2):
    assert sl2.derived_subalgebra(sl2.full()) == sl2.full()
    assert sl2.derived_subalgebra(sl2.cartan()).dim == 0
    borel = sl2.span([sl2.basis_vector(H), sl2.basis_vector(E)])
    assert sl2.derived_subalgebra(borel) == sl2.span([sl2.basis_vector(E)])
    with pytest.raises(NotASubalgebra):
        sl2.derived_subalgebra(sl2.span([sl2.basis_vector(E), sl2.basis_vector(F)]))


def test_normalizer_examples(sl2, D1):
    assert D1.normalizer_in(D1.diagonal()) == D1.diagonal()
    assert D1.normalizer_in(D1.zero()) == D1.full()
    P = D1.parabolic(())
    bb = D1.direct_sum(P.n_minus + P.h, P.n + P.h)
    assert D1.normalizer_in(bb) == bb


def test_subalgebra_flags(sl2, D1):
    assert D1.is_lagrangian(D1.diagonal())
    P = D1.parabolic(())
    bb = D1.direct_sum(P.n_minus + P.h, P.n + P.h)
    assert D1.is_coisotropic(bb) and not D1.is_lagrangian(bb)
    ee = D1.span([D1.left(sl2.basis_vector(E))])
    assert D1.is_isotropic(ee) and D1.is_subalgebra(ee)


def test_normalizer_is_a_subalgebra_containing_V(sl3):
    rng = random.Random(3)
    for _ in range(40):
        V = sl3.span([[rng.randint(-1, 1) for _ in range(8)] for _ in range(rng.randint(0, 4))])
        N = sl3.normalizer_in(V)
        assert sl3.is_subalgebra(N)
        assert N <= sl3.normalizer_in(N)
        if sl3.is_subalgebra(V):
            assert V <= N


def test_normalizer_not_idempotent_in_general(sl3):
    # the normalizer of a normalizer can grow; idempotence is only claimed for cataloged subalgebras
    rng = random.Random(3)
    grew = 0
    for _ in range(40):
        V = sl3.span([[rng.randint(-1, 1) for _ in range(8)] for _ in range(rng.randint(0, 4))])
        N = sl3.normalizer_in(V)
        grew += sl3.normalizer_in(N) != N
    assert grew > 0


def test_normalizer_of_own_output_is_stable(D1):
    P = D1.parabolic(())
    for q in (D1.diagonal(), D1.direct_sum(P.n, P.n_minus)):
        N = D1.normalizer_in(q)
        assert D1.is_subalgebra(N)
        assert q <= N


def test_perturbed_bracket_is_detected(sl2):
    bad = perturbed_copy(sl2, E, F, H)
    defects = realization_defects(bad)
    assert sum(defects.values()) > 0
    assert realization_defects(sl2)["jacobi"] == 0  # original untouched


def test_labels_and_spec(sl3):
    assert sl3.labels[:2] == ["H_1", "H_2"]
    assert "E_[1,1]" in sl3.labels
    assert sl3.spec == {"type": "A", "rank": 2}
