import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maninlab.exactlin import Mat
from maninlab.liealg import build_type_A
from maninlab.weyl import (GroupElement, NotNilpotent, WeylBoundExceeded, WeylGroup, exp_ad, permutes_root_spaces,
                           torus_element, weyl_group, weyl_rep)

H, E, F = 0, 1, 2


def test_group_orders():
    assert [len(weyl_group(build_type_A(n))) for n in (1, 2, 3)] == [2, 6, 24]
    W1 = weyl_group(build_type_A(1))
    assert sorted(w.length for w in W1) == [0, 1]
    assert max(w.length for w in weyl_group(build_type_A(2))) == 3


def test_bound_exceeded(sl3):
    with pytest.raises(WeylBoundExceeded):
        WeylGroup(sl3.datum, bound=5)


def test_bound_from_environment(monkeypatch, sl3):
    monkeypatch.setenv("MANINLAB_MAX_WEYL", "4")
    with pytest.raises(WeylBoundExceeded):
        WeylGroup(sl3.datum)


def test_coset_reps_examples(sl3):
    W = weyl_group(sl3)
    assert set(W.coset_reps([], "left")) == set(W)
    reps = W.coset_reps([0], "left")
    assert sorted(w.length for w in reps) == [0, 1, 2]
    assert W.coset_reps([0, 1], "right") == [W.identity]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coset_reps_partition_with_minimal_lengths(n):
    W = weyl_group(build_type_A(n))
    r = W.rank
    subsets = [tuple(i for i in range(r) if m >> i & 1) for m in range(1 << r)]
    for A in subsets:
        WA = W.subgroup(A)
        for side in ("left", "right"):
            reps = W.coset_reps(A, side)
            assert len(reps) * len(WA) == len(W)
            cosets = {}
            for w in W:
                for x in reps:
                    if any((x * a if side == "left" else a * x) == w for a in WA):
                        cosets.setdefault(x, []).append(w)
                        break
                else:
                    pytest.fail("element in no coset")
            for x, members in cosets.items():
                assert x.length == min(m.length for m in members)


def test_special_elements(sl3):
    W = weyl_group(sl3)
    w0A, xA = W.special_elements([0, 1])
    assert xA == W.identity
    assert W.special_elements([])[1] == W.w0
    assert W.special_elements([0])[0].length == 1


def test_x_A_identity(sl3):
    W = weyl_group(sl3)
    for A in ([], [0], [1], [0, 1]):
        _, xA = W.special_elements(A)
        lhs = set(W.coset_reps(W.minus_w0(A), "right"))
        rhs = {xA * w for w in W.coset_reps(A, "right")}
        assert lhs == rhs


def test_weyl_rep_examples(sl2):
    assert weyl_rep(sl2, []).matrix == Mat.identity(3)
    s = weyl_rep(sl2, [0])
    assert s.act(sl2.basis_vector(H)) == tuple(-x for x in sl2.basis_vector(H))
    assert (s @ s).matrix == Mat.identity(3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weyl_reps_permute_root_spaces(n):
    L = build_type_A(n)
    W = weyl_group(L)
    for w in W:
        g = weyl_rep(L, w.word)
        assert g.is_automorphism_of(L)
        assert permutes_root_spaces(L, g, w)


def test_exp_ad_examples(sl2):
    assert exp_ad(sl2, [0, 0, 0]).matrix == Mat.identity(3)
    g = exp_ad(sl2, sl2.basis_vector(E))
    assert g.act(sl2.basis_vector(H)) == (1, -2, 0)
    assert g.act(sl2.basis_vector(F)) == (1, -1, 1)
    with pytest.raises(NotNilpotent):
        exp_ad(sl2, sl2.basis_vector(H))


def test_torus_examples(sl2):
    assert torus_element(sl2, [1]).matrix == Mat.identity(3)
    t = torus_element(sl2, [Fraction(3)])
    assert t.act(sl2.basis_vector(E)) == (0, 3, 0)
    assert t.act(sl2.basis_vector(F)) == (0, 0, Fraction(1, 3))
    with pytest.raises(ValueError):
        torus_element(sl2, [0])


coords = st.lists(st.sampled_from([Fraction(-1), Fraction(2), Fraction(1, 3), Fraction(-5, 2)]), min_size=2, max_size=2)
nil = st.lists(st.integers(-2, 2), min_size=3, max_size=3)


@given(t=coords, x=nil)
def test_generated_elements_are_automorphisms(sl3, t, x):
    # x spans positive root vectors, so ad x is nilpotent
    v = [0, 0] + x + [0, 0, 0]
    g = torus_element(sl3, t) @ exp_ad(sl3, v) @ weyl_rep(sl3, [0, 1])
    assert g.is_automorphism_of(sl3)
    assert [r.get("weyl") or r.get("torus") or r.get("exp") for r in g.provenance][0] == [str(c) for c in t]


def test_group_element_inverse(sl3):
    rng = random.Random(1)
    for _ in range(10):
        g = weyl_rep(sl3, [rng.randrange(2) for _ in range(3)]) @ torus_element(sl3, [2, -1])
        assert (g @ g.inverse()).matrix == Mat.identity(sl3.dim)
        assert g.inverse().provenance == [{"inverse": g.provenance}]


def test_identity_element():
    assert GroupElement.identity(4).provenance == []
