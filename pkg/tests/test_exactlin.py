import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maninlab.exactlin import (AmbientMismatch, GramError, Mat, Subspace, intersect, parse_rational, format_rational,
                               perp, rank_fraction_free, rref, sum_)

small = st.integers(-3, 3)


def vectors(n, k):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=k)


def e(n, i):
    return [int(j == i) for j in range(n)]


def test_rref_rank_one():
    R, piv = rref(Mat.from_rows([[2, 4], [1, 2]]))
    assert R.tolist() == [[1, 2]] and piv == [0]


def test_rref_identity():
    R, piv = rref(Mat.identity(3))
    assert R == Mat.identity(3) and piv == [0, 1, 2]


def test_rref_rank_matches_fraction_free_elimination():
    rng = random.Random(7)
    for _ in range(50):
        m = Mat.from_rows([[rng.randint(-3, 3) for _ in range(6)] for _ in range(6)])
        assert len(rref(m)[1]) == rank_fraction_free(m)


@given(vectors(5, 6))
def test_rref_is_canonical(rows):
    S = Subspace.span(rows, 5)
    B = S.basis.tolist()
    for r, p in zip(B, S.pivots):
        assert r[p] == 1
        assert all(B[k][p] == 0 for k in range(len(B)) if B[k] is not r)
    assert list(S.pivots) == sorted(set(S.pivots))
    # row order and rescaling do not change the canonical form
    shuffled = [[2 * x for x in r] for r in reversed(rows)]
    assert Subspace.span(shuffled, 5) == S


def test_sum_and_intersection_examples():
    n = 3
    a, b, c = (Subspace.span([e(n, i)], n) for i in range(3))
    assert sum_(a, b) == Subspace.span([e(n, 0), e(n, 1)], n)
    V = Subspace.span([[1, 2, 3]], n)
    assert V + V == V
    assert intersect(a + b, b + c) == b
    assert V & Subspace.full(n) == V


@given(vectors(6, 4), vectors(6, 4))
def test_modular_dimension_law(xs, ys):
    A, B = Subspace.span(xs, 6), Subspace.span(ys, 6)
    I = A & B
    assert (A + B).dim == A.dim + B.dim - I.dim
    assert all(A.contains(v) and B.contains(v) for v in I.vectors())


def test_modular_law_on_many_seeded_pairs():
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(1, 32)
        A = Subspace.span([[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))], n)
        B = Subspace.span([[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))], n)
        assert (A + B).dim + (A & B).dim == A.dim + B.dim


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace.full(2) + Subspace.full(3)
    with pytest.raises(AmbientMismatch):
        Subspace.full(2) & Subspace.zero(3)


def test_perp_examples(sl2, D1):
    assert perp(Subspace.zero(3), sl2.gram) == Subspace.full(3)
    # <<e,f>> = 1 and <<e,e>> = <<e,h>> = 0
    e_ = Subspace.span([sl2.basis_vector(1)], 3)
    assert sl2.perp(e_) == Subspace.span([sl2.basis_vector(0), sl2.basis_vector(1)], 3)
    assert D1.perp(D1.diagonal()) == D1.diagonal()


@given(rows=vectors(6, 6))
def test_double_perp(D1, rows):
    V = Subspace.span(rows, 6)
    W = D1.perp(V)
    assert V.dim + W.dim == 6
    assert D1.perp(W) == V


def test_perp_rejects_bad_gram():
    with pytest.raises(GramError):
        perp(Subspace.zero(2), Mat.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(GramError):
        perp(Subspace.zero(2), Mat.from_rows([[1, 2], [0, 1]]))


@given(st.fractions(max_denominator=50))
def test_rational_round_trip(q):
    s = format_rational(q)
    assert "/" in s and parse_rational(s) == q


@given(vectors(4, 4))
def test_json_round_trip(rows):
    S = Subspace.span(rows, 4)
    assert Subspace.from_json(S.to_json()) == S
    M = Mat.from_rows(rows, cols=4) if rows else Mat.zeros(0, 4)
    if rows:
        assert Mat.from_json(M.to_json()) == M


def test_inverse_is_exact():
    m = Mat.from_rows([[2, 1], [7, 4]])
    assert m @ m.inverse() == Mat.identity(2)
    assert m.inverse().tolist()[0][0] == Fraction(4)
