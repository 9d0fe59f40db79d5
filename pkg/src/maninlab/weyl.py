"""Weyl group combinatorics and exact adjoint group elements.

Weyl elements act on integer root coordinates; their canonical reduced word
is the ShortLex-minimal one, which breadth-first closure over simple
reflections produces directly.  Group elements are exact matrices acting on
the coordinates of a quadratic Lie algebra, carrying a record of the
generators used to build them.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .exactlin import Mat, Subspace, as_fraction
from .liealg import LieAlgebra, QuadraticLieAlgebra, Root, RootDatum, neg

DEFAULT_MAX_WEYL = factorial(10)


class WeylBoundExceeded(RuntimeError):
    pass


class NotNilpotent(ValueError):
    pass


def max_weyl_bound() -> int:
    raw = os.environ.get("MANINLAB_MAX_WEYL")
    return int(raw) if raw else DEFAULT_MAX_WEYL


class WeylElement:
    """An element of W, stored by its reduced word and the images of the simple roots."""

    __slots__ = ("word", "images", "group")

    def __init__(self, word: tuple[int, ...], images: tuple[Root, ...], group: "WeylGroup"):
        self.word = word
        self.images = images
        self.group = group

    @property
    def length(self) -> int:
        return len(self.word)

    def __call__(self, beta: Root) -> Root:
        n = len(self.images)
        out = [0] * n
        for i, c in enumerate(beta):
            if c:
                for j, v in enumerate(self.images[i]):
                    out[j] += c * v
        return tuple(out)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.element_of_images(tuple(self(other.images[i]) for i in range(len(self.images))))

    def inverse(self) -> "WeylElement":
        return self.group.inverse(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"W{list(w + 1 for w in self.word)}"


class WeylGroup:
    def __init__(self, datum: RootDatum, bound: int | None = None):
        self.datum = datum
        self.rank = datum.rank
        bound = max_weyl_bound() if bound is None else bound
        n = self.rank
        ident = tuple(datum.simple_root(i) for i in range(n))
        self._by_images: dict[tuple[Root, ...], WeylElement] = {}
        first = WeylElement((), ident, self)
        self.elements: list[WeylElement] = [first]
        self._by_images[ident] = first
        head = 0
        while head < len(self.elements):
            w = self.elements[head]
            head += 1
            for s in range(n):
                # (w s)(alpha_i) = w(s(alpha_i))
                imgs = tuple(w(datum.reflect(s, datum.simple_root(i))) for i in range(n))
                if imgs not in self._by_images:
                    u = WeylElement(w.word + (s,), imgs, self)
                    self._by_images[imgs] = u
                    self.elements.append(u)
                    if len(self.elements) > bound:
                        raise WeylBoundExceeded(f"|W| exceeds the configured bound {bound}")
        self.identity = first
        self.w0 = max(self.elements, key=lambda w: w.length)
        self._inverse: dict[tuple[Root, ...], WeylElement] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def element_of_images(self, images: tuple[Root, ...]) -> WeylElement:
        return self._by_images[images]

    def from_word(self, word: Iterable[int]) -> WeylElement:
        w = self.identity
        for s in word:
            w = w * self.simple(s)
        return w

    def simple(self, i: int) -> WeylElement:
        return self.element_of_images(tuple(self.datum.reflect(i, self.datum.simple_root(j))
                                            for j in range(self.rank)))

    def inverse(self, w: WeylElement) -> WeylElement:
        r = self._inverse.get(w.images)
        if r is None:
            r = self.from_word(reversed(w.word))
            self._inverse[w.images] = r
        return r

    def subgroup(self, A: Iterable[int]) -> list[WeylElement]:
        A = set(A)
        return [w for w in self.elements if set(w.word) <= A]

    def longest_in(self, A: Iterable[int]) -> WeylElement:
        return max(self.subgroup(A), key=lambda w: w.length)

    def coset_reps(self, A: Iterable[int], side: str = "left") -> list[WeylElement]:
        """Minimal length representatives: W^A (side 'left', cosets wW_A) or ^A W (side 'right', cosets W_A w)."""
        A = list(A)
        simple = [self.datum.simple_root(a) for a in A]
        if side == "left":
            return [w for w in self.elements if all(self.datum.is_positive(w(a)) for a in simple)]
        if side == "right":
            return [w for w in self.elements if all(self.datum.is_positive(w.inverse()(a)) for a in simple)]
        raise ValueError("side must be 'left' or 'right'")

    def special_elements(self, A: Iterable[int]) -> tuple[WeylElement, WeylElement]:
        """(w_{0,A}, x_A) with x_A = w0 w_{0,A}."""
        w0A = self.longest_in(A)
        return w0A, self.w0 * w0A

    def minus_w0(self, A: Iterable[int]) -> list[int]:
        """-w0(A) as simple indices."""
        out = []
        for a in A:
            r = neg(self.w0(self.datum.simple_root(a)))
            out.append(r.index(1))
        return sorted(out)

    def simple_index(self, beta: Root) -> int | None:
        if sum(beta) == 1 and all(c in (0, 1) for c in beta):
            return beta.index(1)
        return None


_WEYL: dict[int, WeylGroup] = {}


def weyl_group(L: LieAlgebra, bound: int | None = None) -> WeylGroup:
    if bound is not None:
        return WeylGroup(L.datum, bound)
    key = L.rank
    if key not in _WEYL:
        _WEYL[key] = WeylGroup(L.datum)
    return _WEYL[key]


class GroupElement:
    """An exact automorphism of a quadratic Lie algebra, with the generator record that built it.

    The record lists generators in product order: ``[g1, g2]`` means ``g1 g2``,
    so ``g2`` acts first on a vector.
    """

    __slots__ = ("matrix", "provenance")

    def __init__(self, matrix: Mat, provenance: Sequence[dict] = ()):
        self.matrix = matrix
        self.provenance = list(provenance)

    @classmethod
    def identity(cls, dim: int) -> "GroupElement":
        return cls(Mat.identity(dim), [])

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix, self.provenance + other.provenance)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.matrix.inverse(), [{"inverse": self.provenance}])

    def act(self, x: Sequence) -> tuple[Fraction, ...]:
        return self.matrix.apply(x)

    def act_space(self, v: Subspace) -> Subspace:
        return v.image(self.matrix)

    def act_space_inverse(self, v: Subspace) -> Subspace:
        return v.preimage(self.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def is_automorphism_of(self, alg: QuadraticLieAlgebra) -> bool:
        return preserves_bracket(self.matrix, alg) and preserves_form(self.matrix, alg)


def preserves_bracket(m: Mat, alg: QuadraticLieAlgebra) -> bool:
    d = alg.dim
    cols = [list(c) for c in zip(*m.num)]  # images of basis vectors, scaled by m.den
    for i in range(d):
        for j in range(i + 1, d):
            lhs = alg.bracket_int(cols[i], cols[j])  # scaled by den^2
            br = alg.bracket_int([int(k == i) for k in range(d)], [int(k == j) for k in range(d)])
            img = [sum(m.num[r][k] * br[k] for k in range(d) if br[k]) for r in range(d)]  # scaled by den
            if any(a != b * m.den for a, b in zip(lhs, img)):
                return False
    return True


def preserves_form(m: Mat, alg: QuadraticLieAlgebra) -> bool:
    return m.T @ alg.gram @ m == alg.gram


def nilpotency_index(a: Mat, limit: int) -> int | None:
    """Smallest k with a^k = 0, or None if none up to ``limit``."""
    p = a
    for k in range(1, limit + 2):
        if p.is_zero():
            return k
        p = p @ a
    return None


def exp_nilpotent(a: Mat) -> Mat:
    k = nilpotency_index(a, a.rows)
    if k is None:
        raise NotNilpotent("matrix is not nilpotent")
    out = Mat.identity(a.rows)
    term = Mat.identity(a.rows)
    for j in range(1, k):
        term = (term @ a).scale(Fraction(1, j))
        out = out + term
    return out


def exp_ad(alg: QuadraticLieAlgebra, x: Sequence) -> GroupElement:
    """exp(ad x) for ad-nilpotent x, as a finite series."""
    a = alg.ad_matrix(x)
    try:
        m = exp_nilpotent(a)
    except NotNilpotent:
        raise NotNilpotent("ad x is not nilpotent") from None
    return GroupElement(m, [{"exp": [str(as_fraction(v)) for v in x]}])


def simple_rep(L: LieAlgebra, i: int) -> GroupElement:
    """s_i dot = exp(ad E_i) exp(-ad E_-i) exp(ad E_i)."""
    a = L.datum.simple_root(i)
    e = exp_ad(L, L.E(a)).matrix
    f = exp_ad(L, [-v for v in L.E(neg(a))]).matrix
    return GroupElement(e @ f @ e, [{"weyl": [i]}])


_REP_CACHE: dict[tuple[int, tuple[int, ...]], GroupElement] = {}


def weyl_rep(L: LieAlgebra, word: Sequence[int]) -> GroupElement:
    """Representative of the Weyl element with the given word: product of simple representatives."""
    key = (L.rank, tuple(word))
    g = _REP_CACHE.get(key)
    if g is None:
        m = Mat.identity(L.dim)
        for i in word:
            m = m @ simple_rep(L, i).matrix
        g = GroupElement(m, [{"weyl": list(word)}])
        _REP_CACHE[key] = g
    return GroupElement(g.matrix, list(g.provenance))


def torus_element(L: LieAlgebra, coords: Sequence) -> GroupElement:
    """The torus element h with h^{alpha_i} = coords[i]; acts on E_beta by prod coords_i^beta_i."""
    t = [as_fraction(c) for c in coords]
    if len(t) != L.rank:
        raise ValueError("one coordinate per simple root")
    if any(c == 0 for c in t):
        raise ValueError("torus coordinates must be nonzero")
    diag = [Fraction(1)] * L.rank
    for beta in L.roots:
        v = Fraction(1)
        for c, b in zip(t, beta):
            v *= c ** b
        diag.append(v)
    rows = [[diag[i] if i == j else 0 for j in range(L.dim)] for i in range(L.dim)]
    return GroupElement(Mat.from_rows(rows), [{"torus": [str(c) for c in t]}])


def torus_character(coords: Sequence, beta: Root) -> Fraction:
    v = Fraction(1)
    for c, b in zip(coords, beta):
        v *= as_fraction(c) ** b
    return v


def permutes_root_spaces(L: LieAlgebra, g: GroupElement, w: WeylElement) -> bool:
    """Check Ad_g maps g_beta onto g_{w beta} for every root and preserves the Cartan subalgebra."""
    for beta in L.roots:
        img = g.act(L.E(beta))
        target = L.E_index(w(beta))
        if any(v for k, v in enumerate(img) if k != target) or not img[target]:
            return False
    h = L.cartan()
    return g.act_space(h) == h
