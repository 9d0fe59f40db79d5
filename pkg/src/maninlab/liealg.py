"""Quadratic Lie algebras with exact structure constants, and the type A realization.

Vectors are coordinate tuples in a fixed basis.  Structure constants and Gram
matrices are integers for everything built here, so subspace computations run
on integer rows and only the public API speaks :class:`Fraction`.

Convention: ``H_alpha`` is normalized by ``<<x, H_alpha>> = alpha(x)`` for x in
the Cartan subalgebra, so with the trace form ``H_alpha`` is the matrix
``E_ii - E_jj`` for ``alpha = e_i - e_j``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .exactlin import (AmbientMismatch, Mat, Subspace, _echelon_int, _int_row, _kernel_rows,
                       as_fraction, form, perp)

Root = tuple[int, ...]


class NotASubalgebra(ValueError):
    pass


class QuadraticLieAlgebra:
    """A Lie algebra with a basis, an integer bracket table and an invariant form."""

    def __init__(self, labels: Sequence[str], table: dict[tuple[int, int], dict[int, int]], gram: Mat):
        self.labels = list(labels)
        self.dim = len(self.labels)
        if gram.shape != (self.dim, self.dim):
            raise ValueError("gram has the wrong size")
        if gram.den != 1:
            raise ValueError("gram must be integral")
        self.gram = gram
        # full antisymmetric table: (i, j) -> tuple of (k, c)
        full: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        for (i, j), out in table.items():
            items = tuple(sorted((k, int(c)) for k, c in out.items() if c))
            if not items:
                continue
            full[(i, j)] = items
            full[(j, i)] = tuple((k, -c) for k, c in items)
        self._table = full
        self._rows_by_i: list[list[tuple[int, tuple[tuple[int, int], ...]]]] = [[] for _ in range(self.dim)]
        for (i, j), items in full.items():
            self._rows_by_i[i].append((j, items))
        self._ad_cache: dict[int, Mat] = {}

    # -- elementwise ------------------------------------------------------
    def _check(self, v: Sequence) -> None:
        if len(v) != self.dim:
            raise AmbientMismatch(f"vector of length {len(v)} in algebra of dim {self.dim}")

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def bracket_int(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, items in self._rows_by_i[i]:
                b = y[j]
                if b:
                    ab = a * b
                    for k, c in items:
                        out[k] += ab * c
        return out

    def bracket(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        self._check(x)
        self._check(y)
        xs = [as_fraction(a) for a in x]
        ys = [as_fraction(b) for b in y]
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(xs):
            if not a:
                continue
            for j, items in self._rows_by_i[i]:
                b = ys[j]
                if b:
                    ab = a * b
                    for k, c in items:
                        out[k] += ab * c
        return tuple(out)

    def form_value(self, x: Sequence, y: Sequence) -> Fraction:
        self._check(x)
        self._check(y)
        return form(self.gram, x, y)

    def structure_constant(self, i: int, j: int) -> dict[int, int]:
        return dict(self._table.get((i, j), ()))

    def ad_matrix(self, x: Sequence) -> Mat:
        """Matrix of ad_x acting on column coordinate vectors."""
        self._check(x)
        xi = _int_row(x)
        den = _common_den(x)
        cols = [self.bracket_int(xi, [int(k == j) for k in range(self.dim)]) for j in range(self.dim)]
        return Mat([list(r) for r in zip(*cols)], den, rows=self.dim, cols=self.dim)

    def ad_basis(self, i: int) -> Mat:
        m = self._ad_cache.get(i)
        if m is None:
            m = self.ad_matrix(self.basis_vector(i))
            self._ad_cache[i] = m
        return m

    # -- subspace queries -------------------------------------------------------
    def span(self, vectors) -> Subspace:
        return Subspace.span(list(vectors), self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim)

    def bracket_spaces(self, a: Subspace, b: Subspace) -> Subspace:
        """[A, B]: span of brackets of basis vectors."""
        av, bv = a.int_vectors(), b.int_vectors()
        return Subspace._from_int_rows([self.bracket_int(x, y) for x in av for y in bv], self.dim)

    def is_subalgebra(self, v: Subspace) -> bool:
        ann = v.annihilator_rows()
        if not ann:
            return True
        vecs = v.int_vectors()
        for i, j in combinations(range(len(vecs)), 2):
            z = self.bracket_int(vecs[i], vecs[j])
            if any(sum(w[k] * z[k] for k in range(self.dim) if z[k]) for w in ann):
                return False
        return True

    def perp(self, v: Subspace) -> Subspace:
        return perp(v, self.gram)

    def is_isotropic(self, v: Subspace) -> bool:
        return v <= self.perp(v)

    def is_coisotropic(self, v: Subspace) -> bool:
        return self.perp(v) <= v

    def is_lagrangian(self, v: Subspace) -> bool:
        return self.perp(v) == v

    def subalgebra_flags(self, v: Subspace) -> dict[str, bool]:
        p = self.perp(v)
        return {"subalgebra": self.is_subalgebra(v), "isotropic": v <= p,
                "coisotropic": p <= v, "lagrangian": p == v}

    def derived_subalgebra(self, v: Subspace) -> Subspace:
        if not self.is_subalgebra(v):
            raise NotASubalgebra("derived subalgebra requested for a subspace that is not closed")
        return self.bracket_spaces(v, v)

    def normalizer_in(self, v: Subspace) -> Subspace:
        """{x : [x, V] in V}, solved as one linear system."""
        ann = v.annihilator_rows()
        if not ann or v.dim == 0:
            return self.full()
        rows = []
        for vk in v.int_vectors():
            # column i holds [e_i, v_k]
            imgs = [self.bracket_int([int(t == i) for t in range(self.dim)], vk) for i in range(self.dim)]
            for w in ann:
                rows.append([sum(w[t] * img[t] for t in range(self.dim) if img[t]) for img in imgs])
        er, piv = _echelon_int(rows, self.dim)
        return Subspace._from_int_rows(_kernel_rows(er, piv, self.dim), self.dim)

    def centralizer_in(self, v: Subspace) -> Subspace:
        rows = []
        for vk in v.int_vectors():
            imgs = [self.bracket_int([int(t == i) for t in range(self.dim)], vk) for i in range(self.dim)]
            rows.extend([list(r) for r in zip(*imgs)])
        er, piv = _echelon_int(rows, self.dim)
        return Subspace._from_int_rows(_kernel_rows(er, piv, self.dim), self.dim)

    def jacobi_defect(self, x: Sequence, y: Sequence, z: Sequence) -> tuple[Fraction, ...]:
        b = self.bracket
        t1 = b(x, b(y, z))
        t2 = b(y, b(z, x))
        t3 = b(z, b(x, y))
        return tuple(p + q + r for p, q, r in zip(t1, t2, t3))


class RootDatum:
    """Roots of a Cartan matrix, in simple-root coordinates."""

    def __init__(self, cartan: Sequence[Sequence[int]]):
        self.cartan = [list(map(int, r)) for r in cartan]
        self.rank = len(self.cartan)
        self.positive_roots = self._positive_roots()
        self.roots = self.positive_roots + [neg(r) for r in self.positive_roots]

    def pairing(self, beta: Root, i: int) -> int:
        """<beta, alpha_i^vee>."""
        return sum(beta[j] * self.cartan[j][i] for j in range(self.rank))

    def _positive_roots(self) -> list[Root]:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    q = p - self.pairing(beta, i)
                    if q > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            layer = nxt
        return sorted(found, key=lambda r: (sum(r), tuple(-c for c in r)))

    def simple_root(self, i: int) -> Root:
        return tuple(int(i == j) for j in range(self.rank))

    def is_positive(self, beta: Root) -> bool:
        return all(c >= 0 for c in beta) and any(beta)

    def in_span(self, beta: Root, subset) -> bool:
        s = set(subset)
        return all(c == 0 or j in s for j, c in enumerate(beta))

    def roots_in(self, subset) -> list[Root]:
        return [r for r in self.roots if self.in_span(r, subset)]

    def reflect(self, i: int, beta: Root) -> Root:
        k = self.pairing(beta, i)
        out = list(beta)
        out[i] -= k
        return tuple(out)


def _common_den(x: Sequence) -> int:
    den = 1
    for a in x:
        q = as_fraction(a).denominator
        den = den * q // gcd(den, q)
    return den


def neg(r: Root) -> Root:
    return tuple(-c for c in r)


def cartan_type_A(n: int) -> list[list[int]]:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def root_label(beta: Root) -> str:
    return "E_[" + ",".join(str(c) for c in beta) + "]"


class LieAlgebra(QuadraticLieAlgebra):
    """sl(n+1) with Cartan basis H_1..H_n followed by root vectors.

    Root vectors E_alpha are elementary matrix units; the form is the trace
    form.  Positive roots come first (by height), then their negatives.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("type A rank must be at least 1")
        self.rank = n
        self.N = n + 1
        self.datum = RootDatum(cartan_type_A(n))
        self.roots = self.datum.roots
        self.positive_roots = self.datum.positive_roots
        self.root_index = {r: n + k for k, r in enumerate(self.roots)}
        labels = [f"H_{i + 1}" for i in range(n)] + [root_label(r) for r in self.roots]
        self.dim = len(labels)
        self._mats = [self._basis_matrix(k) for k in range(len(labels))]
        table: dict[tuple[int, int], dict[int, int]] = {}
        d = len(labels)
        for i in range(d):
            for j in range(i + 1, d):
                c = _commutator(self._mats[i], self._mats[j])
                coords = self.from_matrix(c)
                out = {k: int(v) for k, v in enumerate(coords) if v}
                if any(Fraction(v).denominator != 1 for v in coords):
                    raise AssertionError("non-integral structure constant")
                if out:
                    table[(i, j)] = out
        gram = [[int(_trace_product(self._mats[i], self._mats[j])) for j in range(d)] for i in range(d)]
        super().__init__(labels, table, Mat(gram, 1))

    @property
    def spec(self) -> dict:
        return {"type": "A", "rank": self.rank}

    # -- matrix realization -------------------------------------------------
    def _root_ij(self, beta: Root) -> tuple[int, int]:
        nz = [k for k, c in enumerate(beta) if c]
        lo, hi = nz[0], nz[-1] + 1
        return (lo, hi) if beta[lo] > 0 else (hi, lo)

    def _basis_matrix(self, k: int) -> list[list[int]]:
        N = self.N
        m = [[0] * N for _ in range(N)]
        if k < self.rank:
            m[k][k] = 1
            m[k + 1][k + 1] = -1
        else:
            i, j = self._root_ij(self.roots[k - self.rank])
            m[i][j] = 1
        return m

    def to_matrix(self, x: Sequence) -> list[list[Fraction]]:
        self._check(x)
        N = self.N
        out = [[Fraction(0)] * N for _ in range(N)]
        for k, a in enumerate(x):
            a = as_fraction(a)
            if not a:
                continue
            for i, row in enumerate(self._mats[k]):
                for j, v in enumerate(row):
                    if v:
                        out[i][j] += a * v
        return out

    def from_matrix(self, m) -> tuple[Fraction, ...]:
        N = self.N
        m = [[as_fraction(v) for v in r] for r in m]
        if sum(m[i][i] for i in range(N)) != 0:
            raise ValueError("matrix is not traceless")
        out = [Fraction(0)] * self.dim
        acc = Fraction(0)
        for i in range(self.rank):
            acc += m[i][i]
            out[i] = acc
        for k, r in enumerate(self.roots):
            i, j = self._root_ij(r)
            out[self.rank + k] = m[i][j]
        return tuple(out)

    # -- roots and Cartan ---------------------------------------------------------
    def E(self, beta: Root) -> tuple[Fraction, ...]:
        return self.basis_vector(self.root_index[tuple(beta)])

    def E_index(self, beta: Root) -> int:
        return self.root_index[tuple(beta)]

    def H(self, beta: Root) -> tuple[Fraction, ...]:
        """H_beta in coordinates; H_{alpha_i} is the i-th basis vector."""
        return tuple(Fraction(c) for c in beta) + (Fraction(0),) * (self.dim - self.rank)

    def H_simple(self, i: int) -> tuple[Fraction, ...]:
        return self.basis_vector(i)

    def cartan(self) -> Subspace:
        return Subspace.span([self.basis_vector(i) for i in range(self.rank)], self.dim)

    def root_value(self, beta: Root, x: Sequence) -> Fraction:
        """beta(x) for x in the Cartan subalgebra (the non-Cartan part of x is ignored)."""
        c = [as_fraction(a) for a in x[: self.rank]]
        return sum((Fraction(beta[i]) * sum(self.datum.cartan[i][j] * c[j] for j in range(self.rank))
                    for i in range(self.rank)), Fraction(0))

    def root_of_index(self, k: int) -> Root | None:
        return None if k < self.rank else self.roots[k - self.rank]

    def label(self, k: int) -> str:
        return self.labels[k]


def _commutator(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    ba = [[sum(b[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


def _trace_product(a: list[list[int]], b: list[list[int]]) -> int:
    n = len(a)
    return sum(a[i][k] * b[k][i] for i in range(n) for k in range(n))


_CACHE: dict[int, LieAlgebra] = {}


def build_type_A(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("type A rank must be at least 1")
    if n not in _CACHE:
        _CACHE[n] = LieAlgebra(n)
    return _CACHE[n]


def realization_defects(L: LieAlgebra) -> dict[str, int]:
    """Count failures of Jacobi, form invariance and the root-vector normalizations on all basis tuples."""
    d = L.dim
    e = [[int(i == k) for k in range(d)] for i in range(d)]
    br = [[L.bracket_int(e[i], e[j]) for j in range(d)] for i in range(d)]
    g = L.gram.num
    jac = inv = 0
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                tot = [0] * d
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = br[b][c]
                    for t, v in enumerate(inner):
                        if v:
                            row = br[a][t]
                            for s in range(d):
                                tot[s] += v * row[s]
                if any(tot):
                    jac += 1
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = sum(br[i][j][t] * g[t][k] for t in range(d))
                rhs = sum(g[j][t] * br[i][k][t] for t in range(d))
                if lhs + rhs:
                    inv += 1
    norm = 0
    for beta in L.roots:
        h = [int(c) for c in beta] + [0] * (d - L.rank)
        if L.bracket_int(e[L.E_index(beta)], e[L.E_index(neg(beta))]) != h:
            norm += 1
    pairing = 0
    for beta in L.roots:
        for i in range(L.rank):
            if L.form_value(e[i], L.H(beta)) != L.root_value(beta, e[i]):
                pairing += 1
    return {"jacobi": jac, "invariance": inv, "normalization": norm, "pairing": pairing}


def perturbed_copy(L: QuadraticLieAlgebra, i: int, j: int, k: int, delta: int = 1) -> QuadraticLieAlgebra:
    """A copy of L with the structure constant c_ij^k shifted by delta, keeping antisymmetry."""
    import copy

    out = copy.copy(L)
    entries = {(a, b): dict(items) for (a, b), items in L._table.items() if a < b}
    key, sign = ((i, j), 1) if i < j else ((j, i), -1)
    row = entries.setdefault(key, {})
    row[k] = row.get(k, 0) + sign * delta
    QuadraticLieAlgebra.__init__(out, L.labels, entries, L.gram)
    return out
