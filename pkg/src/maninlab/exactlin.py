"""Exact rational matrices and the subspace lattice.

Everything here is exact.  A :class:`Mat` keeps an integer numerator matrix
and a single positive common denominator, reduced so that the gcd of all
entries and the denominator is 1; this keeps products and eliminations in
fast Python integers while the public surface speaks :class:`Fraction`.

A :class:`Subspace` is stored by its reduced row echelon basis, so two
subspaces are equal as sets exactly when their stored bases are equal.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class AmbientMismatch(ValueError):
    pass


class GramError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _int_row(values: Sequence) -> list[int]:
    """Scale a rational row to a primitive-free integer row spanning the same line."""
    fr = [as_fraction(v) for v in values]
    den = reduce(_lcm, (f.denominator for f in fr), 1)
    return [f.numerator * (den // f.denominator) for f in fr]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def _echelon_int(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Integer Gauss-Jordan elimination.

    Returns (rows, pivots) where each returned row has zeros in every other
    pivot column.  Rows are kept primitive after each step so entries stay small.
    """
    rows = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    prow = 0
    for c in range(ncols):
        if prow == len(rows):
            break
        sel = None
        best = None
        for i in range(prow, len(rows)):
            v = rows[i][c]
            if v:
                # smallest pivot keeps coefficient growth down
                a = abs(v)
                if best is None or a < best:
                    sel, best = i, a
                    if a == 1:
                        break
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        pr = rows[prow]
        p = pr[c]
        for i in range(len(rows)):
            if i == prow:
                continue
            r = rows[i]
            f = r[c]
            if not f:
                continue
            g = gcd(p, f)
            a, b = p // g, f // g
            rows[i] = _primitive([a * x - b * y for x, y in zip(r, pr)])
        pivots.append(c)
        prow += 1
    return rows[:prow], pivots


class Mat:
    """Immutable exact rational matrix."""

    __slots__ = ("rows", "cols", "_num", "_den", "_hash", "_frac")

    def __init__(self, num, den: int = 1, *, rows: int | None = None, cols: int | None = None, _reduced=False):
        num = tuple(tuple(int(v) for v in r) for r in num)
        if rows is None:
            rows = len(num)
        if cols is None:
            cols = len(num[0]) if num else 0
        if den <= 0:
            raise ValueError("denominator must be positive")
        if not _reduced:
            g = den
            for r in num:
                for v in r:
                    if v:
                        g = gcd(g, v)
                        if g == 1:
                            break
                if g == 1:
                    break
            if g > 1:
                num = tuple(tuple(v // g for v in r) for r in num)
                den //= g
        self.rows = rows
        self.cols = cols
        self._num = num
        self._den = den
        self._hash = None
        self._frac = None

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> "Mat":
        fr = [[as_fraction(v) for v in r] for r in rows]
        if cols is None:
            cols = len(fr[0]) if fr else 0
        for r in fr:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        den = 1
        for r in fr:
            for f in r:
                if f.denominator != 1:
                    den = _lcm(den, f.denominator)
        num = [[f.numerator * (den // f.denominator) for f in r] for r in fr]
        return cls(num, den, rows=len(fr), cols=cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([[0] * cols for _ in range(rows)], 1, rows=rows, cols=cols, _reduced=True)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], 1, rows=n, cols=n, _reduced=True)

    @classmethod
    def diag_blocks(cls, a: "Mat", b: "Mat") -> "Mat":
        den = _lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        num = []
        for r in a._num:
            num.append([v * fa for v in r] + [0] * b.cols)
        for r in b._num:
            num.append([0] * a.cols + [v * fb for v in r])
        return cls(num, den, rows=a.rows + b.rows, cols=a.cols + b.cols)

    # -- access ----------------------------------------------------------
    @property
    def num(self) -> tuple[tuple[int, ...], ...]:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self._num[i][j], self._den)

    def tolist(self) -> list[list[Fraction]]:
        if self._frac is None:
            d = self._den
            self._frac = tuple(tuple(Fraction(v, d) for v in r) for r in self._num)
        return [list(r) for r in self._frac]

    def row(self, i: int) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(v, d) for v in self._num[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._den, self._num))
        return self._hash

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols}, den={self._den})"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._num)

    # -- arithmetic ------------------------------------------------------
    @property
    def T(self) -> "Mat":
        if not self.rows:
            return Mat.zeros(self.cols, 0)
        return Mat(list(zip(*self._num)), self._den, rows=self.cols, cols=self.rows, _reduced=True)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ot = list(zip(*other._num)) if other.rows else [()] * other.cols
            num = []
            for r in self._num:
                nz = [(k, v) for k, v in enumerate(r) if v]
                num.append([sum(v * c[k] for k, v in nz) for c in ot])
            return Mat(num, self._den * other._den, rows=self.rows, cols=other.cols)
        vec = [as_fraction(v) for v in other]
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return self.apply(vec)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        v = _int_row(vec)
        vden = reduce(_lcm, (as_fraction(x).denominator for x in vec), 1)
        den = self._den * vden
        return tuple(Fraction(sum(a * b for a, b in zip(r, v) if a), den) for r in self._num)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        den = _lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return Mat([[a * fa + b * fb for a, b in zip(r, s)] for r, s in zip(self._num, other._num)], den,
                   rows=self.rows, cols=self.cols)

    def __neg__(self) -> "Mat":
        return Mat([[-v for v in r] for r in self._num], self._den, rows=self.rows, cols=self.cols, _reduced=True)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, q) -> "Mat":
        q = as_fraction(q)
        return Mat([[v * q.numerator for v in r] for r in self._num], self._den * q.denominator,
                   rows=self.rows, cols=self.cols)

    def int_rows(self) -> list[list[int]]:
        """Rows scaled by the common denominator (same row spans)."""
        return [list(r) for r in self._num]

    def rank(self) -> int:
        return len(_echelon_int(self.int_rows(), self.cols)[1])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._num[i][j] == self._num[j][i] for i in range(self.rows) for j in range(i))

    def is_antisymmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._num[i][j] == -self._num[j][i] for i in range(self.rows) for j in range(i + 1))

    def inverse(self) -> "Mat":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of non-square matrix")
        aug = [list(r) + [int(i == j) * self._den for j in range(n)] for i, r in enumerate(self._num)]
        rows, piv = _echelon_int(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        out = []
        for k in range(n):
            p = rows[k][k]
            out.append([Fraction(v, p) for v in rows[k][n:]])
        # aug right block was den * I, so the result is A^{-1}
        return Mat.from_rows(out)

    def power(self, k: int) -> "Mat":
        out = Mat.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    # -- serialization ---------------------------------------------------
    def to_json(self) -> list[list[str]]:
        return [[format_rational(Fraction(v, self._den)) for v in r] for r in self._num]

    @classmethod
    def from_json(cls, data) -> "Mat":
        if isinstance(data, str):
            data = json.loads(data)
        if not data:
            return cls.zeros(0, 0)
        return cls.from_rows([[parse_rational(str(x)) if isinstance(x, str) else as_fraction(x) for x in r]
                              for r in data])


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form with zero rows removed, and the pivot columns."""
    rows, piv = _echelon_int(m.int_rows(), m.cols)
    return _rref_mat(rows, piv, m.cols), piv


def _rref_mat(rows: list[list[int]], piv: list[int], ncols: int) -> Mat:
    if not rows:
        return Mat.zeros(0, ncols)
    den = 1
    for r, c in zip(rows, piv):
        den = _lcm(den, abs(r[c]))
    num = []
    for r, c in zip(rows, piv):
        p = r[c]
        f = den // p
        num.append([v * f for v in r])
    return Mat(num, den, rows=len(rows), cols=ncols)


def rank_fraction_free(m: Mat) -> int:
    """Bareiss fraction-free elimination; an independent rank routine used as an oracle."""
    a = [list(r) for r in m.num]
    nr, nc = m.rows, m.cols
    rank = 0
    prev = 1
    col = 0
    while rank < nr and col < nc:
        sel = next((i for i in range(rank, nr) if a[i][col]), None)
        if sel is None:
            col += 1
            continue
        a[rank], a[sel] = a[sel], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nr):
            for j in range(col + 1, nc):
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        col += 1
    return rank


def _kernel_rows(rows: list[list[int]], piv: list[int], ncols: int) -> list[list[int]]:
    """Integer basis of the null space {x : R x = 0} for an eliminated system."""
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    L = 1
    for r, c in zip(rows, piv):
        L = _lcm(L, abs(r[c]))
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = L
        for r, c in zip(rows, piv):
            if r[f]:
                v[c] = -r[f] * (L // r[c])
        out.append(v)
    return out


def kernel(m: Mat) -> "Subspace":
    """Null space of m as a subspace of the column space dimension."""
    rows, piv = _echelon_int(m.int_rows(), m.cols)
    return Subspace._from_int_rows(_kernel_rows(rows, piv, m.cols), m.cols)


class Subspace:
    """A linear subspace of Q^n in canonical reduced row echelon form."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_ann")

    def __init__(self, ambient_dim: int, basis: Mat, pivots: Sequence[int]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)
        self._ann = None

    # -- construction -----------------------------------------------------
    @classmethod
    def _from_int_rows(cls, rows: list[list[int]], n: int) -> "Subspace":
        er, piv = _echelon_int(rows, n)
        return cls(n, _rref_mat(er, piv, n), piv)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
            rows.append(_int_row(v))
        return cls._from_int_rows(rows, ambient_dim)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Mat.zeros(0, n), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Mat.identity(n), range(n))

    @classmethod
    def from_mat(cls, m: Mat) -> "Subspace":
        return cls._from_int_rows(m.int_rows(), m.cols)

    # -- basics -------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.basis.rows

    def __len__(self) -> int:
        return self.dim

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [self.basis.row(i) for i in range(self.dim)]

    def int_vectors(self) -> list[list[int]]:
        return self.basis.int_rows()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, vec: Sequence) -> bool:
        if len(vec) != self.ambient_dim:
            raise AmbientMismatch("vector length")
        v = _int_row(vec)
        return all(sum(a * b for a, b in zip(w, v)) == 0 for w in self.annihilator_rows())

    def __contains__(self, vec) -> bool:
        return self.contains(vec)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        ann = other.annihilator_rows()
        return all(sum(a * b for a, b in zip(w, v)) == 0 for v in self.int_vectors() for w in ann)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def annihilator_rows(self) -> list[list[int]]:
        """Integer rows w with w.v = 0 for every v in the subspace (standard dot product)."""
        if self._ann is None:
            self._ann = _kernel_rows(self.basis.int_rows(), list(self.pivots), self.ambient_dim)
        return self._ann

    # -- lattice operations -----------------------------------------------------
    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def perp(self, gram: Mat) -> "Subspace":
        return perp(self, gram)

    def image(self, m: Mat) -> "Subspace":
        """Image under the linear map x -> m x."""
        if m.cols != self.ambient_dim:
            raise AmbientMismatch("map domain")
        if not self.dim:
            return Subspace.zero(m.rows)
        b = self.basis.int_rows()
        rows = [[sum(x * y for x, y in zip(mr, v) if x) for mr in m.num] for v in b]
        return Subspace._from_int_rows(rows, m.rows)

    def preimage(self, m: Mat) -> "Subspace":
        """{x : m x in self}."""
        if m.rows != self.ambient_dim:
            raise AmbientMismatch("map codomain")
        ann = self.annihilator_rows()
        rows = [[sum(w[i] * m.num[i][j] for i in range(m.rows) if w[i]) for j in range(m.cols)] for w in ann]
        er, piv = _echelon_int(rows, m.cols)
        return Subspace._from_int_rows(_kernel_rows(er, piv, m.cols), m.cols)

    def complement_basis(self) -> list[list[int]]:
        """Standard basis vectors completing this subspace (non-pivot columns)."""
        piv = set(self.pivots)
        return [[int(i == c) for i in range(self.ambient_dim)] for c in range(self.ambient_dim) if c not in piv]

    # -- serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, data) -> "Subspace":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["ambient_dim"])
        rows = [[parse_rational(str(x)) for x in r] for r in data["basis"]]
        return cls.span(rows, n)


def sum_(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace._from_int_rows(a.int_vectors() + b.int_vectors(), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    if a.dim == a.ambient_dim:
        return b
    if b.dim == b.ambient_dim:
        return a
    rows = a.annihilator_rows() + b.annihilator_rows()
    er, piv = _echelon_int(rows, a.ambient_dim)
    return Subspace._from_int_rows(_kernel_rows(er, piv, a.ambient_dim), a.ambient_dim)


_GRAM_OK: dict[Mat, bool] = {}


def check_gram(gram: Mat) -> None:
    ok = _GRAM_OK.get(gram)
    if ok is None:
        ok = gram.is_symmetric() and gram.rank() == gram.rows
        if len(_GRAM_OK) > 256:
            _GRAM_OK.clear()
        _GRAM_OK[gram] = ok
    if not ok:
        raise GramError("gram matrix must be symmetric and invertible")


def perp(v: Subspace, gram: Mat) -> Subspace:
    """V^perp = {x : <x, y> = 0 for all y in V} for the form with the given Gram matrix."""
    if gram.rows != v.ambient_dim or gram.cols != v.ambient_dim:
        raise AmbientMismatch("gram size")
    check_gram(gram)
    n = v.ambient_dim
    if v.dim == 0:
        return Subspace.full(n)
    g = gram.num
    rows = [[sum(b[i] * g[i][j] for i in range(n) if b[i]) for j in range(n)] for b in v.int_vectors()]
    er, piv = _echelon_int(rows, n)
    return Subspace._from_int_rows(_kernel_rows(er, piv, n), n)


def form(gram: Mat, x: Sequence, y: Sequence) -> Fraction:
    xs = [as_fraction(a) for a in x]
    ys = [as_fraction(b) for b in y]
    tot = 0
    g = gram.num
    for i, a in enumerate(xs):
        if a:
            gi = g[i]
            tot += a * sum(gi[j] * b for j, b in enumerate(ys) if b and gi[j])
    return Fraction(tot) / gram.den


def gram_between(gram: Mat, xs: Sequence[Sequence], ys: Sequence[Sequence]) -> Mat:
    """Matrix of pairings <x_i, y_j>."""
    return Mat.from_rows([[form(gram, x, y) for y in ys] for x in xs], cols=len(ys))


def is_isotropic(v: Subspace, gram: Mat) -> bool:
    return v <= perp(v, gram)


def is_coisotropic_space(v: Subspace, gram: Mat) -> bool:
    return perp(v, gram) <= v


def is_lagrangian_space(v: Subspace, gram: Mat) -> bool:
    return perp(v, gram) == v


def vec_add(x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_fraction(a) + as_fraction(b) for a, b in zip(x, y))


def vec_scale(q, x: Sequence) -> tuple[Fraction, ...]:
    q = as_fraction(q)
    return tuple(q * as_fraction(a) for a in x)


def unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(j == i)) for j in range(n))
