"""Dense linear algebra over the table-driven fields of :mod:`glmaps.gf_core`.

Vectors are tuples of integer encodings; matrices are tuples of row tuples
acting on column vectors, so column ``j`` of a matrix is the image of ``e_j``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cache

from glmaps.errors import DimensionMismatch, Singular, TooLarge
from glmaps.gf_core import Field

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

GL_GUARD = 10**7
_TABLE_LIMIT = 1024


# -- elementary operations ---------------------------------------------------


def vec_add(u: Vector, v: Vector, f: Field) -> Vector:
    add = f._add
    return tuple(add[a][b] for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector, f: Field) -> Vector:
    sub = f._sub
    return tuple(sub[a][b] for a, b in zip(u, v))


def vec_scale(a: int, v: Vector, f: Field) -> Vector:
    row = f._mul[a]
    return tuple(row[x] for x in v)


def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(i: int, n: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit_vector(i, n) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def from_columns(cols: Sequence[Vector]) -> Matrix:
    return transpose(cols)


def matvec(m: Matrix, v: Vector, f: Field) -> Vector:
    add, mul = f._add, f._mul
    out = []
    for row in m:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        out.append(acc)
    return tuple(out)


def matmul(a: Matrix, b: Matrix, f: Field) -> Matrix:
    cols = transpose(b)
    return tuple(tuple(_dot(row, col, f) for col in cols) for row in a)


def _dot(u: Sequence[int], v: Sequence[int], f: Field) -> int:
    add, mul = f._add, f._mul
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = add[acc][mul[a][b]]
    return acc


def mat_scale(a: int, m: Matrix, f: Field) -> Matrix:
    return tuple(vec_scale(a, row, f) for row in m)


def rref(rows: Sequence[Sequence[int]], f: Field, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form with unit pivots; returns (non-zero rows, pivot columns).

    Only the first ``ncols`` columns are eligible as pivots; row operations
    still act on the full width (used for augmented systems).
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    width = len(work[0])
    ncols = width if ncols is None else ncols
    add, mul, neg = f._add, f._mul, f._neg
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = f.inv(work[r][c])
        prow = [mul[inv][x] for x in work[r]]
        work[r] = prow
        for i in range(len(work)):
            if i != r and work[i][c]:
                factor = neg[work[i][c]]
                mrow = mul[factor]
                work[i] = [add[x][mrow[y]] for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(m: Sequence[Sequence[int]], f: Field) -> int:
    """Row rank over ``f``."""
    return len(rref(m, f)[1])


def is_independent(vs: Sequence[Vector], f: Field) -> bool:
    """True iff the vectors are non-zero and linearly independent; [] is independent."""
    if not vs:
        return True
    if any(not any(v) for v in vs):
        return False
    return rank(vs, f) == len(vs)


def inverse(m: Matrix, f: Field) -> Matrix:
    n = len(m)
    aug = [list(row) + list(unit_vector(i, n)) for i, row in enumerate(m)]
    red, piv = rref(aug, f, ncols=n)
    if len(piv) < n:
        raise Singular("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in red)


def is_invertible(m: Matrix, f: Field) -> bool:
    return len(m) == len(m[0]) and rank(m, f) == len(m)


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``f^n`` held as its canonical RREF basis.

    Two subspaces are equal iff their bases are equal.
    """

    field: Field
    n: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        return self.coords(v) is not None

    def coords(self, v: Vector) -> tuple[int, ...] | None:
        """Coordinates of ``v`` in the canonical basis, or None if outside."""
        f = self.field
        coeffs = tuple(v[c] for c in self.pivots)
        rebuilt = zero_vector(self.n)
        for a, b in zip(coeffs, self.basis):
            if a:
                rebuilt = vec_add(rebuilt, vec_scale(a, b, f), f)
        return coeffs if rebuilt == tuple(v) else None

    def from_coords(self, coeffs: Sequence[int]) -> Vector:
        f = self.field
        out = zero_vector(self.n)
        for a, b in zip(coeffs, self.basis):
            if a:
                out = vec_add(out, vec_scale(a, b, f), f)
        return out

    def vectors(self) -> Iterator[Vector]:
        for coeffs in itertools.product(range(self.field.q), repeat=self.dim):
            yield self.from_coords(coeffs)

    def issubspace(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)


def span(vs: Sequence[Vector], f: Field, n: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``vs``; ``n`` is required when ``vs`` is empty."""
    if n is None:
        if not vs:
            raise DimensionMismatch("ambient dimension needed for an empty span")
        n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise DimensionMismatch("vectors of different lengths")
    red, piv = rref(vs, f)
    return Subspace(f, n, tuple(tuple(r) for r in red), tuple(piv))


def all_subspaces(f: Field, n: int, dim: int | None = None) -> list[Subspace]:
    """Every subspace of ``f^n`` (or every one of dimension ``dim``), deduplicated."""
    space = vector_space(f, n)
    found: dict[tuple, Subspace] = {}
    dims = range(n + 1) if dim is None else [dim]
    for d in dims:
        if d == 0:
            s = span([], f, n)
            found[s.basis] = s
            continue
        for combo in itertools.combinations(space.vectors[1:], d):
            s = span(list(combo), f, n)
            if s.dim == d:
                found.setdefault(s.basis, s)
    return list(found.values())


# -- vector space with integer codes -------------------------------------------


class VectorSpace:
    """``f^n`` with vectors encoded as integers, first coordinate most significant.

    Encoding order equals lexicographic order of the coordinate tuples.
    """

    def __init__(self, f: Field, n: int):
        self.field = f
        self.n = n
        self.size = f.q**n
        self.vectors: list[Vector] = list(itertools.product(range(f.q), repeat=n))
        self.index: dict[Vector, int] = {v: i for i, v in enumerate(self.vectors)}
        self._add_table: list[list[int]] | None = None
        self._scale_table: list[list[int]] | None = None
        if self.size <= _TABLE_LIMIT:
            idx = self.index
            self._add_table = [[idx[vec_add(u, v, f)] for v in self.vectors] for u in self.vectors]
            self._scale_table = [[idx[vec_scale(a, v, f)] for v in self.vectors] for a in range(f.q)]

    def encode(self, v: Sequence[int]) -> int:
        return self.index[tuple(v)]

    def decode(self, code: int) -> Vector:
        return self.vectors[code]

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        return self.index[vec_add(self.vectors[a], self.vectors[b], self.field)]

    def scale(self, s: int, a: int) -> int:
        if self._scale_table is not None:
            return self._scale_table[s][a]
        return self.index[vec_scale(s, self.vectors[a], self.field)]

    def lincomb(self, coeffs: Sequence[int], codes: Sequence[int]) -> int:
        acc = 0
        for s, c in zip(coeffs, codes):
            if s:
                acc = self.add(acc, self.scale(s, c))
        return acc

    def images(self, m: Matrix) -> list[int]:
        """Codes of ``m x`` for every ``x`` of the domain, in domain code order.

        ``m`` maps a domain of dimension ``len(m[0])`` into this space.
        """
        return self.span_table([self.encode(c) for c in transpose(m)])

    def span_table(self, codes: Sequence[int]) -> list[int]:
        """``sum_j a_j codes[j]`` for every coefficient tuple ``a`` in lexicographic order."""
        out = [0]
        q = self.field.q
        if self._add_table is not None:
            add, scale = self._add_table, self._scale_table
            for c in codes:
                multiples = [scale[a][c] for a in range(q)]
                out = [add[o][w] for o in out for w in multiples]
            return out
        for c in codes:
            multiples = [self.scale(a, c) for a in range(q)]
            out = [self.add(o, w) for o in out for w in multiples]
        return out

    def __repr__(self) -> str:
        return f"{self.field}^{self.n}"


@cache
def vector_space(f: Field, n: int) -> VectorSpace:
    return VectorSpace(f, n)


# -- GL(n, q) ------------------------------------------------------------------


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def elementary_transvection(i: int, j: int, n: int, a: int = 1) -> Matrix:
    """Identity plus ``a`` at row ``i``, column ``j``."""
    return tuple(tuple(1 if r == c else (a if (r, c) == (i, j) else 0) for c in range(n)) for r in range(n))


def diagonal(entries: Sequence[int]) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[r] if r == c else 0 for c in range(n)) for r in range(n))


def gl_generators(n: int, f: Field) -> list[Matrix]:
    """Transvections E_ij(1) for i != j, then diag(z, 1, ..., 1) for the field generator z.

    The diagonal generator is omitted over GF(2), where it is the identity.
    """
    gens = [elementary_transvection(i, j, n) for i in range(n) for j in range(n) if i != j]
    if f.q > 2:
        gens.append(diagonal([f.generator] + [1] * (n - 1)))
    return gens


def enumerate_gl(n: int, f: Field, guard: int = GL_GUARD) -> Iterator[Matrix]:
    """Every invertible n x n matrix, in row-major lexicographic order."""
    if gl_order(n, f.q) > guard:
        raise TooLarge(f"|GL({n},{f.q})| = {gl_order(n, f.q)} exceeds guard {guard}")
    space = vector_space(f, n)
    vecs = space.vectors
    size = space.size
    units = range(1, f.q)

    def rec(rows: list[Vector], in_span: bytearray, spanned: list[int]) -> Iterator[Matrix]:
        last = len(rows) == n - 1
        for v in range(size):
            if in_span[v]:
                continue
            rows.append(vecs[v])
            if last:
                yield tuple(rows)
            else:
                scaled = [space.scale(a, v) for a in units]
                grown = spanned + [space.add(s, w) for s in spanned for w in scaled]
                mark = bytearray(size)
                for c in grown:
                    mark[c] = 1
                yield from rec(rows, mark, grown)
            rows.pop()

    zero = bytearray(size)
    zero[0] = 1
    yield from rec([], zero, [0])


# -- partial maps --------------------------------------------------------------


def forced_linear_map(pairs: Sequence[tuple[Vector, Vector]], f: Field) -> tuple[list[Vector], list[Vector]] | None:
    """The linear map on span(sources) forced by ``pairs``.

    Returns (basis, images): the canonical RREF basis of span(sources) and the
    forced image of each basis vector, or None if the pairs are inconsistent
    with any linear map.
    """
    if not pairs:
        return [], []
    n = len(pairs[0][0])
    # A pivot in a target column is a row 0 -> t != 0: no linear map fits.
    red, piv = rref([list(s) + list(t) for s, t in pairs], f)
    if piv and piv[-1] >= n:
        return None
    return [tuple(r[:n]) for r in red], [tuple(r[n:]) for r in red]


def _complement_columns(pivots: Sequence[int], n: int) -> list[int]:
    ps = set(pivots)
    return [c for c in range(n) if c not in ps]


def extend_to_automorphism(pairs: Sequence[tuple[Vector, Vector]], n: int, f: Field) -> Matrix | None:
    """An invertible ``u`` with ``u(s) = t`` for every pair, or None.

    None means no linear map satisfies the pairs, or the forced map on
    span(sources) is not injective.  The completion maps the standard basis
    vectors at the non-pivot columns of span(sources), in order, onto those at
    the non-pivot columns of span(images).
    """
    for s, t in pairs:
        if len(s) != n or len(t) != n:
            raise DimensionMismatch(f"pair ({s}, {t}) not in dimension {n}")
    forced = forced_linear_map(pairs, f)
    if forced is None:
        return None
    basis, images = forced
    if basis and rank(images, f) != len(basis):
        return None
    src_piv = rref(basis, f)[1] if basis else []
    img_piv = rref(images, f)[1] if images else []
    src_cols = list(basis) + [unit_vector(c, n) for c in _complement_columns(src_piv, n)]
    img_cols = list(images) + [unit_vector(c, n) for c in _complement_columns(img_piv, n)]
    b = from_columns(src_cols)
    c = from_columns(img_cols)
    return matmul(c, inverse(b, f), f)
