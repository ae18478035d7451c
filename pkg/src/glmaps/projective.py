"""Projective spaces P(V) over GF(q), their lines and the PGL action.

A point is stored as its normalized representative: the vector whose
leftmost non-zero coordinate is 1.  Points of a space are listed in a fixed
canonical order (by position of that leading 1, then lexicographically), and
a point map is just a list of indices into that order.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from functools import cache

from glmaps.errors import DimensionMismatch, EqualPoints, Singular, ZeroVector
from glmaps.gf_core import Field
from glmaps.linalg import (
    GL_GUARD,
    Matrix,
    Vector,
    enumerate_gl,
    gl_order,
    is_invertible,
    matvec,
    span,
    vec_scale,
)

ProjPoint = tuple[int, ...]


def normalize(v: Sequence[int], f: Field) -> ProjPoint:
    """Scale ``v`` so its leftmost non-zero coordinate is 1."""
    for a in v:
        if a:
            return vec_scale(f.inv(a), tuple(v), f)
    raise ZeroVector("the zero vector spans no point")


def _lead(p: ProjPoint) -> int:
    return next(i for i, a in enumerate(p) if a)


class ProjectiveSpace:
    """P(f^n): all normalized points in canonical order, plus the lines."""

    def __init__(self, f: Field, n: int):
        if n < 1:
            raise DimensionMismatch("projective space needs n >= 1")
        self.field = f
        self.n = n
        pts = [v for v in itertools.product(range(f.q), repeat=n) if any(v) and v[_lead(v)] == 1]
        pts.sort(key=lambda p: (_lead(p), p))
        self.points: tuple[ProjPoint, ...] = tuple(pts)
        self.index: dict[ProjPoint, int] = {p: i for i, p in enumerate(pts)}
        self._lines: list[frozenset[int]] | None = None

    def __len__(self) -> int:
        return len(self.points)

    def point_of(self, v: Sequence[int]) -> int:
        """Index of the point spanned by non-zero ``v``."""
        return self.index[normalize(v, self.field)]

    @property
    def lines(self) -> list[frozenset[int]]:
        """Every line as a frozenset of point indices, in order of first appearance."""
        if self._lines is None:
            seen: dict[frozenset[int], None] = {}
            for i, j in itertools.combinations(range(len(self.points)), 2):
                line = frozenset(self.index[p] for p in line_through(self.points[i], self.points[j], self.field))
                seen.setdefault(line, None)
            self._lines = list(seen)
        return self._lines

    @property
    def spec(self) -> str:
        return f"P({self.field.spec}^{self.n})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProjectiveSpace) and (self.field, self.n) == (other.field, other.n)

    def __hash__(self) -> int:
        return hash((self.field, self.n))

    def __repr__(self) -> str:
        return self.spec


@cache
def proj_points(f: Field, n: int) -> ProjectiveSpace:
    """The projective space of ``f^n`` (``(q^n - 1)/(q - 1)`` points)."""
    return ProjectiveSpace(f, n)


def pgl_action(u: Matrix, p: ProjPoint, f: Field) -> ProjPoint:
    if len(u[0]) != len(p):
        raise DimensionMismatch("matrix and point dimensions differ")
    if not is_invertible(u, f):
        raise Singular("PGL acts through invertible matrices only")
    return normalize(matvec(u, p, f), f)


def point_permutation(u: Matrix, space: ProjectiveSpace) -> tuple[int, ...]:
    """The permutation of point indices induced by invertible ``u`` (unchecked)."""
    f = space.field
    return tuple(space.index[normalize(matvec(u, p, f), f)] for p in space.points)


def line_through(p: ProjPoint, q: ProjPoint, f: Field) -> list[ProjPoint]:
    """The q+1 points of the line joining distinct points ``p`` and ``q``."""
    if normalize(p, f) == normalize(q, f):
        raise EqualPoints("a line needs two distinct points")
    plane = span([p, q], f)
    pts = {normalize(v, f) for v in plane.vectors() if any(v)}
    return sorted(pts, key=lambda x: (_lead(x), x))


def is_pgl_representative(m: Matrix) -> bool:
    """True iff the first non-zero entry in reading order is 1."""
    for row in m:
        for a in row:
            if a:
                return a == 1
    return False


def enumerate_pgl(f: Field, n: int, guard: int = GL_GUARD) -> Iterator[Matrix]:
    """One normalized GL representative per element of PGL(n, q)."""
    for m in enumerate_gl(n, f, guard):
        if is_pgl_representative(m):
            yield m


def pgl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def proj_span_dim(points: Sequence[Vector], f: Field, n: int) -> int:
    """Dimension of the subspace spanned by the given point representatives."""
    return span(list(points), f, n).dim
