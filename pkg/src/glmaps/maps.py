"""Arbitrary maps V -> V' and P(V) -> P(V') as dense tables."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from glmaps.errors import DimensionMismatch
from glmaps.gf_core import Field
from glmaps.linalg import Subspace, Vector, VectorSpace, span, vector_space
from glmaps.projective import ProjectiveSpace, normalize, proj_points


@dataclass(frozen=True)
class MappingTable:
    """A function ``f^n -> f'^n'`` stored as one codomain vector per domain code."""

    domain_field: Field
    n: int
    codomain_field: Field
    n_prime: int
    table: tuple[Vector, ...]
    _codes: list[int] | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.table) != self.domain_field.q**self.n:
            raise DimensionMismatch(f"table has {len(self.table)} entries, expected {self.domain_field.q ** self.n}")
        q2 = self.codomain_field.q
        for v in self.table:
            if len(v) != self.n_prime or any(not 0 <= a < q2 for a in v):
                raise DimensionMismatch(f"entry {v} is not a vector of {self.codomain_field}^{self.n_prime}")

    @classmethod
    def from_function(cls, dom: VectorSpace, cod: VectorSpace, fn: Callable[[Vector], Sequence[int]]) -> MappingTable:
        return cls(dom.field, dom.n, cod.field, cod.n, tuple(tuple(fn(x)) for x in dom.vectors))

    @classmethod
    def from_codes(cls, dom: VectorSpace, cod: VectorSpace, codes: Sequence[int]) -> MappingTable:
        return cls(dom.field, dom.n, cod.field, cod.n, tuple(cod.vectors[c] for c in codes))

    @property
    def domain(self) -> VectorSpace:
        return vector_space(self.domain_field, self.n)

    @property
    def codomain(self) -> VectorSpace:
        return vector_space(self.codomain_field, self.n_prime)

    @property
    def codes(self) -> list[int]:
        if self._codes is None:
            cod = self.codomain
            object.__setattr__(self, "_codes", [cod.encode(v) for v in self.table])
        return self._codes

    def __call__(self, x: Sequence[int]) -> Vector:
        return self.table[self.domain.encode(x)]

    def image_span(self, xs: Sequence[Vector] | None = None) -> Subspace:
        """``S_g``: span of the images of ``xs`` (all of V by default, giving ``V_g``)."""
        vals = self.table if xs is None else [self(x) for x in xs]
        return span(list(vals), self.codomain_field, self.n_prime)

    @property
    def is_trivial(self) -> bool:
        """Constant on the non-zero vectors."""
        return len(set(self.table[1:])) <= 1


@dataclass(frozen=True)
class PointMap:
    """A function ``P(V) -> P(V')`` as codomain point indices in canonical domain order."""

    domain: ProjectiveSpace
    codomain: ProjectiveSpace
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != len(self.domain):
            raise DimensionMismatch(f"point map has {len(self.table)} entries, expected {len(self.domain)}")
        if any(not 0 <= i < len(self.codomain) for i in self.table):
            raise DimensionMismatch("point index out of range")

    def image_rep(self, i: int) -> Vector:
        return self.codomain.points[self.table[i]]

    def image_span(self, idx: Sequence[int] | None = None) -> Subspace:
        """``S_f`` for the points ``idx`` (all points by default, giving ``V_f``)."""
        idx = range(len(self.table)) if idx is None else idx
        return span([self.image_rep(i) for i in idx], self.codomain.field, self.codomain.n)

    @property
    def is_constant(self) -> bool:
        return len(set(self.table)) <= 1

    def __call__(self, point: Sequence[int]) -> Vector:
        idx = self.domain.index[normalize(point, self.domain.field)]
        return self.image_rep(idx)


def point_map_from_function(
    dom: ProjectiveSpace, cod: ProjectiveSpace, fn: Callable[[Vector], Sequence[int]]
) -> PointMap:
    """Build a point map from a function on representatives (normalized on the way)."""
    return PointMap(dom, cod, tuple(cod.point_of(fn(p)) for p in dom.points))


def projective_space(f: Field, n: int) -> ProjectiveSpace:
    return proj_points(f, n)
