"""Semilinear maps ``l(x) = M sigma(x)`` and the projective maps they induce."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from glmaps.errors import DimensionMismatch, NotInjective, TooLarge
from glmaps.gf_core import FieldHom
from glmaps.linalg import Matrix, Vector, VectorSpace, is_independent, matvec, mat_scale, rank, transpose, vector_space
from glmaps.maps import MappingTable, PointMap
from glmaps.projective import proj_points

K_SUBSET_GUARD = 2_000_000


@dataclass(frozen=True)
class SemilinearMap:
    """``l(x) = matrix @ sigma(x)`` from ``sigma.source^n`` to ``sigma.target^n'``.

    Column ``j`` of ``matrix`` is ``l(e_j)``; ``sigma`` is applied to the
    coordinates of ``x`` before multiplying.
    """

    sigma: FieldHom
    matrix: Matrix

    def __post_init__(self):
        rows = len(self.matrix)
        if rows == 0 or any(len(r) != len(self.matrix[0]) for r in self.matrix):
            raise DimensionMismatch("matrix must be rectangular and non-empty")
        q2 = self.sigma.target.q
        if any(not 0 <= a < q2 for r in self.matrix for a in r):
            raise DimensionMismatch("matrix entries must lie in the target field")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in self.matrix))

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    @property
    def n_prime(self) -> int:
        return len(self.matrix)

    @property
    def domain(self) -> VectorSpace:
        return vector_space(self.sigma.source, self.n)

    @property
    def codomain(self) -> VectorSpace:
        return vector_space(self.sigma.target, self.n_prime)

    def __call__(self, x: Vector) -> Vector:
        return apply(self, x)

    def scaled(self, a: int) -> SemilinearMap:
        """``a * l``; over a commutative field it stays ``sigma``-linear."""
        return SemilinearMap(self.sigma, mat_scale(a, self.matrix, self.sigma.target))

    def as_table(self) -> MappingTable:
        return MappingTable.from_function(self.domain, self.codomain, self)

    def to_json(self) -> dict:
        return {"sigma": self.sigma.to_json(), "matrix": [list(r) for r in self.matrix]}


def apply(l: SemilinearMap, x: Vector) -> Vector:
    if len(x) != l.n:
        raise DimensionMismatch(f"vector of length {len(x)} given to a map from dimension {l.n}")
    return matvec(l.matrix, tuple(l.sigma(a) for a in x), l.sigma.target)


def is_injective(l: SemilinearMap) -> bool:
    """Exhaustive: no two domain vectors share an image."""
    images = [apply(l, x) for x in l.domain.vectors]
    return len(set(images)) == len(images)


def _independent_k_subsets(l: SemilinearMap, k: int):
    vecs = l.domain.vectors[1:]
    total = math.comb(len(vecs), k)
    if total > K_SUBSET_GUARD:
        raise TooLarge(f"{total} {k}-subsets exceed guard {K_SUBSET_GUARD}")
    f = l.sigma.source
    for combo in itertools.combinations(vecs, k):
        if is_independent(list(combo), f):
            yield combo


def is_k_embedding(l: SemilinearMap, k: int, exhaustive: bool = False) -> bool:
    """Injective and sends every k independent vectors to independent vectors.

    A full-column-rank matrix settles the question at once (sigma is injective
    on the whole field, so coordinates stay independent); otherwise, or with
    ``exhaustive=True``, every independent k-subset is checked.
    """
    if not 1 <= k <= l.n:
        raise ValueError(f"k must lie in 1..{l.n}")
    if not is_injective(l):
        return False
    tgt = l.sigma.target
    if not exhaustive and rank(transpose(l.matrix), tgt) == l.n:
        return True
    return all(is_independent([apply(l, x) for x in combo], tgt) for combo in _independent_k_subsets(l, k))


def is_strong_embedding(l: SemilinearMap, exhaustive: bool = False) -> bool:
    return is_k_embedding(l, l.n, exhaustive=exhaustive)


def induced_projective(l: SemilinearMap) -> PointMap:
    """``pi(l)``: the point map ``<x> -> <l(x)>``."""
    if not is_injective(l):
        raise NotInjective("pi(l) needs a semilinear injection")
    dom = proj_points(l.sigma.source, l.n)
    cod = proj_points(l.sigma.target, l.n_prime)
    return PointMap(dom, cod, tuple(cod.point_of(apply(l, p)) for p in dom.points))


def scalar_multiple_of(g: MappingTable, l: SemilinearMap) -> int | None:
    """The non-zero ``a`` with ``g(x) = a l(x)`` for all x, or None."""
    f = l.sigma.target
    if (g.domain_field, g.n, g.codomain_field, g.n_prime) != (l.sigma.source, l.n, f, l.n_prime):
        return None
    if any(g.table[0]):
        return None
    a = None
    for x, gx in zip(g.domain.vectors[1:], g.table[1:]):
        lx = apply(l, x)
        if not any(lx):
            if any(gx):
                return None
            continue
        if a is None:
            i = next(i for i, c in enumerate(lx) if c)
            a = f.div(gx[i], lx[i])
            if a == 0:
                return None
        if tuple(f.mul(a, c) for c in lx) != gx:
            return None
    return a
