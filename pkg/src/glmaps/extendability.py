"""Which finite subsets of V, or of P(V), have every permutation extendable
to GL(V), resp. PGL(V).

Two routes are provided and are expected to agree:

* structural classifiers (:func:`classify_linear_subset`,
  :func:`classify_projective_subset`) that only test the shape of the set;
* constructive extension of each transposition
  (:func:`fully_extendable_linear`, :func:`fully_extendable_projective`).
  Transpositions generate the symmetric group and extensions compose, so
  this decides full extendability.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

from glmaps.gf_core import Field
from glmaps.linalg import (
    Matrix,
    Vector,
    extend_to_automorphism,
    is_independent,
    rank,
    rref,
    vec_add,
    vec_scale,
    vec_sub,
)
from glmaps.projective import ProjPoint, ProjectiveSpace, normalize

INDEPENDENT = "independent"
NEG_SUM = "independent_plus_neg_sum"
SIMPLEX = "simplex"
HARMONIC = "harmonic"
NOT_FULLY_EXTENDABLE = "not_fully_extendable"


@dataclass(frozen=True)
class SubsetClass:
    """Outcome of a classifier; ``m`` is set for the neg-sum and simplex shapes."""

    kind: str
    m: int | None = None

    @property
    def fully_extendable(self) -> bool:
        return self.kind != NOT_FULLY_EXTENDABLE

    def __str__(self) -> str:
        return self.kind if self.m is None else f"{self.kind}({self.m})"


def transpositions(k: int) -> list[tuple[int, ...]]:
    """Every transposition of ``range(k)`` as an image list."""
    out = []
    for i, j in itertools.combinations(range(k), 2):
        perm = list(range(k))
        perm[i], perm[j] = j, i
        out.append(tuple(perm))
    return out


# -- linear side ---------------------------------------------------------------


def extend_permutation_linear(xs: Sequence[Vector], perm: Sequence[int], f: Field) -> Matrix | None:
    """A ``u`` in GL(V) with ``u(xs[i]) = xs[perm[i]]`` for all i, or None."""
    n = len(xs[0])
    # Pivot rows of the forced map come from a lexicographic greedy basis.
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    pairs = [(xs[i], xs[perm[i]]) for i in order]
    return extend_to_automorphism(pairs, n, f)


def fully_extendable_linear(xs: Sequence[Vector], f: Field) -> bool:
    return failing_transposition_linear(xs, f) is None


def failing_transposition_linear(xs: Sequence[Vector], f: Field) -> tuple[int, int] | None:
    """First pair (i, j) whose transposition has no linear extension."""
    for i, j in itertools.combinations(range(len(xs)), 2):
        perm = list(range(len(xs)))
        perm[i], perm[j] = j, i
        if extend_permutation_linear(xs, perm, f) is None:
            return (i, j)
    return None


def classify_linear_subset(xs: Sequence[Vector], f: Field) -> SubsetClass:
    """Independent, ``{x1..xm, -(x1+...+xm)}`` with independent x's, or neither."""
    xs = [tuple(x) for x in xs]
    if any(not any(x) for x in xs):
        return SubsetClass(NOT_FULLY_EXTENDABLE)
    if is_independent(xs, f):
        return SubsetClass(INDEPENDENT)
    m = len(xs) - 1
    for p in range(len(xs)):
        rest = xs[:p] + xs[p + 1 :]
        if not is_independent(rest, f):
            continue
        total = rest[0]
        for x in rest[1:]:
            total = vec_add(total, x, f)
        if vec_sub((0,) * len(total), total, f) == xs[p]:
            return SubsetClass(NEG_SUM, m)
    return SubsetClass(NOT_FULLY_EXTENDABLE)


# -- projective side -----------------------------------------------------------


def _coords_in(basis: Sequence[Vector], v: Vector, f: Field) -> list[int] | None:
    """Coordinates of ``v`` in the (independent) ``basis``, or None."""
    k = len(basis)
    cols = [list(b) + [v_i] for b, v_i in zip(zip(*basis), v)]
    # cols has one row per coordinate: [b1_c, ..., bk_c, v_c]
    red, piv = rref(cols, f)
    if piv and piv[-1] >= k:
        return None
    coeffs = [0] * k
    for row, c in zip(red, piv):
        coeffs[c] = row[k]
    return coeffs


def extend_projective_pairs(pairs: Sequence[tuple[Vector, Vector]], n: int, f: Field) -> Matrix | None:
    """A GL representative ``u`` with ``<u(s)> = <t>`` for every pair of points.

    Points are given by (any) representatives and may repeat; a source point
    sent to two different targets makes the answer None.  The images of a
    greedy maximal independent subset of sources are fixed up to non-zero
    scalars; the first scalar is 1 (homotheties are the kernel of GL -> PGL)
    and the rest are found by backtracking over the remaining points.
    """
    mapping: dict[ProjPoint, ProjPoint] = {}
    for s, t in pairs:
        ps, pt = normalize(s, f), normalize(t, f)
        if mapping.setdefault(ps, pt) != pt:
            return None
    sources = list(mapping)
    basis: list[Vector] = []
    dependent: list[Vector] = []
    for s in sources:
        if is_independent(basis + [s], f):
            basis.append(s)
        else:
            dependent.append(s)
    targets = [mapping[b] for b in basis]
    if not is_independent(targets, f):
        return None
    m = len(basis)
    # Each dependent point constrains the scalars it involves; check it as soon
    # as the last of those is assigned.
    checks: list[list[tuple[list[int], ProjPoint]]] = [[] for _ in range(m)]
    for d in dependent:
        coeffs = _coords_in(basis, d, f)
        last = max(i for i, a in enumerate(coeffs) if a)
        checks[last].append((coeffs, mapping[d]))

    lambdas = [1] * m

    def consistent(depth: int) -> bool:
        for coeffs, want in checks[depth]:
            w = (0,) * n
            for i in range(depth + 1):
                if coeffs[i]:
                    w = vec_add(w, vec_scale(f.mul(coeffs[i], lambdas[i]), targets[i], f), f)
            if not any(w) or normalize(w, f) != want:
                return False
        return True

    def search(depth: int) -> bool:
        if depth == m:
            return True
        choices = [1] if depth == 0 else range(1, f.q)
        for lam in choices:
            lambdas[depth] = lam
            if consistent(depth) and search(depth + 1):
                return True
        return False

    if not search(0):
        return None
    vec_pairs = [(b, vec_scale(lam, t, f)) for b, lam, t in zip(basis, lambdas, targets)]
    return extend_to_automorphism(vec_pairs, n, f)


def extend_permutation_projective(points: Sequence[ProjPoint], perm: Sequence[int], f: Field) -> Matrix | None:
    """A GL representative inducing ``points[i] -> points[perm[i]]``, or None."""
    n = len(points[0])
    return extend_projective_pairs([(points[i], points[perm[i]]) for i in range(len(points))], n, f)


def failing_transposition_projective(points: Sequence[ProjPoint], f: Field) -> tuple[int, int] | None:
    for i, j in itertools.combinations(range(len(points)), 2):
        perm = list(range(len(points)))
        perm[i], perm[j] = j, i
        if extend_permutation_projective(points, perm, f) is None:
            return (i, j)
    return None


def fully_extendable_projective(points: Sequence[ProjPoint], f: Field) -> bool:
    return failing_transposition_projective(points, f) is None


def is_harmonic(points: Sequence[ProjPoint], f: Field) -> bool:
    """True iff the points are ``<x>, <y>, <x+y>, <x-y>`` for independent x, y."""
    pts = {normalize(p, f) for p in points}
    if len(pts) != 4 or len(points) != 4 or rank(list(pts), f) != 2:
        return False
    for a, b in itertools.permutations(pts, 2):
        if _harmonic_from(a, b, f) and any(_harmonic_from(a, b, f, lam) == pts for lam in f.nonzero):
            return True
    return False


def _harmonic_from(x: Vector, y0: Vector, f: Field, lam: int = 1) -> set[ProjPoint] | None:
    y = vec_scale(lam, y0, f)
    quad = {normalize(x, f), normalize(y, f), normalize(vec_add(x, y, f), f), normalize(vec_sub(x, y, f), f)}
    return quad if len(quad) == 4 else None


def classify_projective_subset(points: Sequence[ProjPoint], f: Field) -> SubsetClass:
    """Independent, m-simplex (m >= 2), harmonic (characteristic 3 only), or neither."""
    pts = [normalize(p, f) for p in points]
    k = len(pts)
    if is_independent(pts, f):
        return SubsetClass(INDEPENDENT)
    m = k - 1
    if m >= 2 and all(is_independent(list(c), f) for c in itertools.combinations(pts, m)):
        return SubsetClass(SIMPLEX, m)
    if f.p == 3 and is_harmonic(pts, f):
        return SubsetClass(HARMONIC)
    return SubsetClass(NOT_FULLY_EXTENDABLE)


def harmonic_subsets(space: ProjectiveSpace) -> list[frozenset[int]]:
    """Every harmonic subset of the space as a set of point indices."""
    f = space.field
    found: dict[frozenset[int], None] = {}
    for i, j in itertools.combinations(range(len(space)), 2):
        x, y = space.points[i], space.points[j]
        for lam in f.nonzero:
            quad = _harmonic_from(x, y, f, lam)
            if quad is not None:
                found.setdefault(frozenset(space.index[p] for p in quad), None)
    return list(found)
