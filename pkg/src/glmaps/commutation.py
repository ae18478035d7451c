"""Deciding the GL and PGL commutation conditions for arbitrary maps.

``g: V -> V'`` is a GL-mapping when every ``u`` in GL(V) admits ``u'`` in
GL(V') with ``g u = u' g``.  Such a ``u'`` exists iff ``g(x) -> g(u x)`` is the
restriction of a linear map: that forced map sends V_g onto span(g(u V)) =
V_g, so it is automatically bijective there and extends to all of V' on a
complement.  Because the forced maps compose, checking a generating set of
GL(V) suffices; exhaustive mode runs the whole group as a cross-check.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from glmaps.errors import DimensionMismatch, YInImage
from glmaps.extendability import _coords_in, extend_projective_pairs
from glmaps.gf_core import Field, enumerate_homs
from glmaps.linalg import (
    Matrix,
    Vector,
    enumerate_gl,
    extend_to_automorphism,
    forced_linear_map,
    from_columns,
    gl_generators,
    is_independent,
    matmul,
    matvec,
    rank,
    unit_vector,
    vector_space,
)
from glmaps.maps import MappingTable, PointMap
from glmaps.projective import ProjectiveSpace, enumerate_pgl, point_permutation, proj_points
from glmaps.reconstruct import ReconstructionError, reconstruct_semilinear
from glmaps.semilinear import SemilinearMap, is_strong_embedding, scalar_multiple_of

GENERATORS = "generators"
EXHAUSTIVE = "exhaustive"


@dataclass
class EmbeddingVerdict:
    """Whether ``g = scalar * semilinear`` with ``semilinear`` a strong embedding."""

    is_strong: bool
    route: str
    scalar: int | None = None
    semilinear: SemilinearMap | None = None
    failure: dict | None = None

    def to_json(self) -> dict:
        return {
            "is_strong": self.is_strong,
            "route": self.route,
            "scalar": self.scalar,
            "semilinear": self.semilinear.to_json() if self.semilinear else None,
            "failure": self.failure,
        }


@dataclass
class GLMappingReport:
    is_gl_mapping: bool
    trivial: bool
    dim_Vg: int
    n: int
    mode: str
    checked: int
    witness_failure: Matrix | None = None
    strong_embedding: EmbeddingVerdict | None = None

    def to_json(self) -> dict:
        return {
            "is_gl_mapping": self.is_gl_mapping,
            "trivial": self.trivial,
            "dim_Vg": self.dim_Vg,
            "n": self.n,
            "mode": self.mode,
            "checked": self.checked,
            "witness_failure": [list(r) for r in self.witness_failure] if self.witness_failure else None,
            "strong_embedding": self.strong_embedding.to_json() if self.strong_embedding else None,
        }


@dataclass
class PGLMappingReport:
    is_pgl_mapping: bool
    constant: bool
    dim_Vf: int
    n: int
    mode: str
    checked: int
    witness_failure: Matrix | None = None
    induced_by_embedding: EmbeddingVerdict | None = None

    def to_json(self) -> dict:
        return {
            "is_pgl_mapping": self.is_pgl_mapping,
            "constant": self.constant,
            "dim_Vf": self.dim_Vf,
            "n": self.n,
            "mode": self.mode,
            "checked": self.checked,
            "witness_failure": [list(r) for r in self.witness_failure] if self.witness_failure else None,
            "induced_by_embedding": self.induced_by_embedding.to_json() if self.induced_by_embedding else None,
        }


class LinearConsistency:
    """Coordinates of every ``g(x)`` in a basis of V_g drawn from g(V).

    ``forced_ok(perm)`` then decides in one pass whether ``g(x) -> g(perm[x])``
    is the restriction of a linear map: the candidate map is tabulated on all
    coordinate tuples and compared against every pair.
    """

    def __init__(self, g: MappingTable):
        f = g.codomain_field
        q = f.q
        self.codes = g.codes
        self.space = g.codomain
        basis_idx: list[int] = []
        basis_vecs: list[Vector] = []
        for x, v in enumerate(g.table):
            if any(v) and is_independent(basis_vecs + [v], f):
                basis_idx.append(x)
                basis_vecs.append(v)
        self.basis_idx = basis_idx
        self.coeff_codes = []
        for v in g.table:
            coeffs = _coords_in(basis_vecs, v, f) if basis_vecs else []
            code = 0
            for a in coeffs:
                code = code * q + a
            self.coeff_codes.append(code)

    def forced_ok(self, perm: Sequence[int]) -> bool:
        codes = self.codes
        table = self.space.span_table([codes[perm[b]] for b in self.basis_idx])
        return all(table[c] == codes[p] for c, p in zip(self.coeff_codes, perm))


def _group(n: int, f: Field, mode: str) -> Iterable[Matrix]:
    if mode == GENERATORS:
        return gl_generators(n, f)
    if mode == EXHAUSTIVE:
        return enumerate_gl(n, f)
    raise ValueError(f"unknown mode {mode!r}")


def check_gl_mapping(g: MappingTable, mode: str = GENERATORS, verdict: bool = True) -> GLMappingReport:
    """Decide whether ``g`` is a GL-mapping.

    With ``verdict`` set, a non-trivial GL-mapping with ``dim V_g <= n`` also
    gets an :class:`EmbeddingVerdict`.
    """
    dom = g.domain
    dim = g.image_span().dim
    trivial = g.is_trivial
    solver = LinearConsistency(g)
    checked = 0
    witness = None
    for u in _group(g.n, g.domain_field, mode):
        checked += 1
        if not solver.forced_ok(dom.images(u)):
            witness = u
            break
    report = GLMappingReport(witness is None, trivial, dim, g.n, mode, checked, witness)
    if verdict and report.is_gl_mapping and not trivial and dim <= g.n:
        report.strong_embedding = embedding_verdict(g)
    return report


def u_prime(g: MappingTable, u: Matrix) -> Matrix | None:
    """Some ``u'`` in GL(V') with ``g u = u' g``, or None."""
    images = g.domain.images(u)
    pairs = [(g.table[x], g.table[images[x]]) for x in range(len(g.table))]
    return extend_to_automorphism(pairs, g.n_prime, g.codomain_field)


def induced_automorphism(g: MappingTable, u: Matrix) -> Matrix | None:
    """Matrix of ``u-bar`` on V_g in the canonical basis of V_g, or None.

    Column ``j`` holds the V_g-coordinates of ``u-bar(b_j)``.
    """
    images = g.domain.images(u)
    pairs = [(g.table[x], g.table[images[x]]) for x in range(len(g.table))]
    forced = forced_linear_map(pairs, g.codomain_field)
    if forced is None:
        return None
    basis, imgs = forced
    vg = g.image_span()
    cols = []
    for b, t in zip(basis, imgs):
        c = vg.coords(t)
        if c is None:
            return None
        cols.append(c)
    if not cols:
        return ()
    m = from_columns(cols)
    if rank(m, g.codomain_field) != vg.dim:
        return None
    return m


def induced_hom_is_homomorphism(g: MappingTable, pairs: Iterable[tuple[Matrix, Matrix]]) -> bool:
    """``bar(uv) == bar(u) bar(v)`` for every given pair."""
    f, dom_f = g.codomain_field, g.domain_field
    for u, v in pairs:
        uv = induced_automorphism(g, matmul(u, v, dom_f))
        ub, vb = induced_automorphism(g, u), induced_automorphism(g, v)
        if uv is None or ub is None or vb is None:
            return False
        if uv != matmul(ub, vb, f):
            return False
    return True


def embedding_verdict(g: MappingTable) -> EmbeddingVerdict:
    """Recover ``g = a l`` with ``l`` semilinear.

    For ``n >= 3`` this goes through the induced point map and
    :func:`reconstruct_semilinear`; for smaller ``n`` every homomorphism
    ``sigma`` is tried with ``l(e_j) = g(e_j)``.
    """
    if g.n >= 3:
        return _verdict_via_points(g)
    return _verdict_direct(g)


def _verdict_direct(g: MappingTable) -> EmbeddingVerdict:
    cols = [g(unit_vector(j, g.n)) for j in range(g.n)]
    for sigma in enumerate_homs(g.domain_field, g.codomain_field):
        l = SemilinearMap(sigma, from_columns(cols))
        if l.as_table().table == g.table:
            return EmbeddingVerdict(is_strong_embedding(l), "direct", 1, l)
    return EmbeddingVerdict(False, "direct", failure={"kind": "no_homomorphism_fits"})


def point_map_of(g: MappingTable) -> PointMap | None:
    """``<x> -> <g(x)>`` when g is non-zero on V minus 0 and respects scalar classes."""
    dom = proj_points(g.domain_field, g.n)
    cod = proj_points(g.codomain_field, g.n_prime)
    F = g.domain_field
    table = []
    for p in dom.points:
        idx = None
        for a in F.nonzero:
            v = g(tuple(F.mul(a, c) for c in p))
            if not any(v):
                return None
            j = cod.point_of(v)
            if idx is None:
                idx = j
            elif j != idx:
                return None
        table.append(idx)
    return PointMap(dom, cod, tuple(table))


def _verdict_via_points(g: MappingTable) -> EmbeddingVerdict:
    f = point_map_of(g)
    if f is None:
        return EmbeddingVerdict(False, "ftpg", failure={"kind": "no_point_map"})
    try:
        l = reconstruct_semilinear(f)
    except ReconstructionError as exc:
        return EmbeddingVerdict(False, "ftpg", failure=exc.certificate())
    a = scalar_multiple_of(g, l)
    if a is None:
        return EmbeddingVerdict(False, "ftpg", semilinear=l, failure={"kind": "not_a_scalar_multiple"})
    return EmbeddingVerdict(is_strong_embedding(l), "ftpg", a, l)


# -- projective side ---------------------------------------------------------------


def _pgl_group(n: int, f: Field, mode: str) -> Iterable[Matrix]:
    if mode == GENERATORS:
        return gl_generators(n, f)
    if mode == EXHAUSTIVE:
        return enumerate_pgl(f, n)
    raise ValueError(f"unknown mode {mode!r}")


def pgl_step_ok(f: PointMap, perm: Sequence[int]) -> Matrix | None:
    """Some ``h'`` with ``f h = h' f`` where ``h`` permutes points by ``perm``."""
    reps = f.codomain.points
    pairs = [(reps[f.table[i]], reps[f.table[perm[i]]]) for i in range(len(perm))]
    return extend_projective_pairs(pairs, f.codomain.n, f.codomain.field)


def check_pgl_mapping(f: PointMap, mode: str = GENERATORS, verdict: bool = True) -> PGLMappingReport:
    """Decide whether ``f`` is a PGL-mapping; reconstruct it when the dimension allows."""
    dom = f.domain
    dim = f.image_span().dim
    constant = f.is_constant
    checked = 0
    witness = None
    for h in _pgl_group(dom.n, dom.field, mode):
        checked += 1
        if pgl_step_ok(f, point_permutation(h, dom)) is None:
            witness = h
            break
    report = PGLMappingReport(witness is None, constant, dim, dom.n, mode, checked, witness)
    if verdict and report.is_pgl_mapping and not constant and dim <= dom.n and dom.n >= 3:
        try:
            l = reconstruct_semilinear(f)
            report.induced_by_embedding = EmbeddingVerdict(is_strong_embedding(l), "ftpg", 1, l)
        except ReconstructionError as exc:
            report.induced_by_embedding = EmbeddingVerdict(False, "ftpg", failure=exc.certificate())
    return report


def induced_projectivity(f: PointMap, h: Matrix) -> tuple[int, ...] | None:
    """``h-bar`` as a permutation of the points of P(V_f), listed by codomain index."""
    hp = pgl_step_ok(f, point_permutation(h, f.domain))
    if hp is None:
        return None
    vf = f.image_span()
    cod = f.codomain
    pts = sorted({cod.point_of(v) for v in vf.vectors() if any(v)})
    return tuple(cod.point_of(matvec(hp, cod.points[i], cod.field)) for i in pts)


# -- constructions of GL- and PGL-mappings ----------------------------------------


def vector_plus_constant(l: SemilinearMap, y: Vector) -> MappingTable:
    """``g = l`` off the origin and ``g(0) = y`` for ``y`` outside V_l."""
    y = tuple(y)
    tab = l.as_table()
    if tab.image_span().contains(y):
        raise YInImage(f"{y} lies in the image span of l")
    return MappingTable(tab.domain_field, tab.n, tab.codomain_field, tab.n_prime, (y,) + tab.table[1:])


def vector_indicator(domain_field: Field, n: int, codomain_field: Field, n_prime: int) -> MappingTable:
    """The bijection sending the vector with code ``i`` to ``e_i`` of a |V|-dimensional V'."""
    size = domain_field.q**n
    if n_prime != size:
        raise DimensionMismatch(f"codomain dimension must be |V| = {size}, got {n_prime}")
    return MappingTable(domain_field, n, codomain_field, n_prime, tuple(unit_vector(i, n_prime) for i in range(size)))


def point_indicator(domain: ProjectiveSpace, codomain_field: Field, n_prime: int) -> PointMap:
    """Point ``i`` of P(V) goes to ``<e_i>`` in P(V')."""
    m = len(domain)
    if n_prime < m:
        raise DimensionMismatch(f"codomain dimension must be at least |P(V)| = {m}, got {n_prime}")
    cod = proj_points(codomain_field, n_prime)
    return PointMap(domain, cod, tuple(cod.point_of(unit_vector(i, n_prime)) for i in range(m)))


def constant_point_map(domain: ProjectiveSpace, codomain: ProjectiveSpace, target: int = 0) -> PointMap:
    return PointMap(domain, codomain, (target,) * len(domain))


def semilinear_table(l: SemilinearMap) -> MappingTable:
    return l.as_table()


def vector_table(domain_field: Field, n: int, codomain_field: Field, n_prime: int, codes: Sequence[int]) -> MappingTable:
    return MappingTable.from_codes(vector_space(domain_field, n), vector_space(codomain_field, n_prime), codes)


def all_pairs(items: Sequence) -> Iterable[tuple]:
    return itertools.product(items, repeat=2)
