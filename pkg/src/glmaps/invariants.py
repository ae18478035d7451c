"""Structural consequences of the GL/PGL conditions, checked on concrete maps.

Each checker returns a list of violations (empty means the property holds),
so sweeps can report counts and witnesses.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable

from glmaps.commutation import induced_automorphism, induced_projectivity
from glmaps.linalg import Matrix, all_subspaces, gl_generators, is_independent, matvec, rank
from glmaps.maps import MappingTable, PointMap
from glmaps.projective import ProjectiveSpace


def independent_pairs_separated(g: MappingTable) -> list:
    """Independent x, y must have g(x) != g(y)."""
    f = g.domain_field
    out = []
    vecs = g.domain.vectors[1:]
    for x, y in itertools.combinations(vecs, 2):
        if g(x) == g(y) and is_independent([x, y], f):
            out.append((x, y))
    return out


def fixed_vectors_stay_fixed(g: MappingTable, gens: Iterable[Matrix] | None = None) -> list:
    """For each ``u``: u-bar fixes the images of the vectors fixed by u.

    u-bar is applied through its matrix in V_g coordinates, so this checks the
    computed induced automorphism rather than the table alone.
    """
    f = g.domain_field
    vg = g.image_span()
    out = []
    for u in gens if gens is not None else gl_generators(g.n, f):
        ubar = induced_automorphism(g, u)
        if ubar is None:
            out.append(("no_induced_automorphism", u))
            continue
        for x in g.domain.vectors:
            if matvec(u, x, f) != x:
                continue
            c = vg.coords(g(x))
            if c is None or (vg.dim and matvec(ubar, c, g.codomain_field) != c):
                out.append((u, x))
    return out


def preserves_independence(g: MappingTable, k: int | None = None) -> list:
    """g(x) != 0 off the origin, and k independent vectors (default n-1) stay independent."""
    f, fp = g.domain_field, g.codomain_field
    k = g.n - 1 if k is None else k
    out = [("zero_image", x) for x in g.domain.vectors[1:] if not any(g(x))]
    if k < 1:
        return out
    for combo in itertools.combinations(g.domain.vectors[1:], k):
        if is_independent(list(combo), f) and not is_independent([g(x) for x in combo], fp):
            out.append(combo)
    return out


def subspace_dimensions_preserved(g: MappingTable) -> list:
    """dim S_g == dim S for every subspace S (so in particular dim V_g == n)."""
    out = []
    for s in all_subspaces(g.domain_field, g.n):
        if s.dim == 0:
            continue
        img = rank([g(v) for v in s.vectors()], g.codomain_field)
        if img != s.dim:
            out.append((s.basis, img))
    return out


def origin_fixed(g: MappingTable) -> list:
    return [] if not any(g.table[0]) else [("g(0)", g.table[0])]


def point_map_injective(f: PointMap) -> list:
    seen: dict[int, int] = {}
    out = []
    for i, j in enumerate(f.table):
        if j in seen:
            out.append((seen[j], i))
        seen.setdefault(j, i)
    return out


def induced_projectivities_faithful(f: PointMap, hs: Iterable[Matrix]) -> list:
    """Distinct projectivities must induce distinct h-bar (monomorphism on the sample)."""
    dom = f.domain
    from glmaps.projective import point_permutation

    seen: dict[tuple, tuple] = {}
    out = []
    for h in hs:
        perm = point_permutation(h, dom)
        hb = induced_projectivity(f, h)
        if hb is None:
            out.append(("no_induced_projectivity", h))
            continue
        prev = seen.setdefault(hb, perm)
        if prev != perm:
            out.append(("collision", h))
    return out


def harmonic_intersections(space: ProjectiveSpace, subsets: list[frozenset[int]]) -> list:
    """Two harmonic subsets sharing three or more points coincide."""
    out = []
    for a, b in itertools.combinations(subsets, 2):
        if len(a & b) >= 3 and a != b:
            out.append((sorted(a), sorted(b)))
    return out


def gl_mapping_invariants(g: MappingTable) -> dict[str, int]:
    """Violation counts for a verified non-trivial GL-mapping.

    Dimension-dependent properties are only evaluated when dim V_g <= n.
    """
    counts = {
        "independent_pairs_separated": len(independent_pairs_separated(g)),
        "fixed_vectors_stay_fixed": len(fixed_vectors_stay_fixed(g)),
        "preserves_independence": len(preserves_independence(g)),
    }
    if g.image_span().dim <= g.n:
        counts["subspace_dimensions_preserved"] = len(subspace_dimensions_preserved(g))
        counts["origin_fixed"] = len(origin_fixed(g))
    return counts
