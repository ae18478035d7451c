"""Brute-force oracles built by enumerating whole groups.

These deliberately avoid the constructive solvers: a subset X is fully
extendable iff the setwise stabilizer of X in the enumerated group induces
all |X|! permutations of X.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from functools import cache

import numpy as np

from glmaps.gf_core import Field
from glmaps.linalg import enumerate_gl, vector_space
from glmaps.projective import enumerate_pgl, point_permutation, proj_points


@cache
def gl_action_table(f: Field, n: int) -> np.ndarray:
    """Row ``r`` lists the codes of ``u_r(x)`` for every vector code ``x``."""
    space = vector_space(f, n)
    return np.array([space.images(u) for u in enumerate_gl(n, f)], dtype=np.int32)


@cache
def pgl_action_table(f: Field, n: int) -> np.ndarray:
    """Row ``r`` is the point permutation induced by the r-th PGL representative."""
    space = proj_points(f, n)
    return np.array([point_permutation(u, space) for u in enumerate_pgl(f, n)], dtype=np.int32)


def induced_permutations(action: np.ndarray, subset: Sequence[int]) -> set[tuple[int, ...]]:
    """Permutations of ``subset`` (as position lists) realised by some group row."""
    idx = np.asarray(subset)
    images = action[:, idx]
    stabilizes = np.isin(images, idx).all(axis=1)
    pos = {v: i for i, v in enumerate(subset)}
    return {tuple(pos[int(v)] for v in row) for row in images[stabilizes]}


def fully_extendable_by_enumeration(action: np.ndarray, subset: Sequence[int]) -> bool:
    return len(induced_permutations(action, subset)) == math.factorial(len(subset))


def gl_closure(gens: Sequence, f: Field, n: int) -> set:
    """The subgroup generated by ``gens`` (as a set of matrices), by breadth-first closure."""
    from glmaps.linalg import identity, matmul

    group = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = matmul(g, h, f)
                if prod not in group:
                    group.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return group
