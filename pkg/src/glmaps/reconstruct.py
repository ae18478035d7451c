"""Recover the semilinear injection behind a line-preserving point map.

The procedure fixes a frame (basis points plus the unit point), rescales the
image basis so the unit point lines up, reads the field homomorphism off the
pencil ``<x1 + a x2>``, and finally certifies the candidate against every
point.  Every failure raises a :class:`ReconstructionError` subclass that
names the certificate that broke and carries a witness.
"""

from __future__ import annotations

import itertools

from glmaps.errors import DimensionMismatch, GLMapsError
from glmaps.gf_core import FieldHom
from glmaps.linalg import (
    Vector,
    from_columns,
    inverse,
    is_independent,
    matmul,
    rank,
    unit_vector,
    vec_add,
    vec_scale,
)
from glmaps.extendability import _coords_in
from glmaps.maps import PointMap
from glmaps.projective import normalize
from glmaps.semilinear import SemilinearMap, apply, induced_projective, is_injective

FRAME_SEARCH_LIMIT = 100_000


class ReconstructionError(GLMapsError):
    kind = "reconstruction_failed"

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)

    def certificate(self) -> dict:
        return {"kind": self.kind, "message": str(self), "witness": self.witness}


class LineConditionViolated(ReconstructionError):
    kind = "line_condition_violated"


class ImageInLine(ReconstructionError):
    kind = "image_in_line"


class DegenerateFrame(ReconstructionError):
    kind = "degenerate_frame"


class NotAHomomorphism(ReconstructionError):
    kind = "not_a_homomorphism"


class InductionMismatch(ReconstructionError):
    kind = "induction_mismatch"


def check_line_condition(f: PointMap) -> None:
    """Raise unless every line of the domain lands inside some line."""
    cf = f.codomain.field
    for line in f.domain.lines:
        idx = sorted(line)
        if rank([f.image_rep(i) for i in idx], cf) > 2:
            raise LineConditionViolated(
                f"line {idx} is not mapped into a line",
                witness={"line": idx, "images": [f.table[i] for i in idx]},
            )


def _frame_candidates(f: PointMap):
    """Standard frame first, then independent point n-tuples in canonical order."""
    dom = f.domain
    n, field = dom.n, dom.field
    yield [unit_vector(i, n) for i in range(n)]
    for k, combo in enumerate(itertools.combinations(dom.points, n)):
        if k >= FRAME_SEARCH_LIMIT:
            return
        if is_independent(list(combo), field):
            yield list(combo)


def _rescaled_frame(f: PointMap, xs: list[Vector]) -> list[Vector] | None:
    """Image basis rescaled so the unit point <sum xs> maps onto <sum b'>."""
    dom, cf = f.domain, f.codomain.field
    bs = [f(x) for x in xs]
    if not is_independent(bs, cf):
        return None
    unit = xs[0]
    for x in xs[1:]:
        unit = vec_add(unit, x, dom.field)
    mus = _coords_in(bs, f(unit), cf)
    if mus is None or not all(mus):
        return None
    return [vec_scale(mu, b, cf) for mu, b in zip(mus, bs)]


def reconstruct_semilinear(f: PointMap) -> SemilinearMap:
    """A semilinear injection ``l`` with ``pi(l) = f``.

    Needs domain dimension at least 3.  Raises one of
    :class:`LineConditionViolated`, :class:`ImageInLine`,
    :class:`DegenerateFrame`, :class:`NotAHomomorphism` or
    :class:`InductionMismatch`.
    """
    dom, cod = f.domain, f.codomain
    F, Fp, n = dom.field, cod.field, dom.n
    if n < 3:
        raise DimensionMismatch("reconstruction needs a domain of dimension >= 3")

    check_line_condition(f)
    if f.image_span().dim < 3:
        raise ImageInLine("the image of the point map lies in a line", witness={"dim_Vf": f.image_span().dim})

    for xs in _frame_candidates(f):
        bprime = _rescaled_frame(f, xs)
        if bprime is not None:
            break
    else:
        raise DegenerateFrame("no frame has images in general position")

    sigma_table = [0] * F.q
    for a in F.elements:
        w = f(vec_add(xs[0], vec_scale(a, xs[1], F), F))
        coeffs = _coords_in(bprime[:2], w, Fp)
        if coeffs is None or coeffs[0] == 0:
            raise NotAHomomorphism(f"<x1 + {a} x2> leaves the expected pencil", witness={"a": a})
        sigma_table[a] = Fp.div(coeffs[1], coeffs[0])
    try:
        sigma = FieldHom(F, Fp, sigma_table[F.generator])
    except ValueError as exc:
        raise NotAHomomorphism(f"read-off scalar map is not a homomorphism: {exc}", witness={"sigma": sigma_table}) from exc
    if list(sigma.table) != sigma_table:
        raise NotAHomomorphism("read-off scalar map is not a homomorphism", witness={"sigma": sigma_table})

    # l(v) = B' sigma(X^-1 v), so its matrix is B' sigma(X^-1).
    x_inv = inverse(from_columns(xs), F)
    sig_x_inv = tuple(tuple(sigma(a) for a in row) for row in x_inv)
    l = SemilinearMap(sigma, matmul(from_columns(bprime), sig_x_inv, Fp))

    if not is_injective(l):
        raise InductionMismatch("candidate map is not injective")
    for i, p in enumerate(dom.points):
        if cod.point_of(apply(l, p)) != f.table[i]:
            raise InductionMismatch(f"candidate disagrees at point {i}", witness={"point": i})
    return l


def verify_induces(l: SemilinearMap, f: PointMap) -> bool:
    """Pointwise ``pi(l) == f``."""
    if not is_injective(l):
        return False
    g = induced_projective(l)
    return g.domain == f.domain and g.codomain == f.codomain and g.table == f.table
