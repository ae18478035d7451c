import random

import pytest

from glmaps import enumerate_homs, make_field
from glmaps.commutation import constant_point_map, point_indicator, semilinear_table
from glmaps.errors import DimensionMismatch
from glmaps.gf_core import frobenius_hom, identity_hom
from glmaps.linalg import identity
from glmaps.maps import PointMap
from glmaps.projective import proj_points
from glmaps.reconstruct import (
    ImageInLine,
    LineConditionViolated,
    ReconstructionError,
    check_line_condition,
    reconstruct_semilinear,
    verify_induces,
)
from glmaps.semilinear import SemilinearMap, induced_projective, is_strong_embedding, scalar_multiple_of

F2, F3, F4, F9 = make_field(2), make_field(3), make_field(2, 2), make_field(3, 2)
PAIRS = [(F2, F2), (F2, F4), (F4, F4), (F3, F9), (F3, F3)]


def _random_embedding(rng, src, dst, n_prime=3):
    sigma = rng.choice(enumerate_homs(src, dst))
    while True:
        m = tuple(tuple(rng.randrange(dst.q) for _ in range(3)) for _ in range(n_prime))
        l = SemilinearMap(sigma, m)
        if is_strong_embedding(l):
            return l


def test_identity_reconstructs_to_identity():
    l = reconstruct_semilinear(induced_projective(SemilinearMap(identity_hom(F2), identity(3))))
    assert l.matrix == identity(3) and l.sigma.is_identity


def test_frobenius_is_recovered():
    l0 = SemilinearMap(frobenius_hom(F4), identity(3))
    l = reconstruct_semilinear(induced_projective(l0))
    assert l.sigma == frobenius_hom(F4)
    assert scalar_multiple_of(semilinear_table(l), l0) is not None


def test_point_indicator_violates_line_condition():
    f = point_indicator(proj_points(F2, 3), F2, 7)
    with pytest.raises(LineConditionViolated) as exc:
        reconstruct_semilinear(f)
    cert = exc.value.certificate()
    assert cert["kind"] == "line_condition_violated" and cert["witness"] is not None
    with pytest.raises(LineConditionViolated):
        check_line_condition(f)


def test_constant_map_lies_in_a_line():
    f = constant_point_map(proj_points(F3, 3), proj_points(F3, 3), 4)
    with pytest.raises(ImageInLine):
        reconstruct_semilinear(f)


def test_projective_line_domain_rejected():
    f = induced_projective(SemilinearMap(identity_hom(F3), identity(2)))
    with pytest.raises(DimensionMismatch):
        reconstruct_semilinear(f)


@pytest.mark.parametrize("src,dst", PAIRS)
def test_round_trip_recovers_scalar_multiple(src, dst):
    rng = random.Random(100 * src.q + dst.q)
    for _ in range(8):
        l0 = _random_embedding(rng, src, dst)
        f = induced_projective(l0)
        l = reconstruct_semilinear(f)
        assert l.sigma == l0.sigma
        assert scalar_multiple_of(semilinear_table(l), l0) is not None
        assert verify_induces(l, f)


def test_round_trip_into_larger_codomain():
    rng = random.Random(5)
    l0 = _random_embedding(rng, F2, F2, n_prime=4)
    l = reconstruct_semilinear(induced_projective(l0))
    assert scalar_multiple_of(semilinear_table(l), l0) is not None


def test_verify_induces_examples():
    l = SemilinearMap(identity_hom(F4), ((1, 2, 0), (0, 1, 3), (0, 0, 1)))
    f = induced_projective(l)
    assert verify_induces(l, f)
    assert verify_induces(l.scaled(2), f)
    assert not verify_induces(SemilinearMap(identity_hom(F4), identity(3)), f)


@pytest.mark.parametrize("seed", range(10))
def test_single_point_corruption_gives_named_certificate(seed):
    rng = random.Random(seed)
    src, dst = PAIRS[seed % len(PAIRS)]
    f = induced_projective(_random_embedding(rng, src, dst))
    i = rng.randrange(len(f.domain))
    j = rng.choice([k for k in range(len(f.codomain)) if k != f.table[i]])
    table = list(f.table)
    table[i] = j
    with pytest.raises(ReconstructionError) as exc:
        reconstruct_semilinear(PointMap(f.domain, f.codomain, tuple(table)))
    assert type(exc.value) is not ReconstructionError
    assert exc.value.certificate()["kind"] != "reconstruction_failed"
