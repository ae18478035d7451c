import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glmaps import make_field
from glmaps.errors import DimensionMismatch, Singular, TooLarge
from glmaps.linalg import (
    all_subspaces,
    enumerate_gl,
    extend_to_automorphism,
    forced_linear_map,
    gl_generators,
    gl_order,
    identity,
    inverse,
    is_independent,
    is_invertible,
    matmul,
    matvec,
    rank,
    rref,
    span,
    vector_space,
)
from glmaps.oracles import gl_closure
from reference import all_matrices, det

F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)


def test_rank_examples():
    assert rank(identity(3), F2) == 3
    assert rank([[1, 1], [2, 2]], F3) == 1


def test_rank_of_gf4_example_is_one():
    # 1*3 - 2*2 = 3 - 3 = 0 in GF(4), so the rows are dependent
    m = [[1, 2], [2, 3]]
    assert det(m, F4) == 0
    assert rank(m, F4) == 1


@pytest.mark.parametrize("f,n", [(F2, 2), (F3, 2), (F2, 3), (F4, 2)])
def test_invertibility_matches_determinant(f, n):
    for m in all_matrices(n, f.q):
        inv = det(m, f) != 0
        assert is_invertible(m, f) == inv
        assert (rank(m, f) == n) == inv
        if inv:
            assert matmul(m, inverse(m, f), f) == identity(n)
        else:
            with pytest.raises(Singular):
                inverse(m, f)


def test_rref_canonical_form():
    rows, pivots = rref([[0, 2, 1], [1, 1, 0], [1, 0, 2]], F3)
    assert pivots == sorted(pivots)
    for r, c in zip(rows, pivots):
        assert r[c] == 1
        assert sum(1 for other in rows if other[c]) == 1


def test_span_examples():
    s = span([(1, 0, 0), (0, 1, 0)], F2)
    assert s.dim == 2 and s.basis == ((1, 0, 0), (0, 1, 0))
    z = span([], F2, 3)
    assert z.dim == 0 and list(z.vectors()) == [(0, 0, 0)]
    assert span([(1, 1), (2, 2)], F3).basis == ((1, 1),)


@given(st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=0, max_size=5), st.randoms())
def test_span_idempotent_and_order_independent(vs, rnd):
    s = span(vs, F3, 3)
    shuffled = list(vs)
    rnd.shuffle(shuffled)
    assert span(shuffled, F3, 3) == s
    assert span(list(s.vectors()), F3, 3) == s


def test_independence_examples():
    assert is_independent([(1, 0), (0, 1)], F2)
    assert not is_independent([(1, 0), (1, 0)], F2)
    assert not is_independent([(1, 2), (2, 1)], F3)
    assert is_independent([], F2)
    assert not is_independent([(0, 0)], F2)


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1))
def test_rank_of_product_bounded(seed):
    rng = random.Random(seed)
    f = rng.choice([F2, F3, F4])
    a = [[rng.randrange(f.q) for _ in range(3)] for _ in range(3)]
    b = [[rng.randrange(f.q) for _ in range(3)] for _ in range(3)]
    assert rank(matmul(a, b, f), f) <= min(rank(a, f), rank(b, f))


def _gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("f,n", [(F2, 3), (F3, 2), (F3, 3), (F4, 2)])
def test_subspace_counts_match_gaussian_binomials(f, n):
    for k in range(n + 1):
        assert len(all_subspaces(f, n, k)) == _gaussian_binomial(n, k, f.q)


@pytest.mark.parametrize("n,q", [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (2, 7), (2, 8), (2, 9)])
def test_enumerate_gl_count_matches_formula(n, q):
    f = make_field(*{2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}[q])
    mats = list(enumerate_gl(n, f))
    assert len(mats) == len(set(mats)) == gl_order(n, q)
    assert mats == sorted(mats)


def test_enumerate_gl_small_examples():
    assert list(enumerate_gl(1, F3)) == [((1,),), ((2,),)]
    assert set(enumerate_gl(2, F2)) == {m for m in all_matrices(2, 2) if det(m, F2)}
    assert set(enumerate_gl(3, F2)) == {m for m in all_matrices(3, 2) if det(m, F2)}


def test_enumerate_gl_guard():
    with pytest.raises(TooLarge):
        list(enumerate_gl(4, F3))


@pytest.mark.parametrize("f,n,order", [(F2, 2, 6), (F2, 3, 168), (F3, 2, 48), (F3, 3, 11232)])
def test_generator_closure_is_whole_group(f, n, order):
    gens = gl_generators(n, f)
    if f.q == 2:
        assert len(gens) == n * (n - 1)
    closure = gl_closure(gens, f, n)
    assert len(closure) == order
    assert closure == set(enumerate_gl(n, f))


def test_vector_space_codes_are_lexicographic():
    v = vector_space(F3, 2)
    assert v.vectors == sorted(v.vectors)
    for code, x in enumerate(v.vectors):
        assert v.encode(x) == code and v.decode(code) == x
    u = ((1, 2), (0, 1))
    assert v.images(u) == [v.encode(matvec(u, x, F3)) for x in v.vectors]


def test_span_table_matches_span():
    v = vector_space(F3, 3)
    codes = [v.encode((1, 2, 0)), v.encode((0, 1, 1))]
    table = v.span_table(codes)
    assert sorted(table) == sorted(v.encode(x) for x in span([v.decode(c) for c in codes], F3).vectors())


def test_extend_to_automorphism_swap():
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    u = extend_to_automorphism([(e1, e2), (e2, e1)], 3, F2)
    assert u == ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def test_extend_to_automorphism_forced_kernel():
    assert extend_to_automorphism([((1, 0), (1, 0)), ((1, 1), (1, 0))], 2, F2) is None


def test_extend_to_automorphism_inconsistent_gf3():
    pairs = [((1, 0), (1, 1)), ((0, 1), (0, 1)), ((1, 1), (1, 0))]
    assert extend_to_automorphism(pairs, 2, F3) is None
    # brute force: no element of GL(2,3) satisfies all three pairs
    assert not any(all(matvec(u, x, F3) == y for x, y in pairs) for u in enumerate_gl(2, F3))


def test_extend_to_automorphism_dimension_check():
    with pytest.raises(DimensionMismatch):
        extend_to_automorphism([((1, 0), (1, 0, 0))], 2, F2)


@settings(max_examples=80)
@given(st.integers(0, 2**32 - 1))
def test_extension_agrees_with_group_search(seed):
    rng = random.Random(seed)
    f = rng.choice([F2, F3])
    n = 2
    vecs = vector_space(f, n).vectors
    pairs = [(rng.choice(vecs), rng.choice(vecs)) for _ in range(rng.randint(1, 3))]
    u = extend_to_automorphism(pairs, n, f)
    exists = any(all(matvec(g, x, f) == y for x, y in pairs) for g in enumerate_gl(n, f))
    assert (u is not None) == exists
    if u is not None:
        assert rank(u, f) == n
        assert all(matvec(u, x, f) == y for x, y in pairs)


def test_forced_linear_map_detects_inconsistency():
    assert forced_linear_map([((1, 0), (1, 0)), ((2, 0), (1, 0))], F3) is None
    basis, images = forced_linear_map([((1, 0), (0, 1)), ((2, 0), (0, 2))], F3)
    assert len(basis) == 1


def test_extension_is_deterministic():
    pairs = [((1, 0, 0), (0, 1, 0))]
    results = {extend_to_automorphism(pairs, 3, F3) for _ in range(3)}
    assert len(results) == 1
    for x, y in itertools.product([(1, 0, 0)], [(0, 1, 0)]):
        assert matvec(results.pop(), x, F3) == y
