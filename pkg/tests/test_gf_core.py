import itertools
import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glmaps import Field, FieldElement, FieldHom, apply_hom, enumerate_homs, make_field
from glmaps.errors import FieldMismatch, NotPrime, ParseError, UnsupportedField
from glmaps.gf_core import MODULI, frobenius_hom, identity_hom, is_irreducible, parse_field, parse_space
from reference import poly_add, poly_mul_mod

SUPPORTED = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81]


def _pk(q):
    for p in (2, 3, 5, 7):
        k = 1
        while p**k <= q:
            if p**k == q:
                return p, k
            k += 1
    raise AssertionError(q)


def test_prime_field_has_two_elements(gf2):
    assert list(gf2.elements) == [0, 1]
    assert gf2.q == 2


def test_gf4_multiplication(gf4):
    assert gf4.modulus == (1, 1, 1)
    assert gf4.mul(2, 2) == 3
    assert gf4.mul(2, 3) == 1


def test_gf9_x_squared_is_minus_one(gf9):
    assert gf9.modulus == (1, 0, 1)
    assert gf9.mul(3, 3) == 2


def test_hardcoded_moduli_are_least_irreducible():
    for (p, k), mod in MODULI.items():
        assert mod[-1] == 1 and is_irreducible(mod, p)
        # no monic irreducible of degree k with a smaller encoding
        enc = sum(c * p**i for i, c in enumerate(mod[:-1]))
        for smaller in range(enc):
            coeffs = [(smaller // p**i) % p for i in range(k)] + [1]
            assert not is_irreducible(coeffs, p), (p, k, coeffs)


def test_gf8_and_gf25_moduli():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)
    assert make_field(5, 2).modulus == (2, 0, 1)


@pytest.mark.parametrize("q", SUPPORTED)
def test_arithmetic_matches_polynomial_oracle(q):
    p, k = _pk(q)
    f = make_field(p, k)
    mod = list(f.modulus)
    for a, b in itertools.product(range(q), repeat=2):
        assert f.add(a, b) == poly_add(a, b, p, k)
        assert f.mul(a, b) == poly_mul_mod(a, b, p, mod)


@pytest.mark.parametrize("q", SUPPORTED)
def test_field_axioms_exhaustive(q):
    f = make_field(*_pk(q))
    els = list(f.elements)
    for a in els:
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    if q > 27:
        triples = itertools.product(els[:: max(1, q // 9)], repeat=3)
    else:
        triples = itertools.product(els, repeat=3)
    for a, b, c in triples:
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a, b in itertools.product(els, repeat=2):
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(a, b) == f.add(b, a)


@pytest.mark.parametrize("q", SUPPORTED)
def test_generator_is_least_primitive(q):
    f = make_field(*_pk(q))
    assert f.mult_order(f.generator) == q - 1
    for a in range(2, f.generator):
        assert f.mult_order(a) < q - 1
    assert {f.exp(i) for i in range(q - 1)} == set(f.nonzero)
    for a in f.nonzero:
        assert f.exp(f.log(a)) == a


def test_generator_of_gf9_is_four(gf9):
    assert gf9.generator == 4


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 4), (2, 6)])
def test_frobenius_iterated_k_times_is_identity(p, k):
    f = make_field(p, k)
    for a in f.elements:
        b = a
        for _ in range(k):
            b = f.frobenius(b)
        assert b == a


def test_make_field_rejects_unsupported():
    with pytest.raises(NotPrime):
        make_field(6)
    with pytest.raises(UnsupportedField):
        make_field(2, 7)
    with pytest.raises(UnsupportedField):
        make_field(11)


def test_make_field_is_cached_and_pickles(gf4):
    assert make_field(2, 2) is gf4
    assert pickle.loads(pickle.dumps(gf4)) == gf4


def test_parse_field_specs():
    assert parse_field("GF(4)") == make_field(2, 2)
    assert parse_field("GF(2^2)") == make_field(2, 2)
    assert parse_field(" GF( 3 ) ") == make_field(3)
    assert parse_space("GF(2)^3") == (make_field(2), 3)
    assert make_field(2, 2).spec == "GF(2^2)"
    for bad in ("GF(6)", "GF(2^0)", "F(2)", "GF(x)"):
        with pytest.raises(ParseError):
            parse_field(bad)


def test_field_element_operators(gf4):
    a, b = gf4.element(2), gf4.element(3)
    assert a * b == gf4.element(1)
    assert a + b == gf4.element(1)
    assert (a / b) * b == a
    assert a**3 == gf4.element(1)
    assert -a == a
    assert a.inverse() == b
    assert int(a) == 2
    with pytest.raises(FieldMismatch):
        _ = a + make_field(3).element(1)
    with pytest.raises(ValueError):
        FieldElement(4, gf4)


def test_homs_of_prime_field(gf2):
    homs = enumerate_homs(gf2, gf2)
    assert len(homs) == 1 and homs[0].is_identity


def test_gf4_automorphisms(gf4):
    homs = enumerate_homs(gf4, gf4)
    assert len(homs) == 2
    frob = next(h for h in homs if not h.is_identity)
    assert list(frob.table) == [0, 1, 3, 2]
    assert frob == frobenius_hom(gf4)


def test_no_hom_gf4_to_gf8(gf4):
    assert enumerate_homs(gf4, make_field(2, 3)) == []
    assert enumerate_homs(gf4, make_field(3)) == []


@pytest.mark.parametrize("src,dst,count", [((2, 1), (2, 2), 1), ((2, 2), (2, 4), 2), ((3, 1), (3, 2), 1), ((3, 2), (3, 4), 2), ((2, 3), (2, 6), 3), ((2, 2), (2, 6), 2)])
def test_hom_counts_equal_source_degree(src, dst, count):
    s, t = make_field(*src), make_field(*dst)
    homs = enumerate_homs(s, t)
    assert len(homs) == count == s.k
    for h in homs:
        assert h(0) == 0 and h(1) == 1
        assert len(set(h.table)) == s.q
        for a, b in itertools.product(s.elements, repeat=2):
            assert h(s.add(a, b)) == t.add(h(a), h(b))
            assert h(s.mul(a, b)) == t.mul(h(a), h(b))


def test_hom_composition_is_hom():
    f2, f4, f16 = make_field(2), make_field(2, 2), make_field(2, 4)
    for h1 in enumerate_homs(f2, f4):
        for h2 in enumerate_homs(f4, f16):
            c = h2.compose(h1)
            assert c.source == f2 and c.target == f16
            assert c in enumerate_homs(f2, f16)


def test_invalid_generator_image_rejected(gf4):
    with pytest.raises(ValueError):
        FieldHom(gf4, gf4, 1)


def test_apply_hom_examples(gf3, gf4):
    assert apply_hom(identity_hom(gf3), gf3.element(2)) == gf3.element(2)
    assert apply_hom(frobenius_hom(gf4), gf4.element(2)) == gf4.element(3)
    emb = enumerate_homs(make_field(2), gf4)[0]
    assert apply_hom(emb, make_field(2).element(1)) == gf4.element(1)
    with pytest.raises(FieldMismatch):
        apply_hom(emb, gf4.element(1))


@given(st.sampled_from([(2, 2), (3, 2), (2, 3), (5, 2)]), st.integers(0, 80), st.integers(0, 80), st.integers(-20, 200))
def test_pow_matches_repeated_multiplication(pk, a, b, e):
    f = make_field(*pk)
    a %= f.q
    if a == 0 and e < 0:
        return
    expected = 1
    base = a if e >= 0 else f.inv(a)
    for _ in range(abs(e)):
        expected = f.mul(expected, base)
    assert f.pow(a, e) == expected


def test_field_identity_is_structural():
    assert isinstance(make_field(3), Field)
    assert make_field(3) != make_field(3, 2)
    assert len({make_field(2), make_field(2)}) == 1
