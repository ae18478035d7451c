"""Finite fields GF(p^k) with q <= 81 and the homomorphisms between them.

Elements are plain integers ``0..q-1``: the base-p digits of an integer are
the coefficients ``c0, c1, ...`` of a polynomial in ``x`` reduced modulo the
field's fixed modulus.  So in GF(4) (modulus ``x^2+x+1``) the integer 2 is
``x`` and 3 is ``x+1``.

All arithmetic goes through lookup tables built once per field; fields are
cached, immutable and safe to share between threads.
"""

from __future__ import annotations

import itertools
import re
from math import gcd
from dataclasses import dataclass
from functools import cache

from glmaps.errors import FieldMismatch, NotPrime, ParseError, UnsupportedField

# Least irreducible monic modulus per (p, k), ordered by integer encoding
# sum(c_i * p**i).  Coefficients are listed low degree first.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1),
    (3, 1): (0, 1),
    (5, 1): (0, 1),
    (7, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (7, 2): (1, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_rem(a: list[int], b: tuple[int, ...] | list[int], p: int) -> list[int]:
    """Remainder of ``a`` divided by monic-or-not ``b`` over GF(p)."""
    a = list(a)
    lead_inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * lead_inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    return a


def is_irreducible(modulus: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..k//2."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_rem(list(modulus), list(low) + [1], p)):
                return False
    return True


class Field:
    """GF(p^k) with table-driven arithmetic on integer encodings.

    Use :func:`make_field` rather than calling this directly; it validates the
    parameters and caches one instance per ``(p, k)``.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        q = self.q
        digits = [self._digits(a) for a in range(q)]
        self._add = [
            [self._from_digits([(x + y) % p for x, y in zip(da, db)]) for db in digits]
            for da in digits
        ]
        self._neg = [self._from_digits([(-x) % p for x in da]) for da in digits]
        self._sub = [[self._add[a][self._neg[b]] for b in range(q)] for a in range(q)]

        self.generator = self._find_generator()
        self._exp = [0] * (2 * (q - 1))
        self._log = [0] * q
        value = 1
        for i in range(q - 1):
            self._exp[i] = value
            self._log[value] = i
            value = self._poly_mul(value, self.generator)
        for i in range(q - 1, 2 * (q - 1)):
            self._exp[i] = self._exp[i - (q - 1)]
        self._mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = self._log[a]
            row = self._mul[a]
            for b in range(1, q):
                row[b] = self._exp[la + self._log[b]]
        self._inv = [0] + [self._exp[(q - 1 - self._log[a]) % (q - 1)] for a in range(1, q)]

    # -- polynomial plumbing used only while building tables --------------
    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _from_digits(self, ds: list[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _poly_mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_rem(prod, self.modulus, self.p)
        return self._from_digits(rem + [0] * (self.k - len(rem)))

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        for cand in range(2, self.q):
            value, order = cand, 1
            while value != 1:
                value = self._poly_mul(value, cand)
                order += 1
            if order == self.q - 1:
                return cand
        raise AssertionError("multiplicative group is cyclic")  # pragma: no cover

    # -- arithmetic ----------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log(0) undefined")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def mult_order(self, a: int) -> int:
        la = self._log[a]
        n = self.q - 1
        return n // gcd(n, la)

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    @property
    def spec(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return self.spec

    def __reduce__(self):
        return make_field, (self.p, self.k)


@cache
def make_field(p: int, k: int = 1) -> Field:
    """Return GF(p^k) using the hardcoded modulus table.

    Raises :class:`NotPrime` for composite ``p`` and :class:`UnsupportedField`
    for any (p, k) outside the table (q <= 81).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if (p, k) not in MODULI:
        raise UnsupportedField(f"GF({p}^{k}) is not in the supported table")
    return Field(p, k, MODULI[(p, k)])


_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$")
_SPACE_RE = re.compile(r"^\s*(GF\([^)]*\))\s*(?:\^\s*(\d+))?\s*$")


def parse_field(spec: str) -> Field:
    """Parse ``GF(p)`` or ``GF(p^k)``.  ``GF(4)`` is accepted for GF(2^2)."""
    m = _FIELD_RE.match(spec)
    if not m:
        raise ParseError(f"malformed field spec {spec!r}", "field")
    base, k = int(m.group(1)), int(m.group(2) or 1)
    if k == 1 and not is_prime(base):
        for p in range(2, base + 1):
            if is_prime(p):
                e = 1
                while p**e < base:
                    e += 1
                if p**e == base:
                    base, k = p, e
                    break
    try:
        return make_field(base, k)
    except (NotPrime, UnsupportedField) as exc:
        raise ParseError(str(exc), "field") from exc


def parse_space(spec: str) -> tuple[Field, int]:
    """Parse ``GF(2)^3`` or ``GF(2^2)^4`` into (field, dimension)."""
    m = _SPACE_RE.match(spec)
    if not m:
        raise ParseError(f"malformed space spec {spec!r}", "space")
    return parse_field(m.group(1)), int(m.group(2) or 1)


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific field, with operator overloading."""

    value: int
    field: Field

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element of {self.field}")

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other.value
        return other

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._coerce(other)), self.field)

    def __sub__(self, other):
        return FieldElement(self.field.sub(self.value, self._coerce(other)), self.field)

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._coerce(other)), self.field)

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._coerce(other)), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field}[{self.value}]"


class FieldHom:
    """A non-zero homomorphism ``source -> target``, fixed by the image of
    ``source.generator``.  The full value table is built and validated on
    construction, so an invalid generator image raises ``ValueError``.
    """

    def __init__(self, source: Field, target: Field, generator_image: int):
        if source.p != target.p:
            raise ValueError("characteristics differ")
        self.source = source
        self.target = target
        self.generator_image = int(generator_image)
        if self.generator_image == 0:
            raise ValueError("zero image of a unit")
        table = [0] * source.q
        for e in range(source.q - 1):
            table[source.exp(e)] = target.pow(self.generator_image, e)
        self.table = tuple(table)
        self._validate()

    def _validate(self) -> None:
        s, t, tab = self.source, self.target, self.table
        if tab[1] != 1:
            raise ValueError("homomorphism must fix 1")
        if len(set(tab)) != s.q:
            raise ValueError("not injective")
        for a in s.elements:
            for b in s.elements:
                if tab[s.add(a, b)] != t.add(tab[a], tab[b]):
                    raise ValueError("not additive")
                if tab[s.mul(a, b)] != t.mul(tab[a], tab[b]):
                    raise ValueError("not multiplicative")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def compose(self, other: FieldHom) -> FieldHom:
        """``self after other``."""
        if other.target != self.source:
            raise FieldMismatch("composition domain mismatch")
        return FieldHom(other.source, self.target, self.table[other.generator_image])

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and all(self.table[a] == a for a in self.source.elements)

    def to_json(self) -> dict:
        return {
            "source": self.source.spec,
            "target": self.target.spec,
            "generator_image": self.generator_image,
        }

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldHom)
            and self.source == other.source
            and self.target == other.target
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.table))

    def __repr__(self) -> str:
        return f"FieldHom({self.source}->{self.target}, gen->{self.generator_image})"


def enumerate_homs(source: Field, target: Field) -> list[FieldHom]:
    """All non-zero homomorphisms ``source -> target``.

    GF(p^k) embeds in GF(p^m) exactly when k divides m; the generator must then
    go to an element of the same multiplicative order, and of those candidates
    precisely k survive the additivity check.
    """
    if source.p != target.p or target.k % source.k:
        return []
    order = source.q - 1
    homs = []
    for cand in target.nonzero:
        if target.mult_order(cand) != order:
            continue
        try:
            homs.append(FieldHom(source, target, cand))
        except ValueError:
            continue
    return homs


def identity_hom(field: Field) -> FieldHom:
    return FieldHom(field, field, field.generator)


def frobenius_hom(field: Field, power: int = 1) -> FieldHom:
    """``a -> a^(p^power)`` on ``field``."""
    return FieldHom(field, field, field.pow(field.generator, field.p**power))


def apply_hom(h: FieldHom, a: FieldElement | int) -> FieldElement:
    if isinstance(a, FieldElement):
        if a.field != h.source:
            raise FieldMismatch(f"element of {a.field} given to hom from {h.source}")
        a = a.value
    return FieldElement(h(a), h.target)
