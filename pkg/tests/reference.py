"""Independent reference implementations used as oracles by the tests.

These deliberately share no code with the package: field arithmetic is done
on coefficient lists, determinants by the Leibniz formula.
"""

from __future__ import annotations

import itertools



def poly_mul_mod(a: int, b: int, p: int, modulus: list[int]) -> int:
    """Multiply two GF(p^k) elements given as integer encodings, schoolbook style."""
    k = len(modulus) - 1

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    da, db = digits(a), digits(b)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            for i, m in enumerate(modulus):
                prod[top - k + i] = (prod[top - k + i] - c * m) % p
    return sum(c * p**i for i, c in enumerate(prod[:k]))


def poly_add(a: int, b: int, p: int, k: int) -> int:
    return sum((((a // p**i) + (b // p**i)) % p) * p**i for i in range(k))


def det(m, f) -> int:
    """Leibniz determinant over a package field (used only for its +, *)."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = f.mul(term, m[i][perm[i]])
        total = f.sub(total, term) if inversions % 2 else f.add(total, term)
    return total


def all_matrices(n: int, q: int):
    for entries in itertools.product(range(q), repeat=n * n):
        yield tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))
