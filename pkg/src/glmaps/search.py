"""Exhaustive sweep over every map ``f^n -> GF(2)^n'`` for the GL condition.

A table ``g`` is a GL-mapping iff, for each generator ``u``, a linear ``L``
with ``L g = g u`` exists, i.e. iff the row space of the ``n' x |V|`` matrix
whose columns are the ``g(x)`` is invariant under permuting columns by ``u``.
Over GF(2) every row is a ``|V|``-bit mask, so the whole test is a few table
lookups and comparisons, vectorised with numpy over chunks of table indices.

Table index ``t`` stores ``g(x)`` (a codomain vector code) in base-``2^n'``
digit ``x``, most significant first.  Chunks are independent; partial counts
are merged in chunk order, so any worker count yields the same report.

Every table that passes the kernel is re-checked with the reference
:func:`check_gl_mapping` before it is counted as certified.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from glmaps.commutation import GENERATORS, check_gl_mapping
from glmaps.errors import TooLarge
from glmaps.gf_core import Field
from glmaps.linalg import gl_generators, gl_order, vector_space
from glmaps.maps import MappingTable

EXHAUSTIVE_GUARD = 1 << 24
GENERIC_GUARD = 1 << 16
DEFAULT_CHUNK = 1 << 20


@dataclass
class SearchReport:
    domain: str
    codomain: str
    n: int
    mode: str
    tables_scanned: int
    dim_le_n: int = 0
    trivial_gl_dim_le_n: int = 0
    nontrivial_gl_dim_le_n: int = 0
    strong_embeddings: int = 0
    reference_disagreements: int = 0
    gl_order: int = 0
    nontrivial_tables: list[list[int]] = field(default_factory=list)
    seed: int | None = None
    wall_time_s: float | None = None
    flags: list[str] = field(default_factory=list)

    @property
    def all_strong(self) -> bool:
        return self.strong_embeddings == self.nontrivial_gl_dim_le_n

    @property
    def theorem_holds(self) -> bool:
        """Every non-trivial GL-mapping with dim V_g <= n was a strong embedding."""
        return self.all_strong and self.reference_disagreements == 0

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "domain": self.domain,
            "codomain": self.codomain,
            "n": self.n,
            "mode": self.mode,
            "tables_scanned": self.tables_scanned,
            "dim_le_n": self.dim_le_n,
            "trivial_gl_dim_le_n": self.trivial_gl_dim_le_n,
            "nontrivial_gl_dim_le_n": self.nontrivial_gl_dim_le_n,
            "strong_embeddings": self.strong_embeddings,
            "all_strong": self.all_strong,
            "reference_disagreements": self.reference_disagreements,
            "gl_order": self.gl_order,
            "nontrivial_tables": self.nontrivial_tables,
            "seed": self.seed,
            "flags": self.flags,
        }
        if timing:
            out["wall_time_s"] = self.wall_time_s
        return out


def _bit_permutation_lut(perm: list[int]) -> np.ndarray:
    """``lut[m]`` has bit ``x`` equal to bit ``perm[x]`` of ``m``."""
    size = len(perm)
    m = np.arange(1 << size, dtype=np.int64)
    out = np.zeros_like(m)
    for x, px in enumerate(perm):
        out |= ((m >> px) & 1) << x
    return out


@dataclass
class _ChunkResult:
    dim_le_n: int
    trivial_gl: np.ndarray
    nontrivial_gl: np.ndarray


class Gf2Kernel:
    def __init__(self, domain_field: Field, n: int, n_prime: int):
        dom = vector_space(domain_field, n)
        self.N = dom.size
        self.B = n_prime
        self.n = n
        self.luts = [_bit_permutation_lut(dom.images(u)) for u in gl_generators(n, domain_field)]

    def _rows_and_combos(self, t: np.ndarray):
        N, B = self.N, self.B
        digit_mask = (1 << B) - 1
        entries = [(t >> (B * (N - 1 - x))) & digit_mask for x in range(N)]
        rows = []
        for i in range(B):
            r = np.zeros_like(t)
            for x in range(N):
                r |= ((entries[x] >> i) & 1) << x
            rows.append(r)
        combos = np.zeros((len(t), 1 << B), dtype=np.int64)
        for c in range(1, 1 << B):
            low = c & -c
            combos[:, c] = combos[:, c ^ low] ^ rows[low.bit_length() - 1]
        return entries, rows, combos

    def _invariant(self, rows, combos, idx: np.ndarray) -> np.ndarray:
        sub = combos[idx]
        ok = np.ones(len(idx), dtype=bool)
        for lut in self.luts:
            for r in rows:
                ok &= (sub == lut[r[idx]][:, None]).any(axis=1)
        return ok

    def is_gl(self, t: np.ndarray) -> np.ndarray:
        """GL condition for arbitrary table indices, without the dimension filter."""
        t = np.asarray(t, dtype=np.int64)
        _, rows, combos = self._rows_and_combos(t)
        return self._invariant(rows, combos, np.arange(len(t)))

    def run(self, start: int, stop: int) -> _ChunkResult:
        t = np.arange(start, stop, dtype=np.int64)
        entries, rows, combos = self._rows_and_combos(t)
        # dim V_g = B - log2 |{c : c . g(x) = 0 for all x}|
        kernel_size = (combos == 0).sum(axis=1)
        dim = self.B - np.log2(kernel_size).astype(np.int64)
        keep = dim <= self.n
        trivial = np.ones(len(t), dtype=bool)
        for x in range(2, self.N):
            trivial &= entries[x] == entries[1]
        idx = np.nonzero(keep)[0]
        gl = idx[self._invariant(rows, combos, idx)]
        return _ChunkResult(int(keep.sum()), t[gl[trivial[gl]]], t[gl[~trivial[gl]]])


def table_index(codes, base: int) -> int:
    """Inverse of :func:`_decode`: the sweep index of a table of codomain codes."""
    t = 0
    for c in codes:
        t = t * base + c
    return t


def _decode(t: int, size: int, base: int) -> list[int]:
    digits = []
    for _ in range(size):
        t, d = divmod(t, base)
        digits.append(d)
    return digits[::-1]


def _certify(report: SearchReport, dom, cod, trivial_codes, nontrivial_codes) -> None:
    for codes in trivial_codes:
        g = MappingTable.from_codes(dom, cod, codes)
        if not check_gl_mapping(g, GENERATORS, verdict=False).is_gl_mapping:
            report.reference_disagreements += 1
    report.trivial_gl_dim_le_n = len(trivial_codes)
    for codes in nontrivial_codes:
        g = MappingTable.from_codes(dom, cod, codes)
        rep = check_gl_mapping(g, GENERATORS)
        if not rep.is_gl_mapping:
            report.reference_disagreements += 1
            continue
        if rep.strong_embedding is not None and rep.strong_embedding.is_strong:
            report.strong_embeddings += 1
    report.nontrivial_gl_dim_le_n = len(nontrivial_codes)
    report.nontrivial_tables = [list(c) for c in nontrivial_codes]


def _reference_pipeline(dom, cod, n: int, codes_iter):
    """Early-rejection order: dimension, non-triviality, generator checks."""
    dim_le_n, trivial, nontrivial = 0, [], []
    for codes in codes_iter:
        g = MappingTable.from_codes(dom, cod, codes)
        if g.image_span().dim > n:
            continue
        dim_le_n += 1
        if check_gl_mapping(g, GENERATORS, verdict=False).is_gl_mapping:
            (trivial if g.is_trivial else nontrivial).append(list(codes))
    return dim_le_n, trivial, nontrivial


def exhaustive_theorem1_search(
    domain_field: Field,
    n: int,
    codomain_field: Field,
    n_prime: int,
    threads: int = 1,
    mode: str = "exhaustive",
    samples: int = 10_000,
    seed: int = 0,
    chunk: int = DEFAULT_CHUNK,
) -> SearchReport:
    """Count GL-mappings among all (or sampled) tables ``f^n -> f'^n'``.

    ``mode="exhaustive"`` scans every table; over a GF(2) codomain up to
    2^24 tables are allowed, otherwise up to 2^16.  ``mode="sampled"`` checks
    ``samples`` uniformly random tables drawn with ``seed``.
    """
    dom = vector_space(domain_field, n)
    cod = vector_space(codomain_field, n_prime)
    total = cod.size**dom.size
    report = SearchReport(
        f"{domain_field.spec}^{n}",
        f"{codomain_field.spec}^{n_prime}",
        n,
        mode,
        0,
        gl_order=gl_order(n, domain_field.q),
    )
    if n < 3:
        report.flags.append("n < 3: outside the theorem's hypothesis, exploratory run")
    started = time.perf_counter()

    if mode == "sampled":
        rng = np.random.default_rng(seed)
        report.seed = seed
        drawn = rng.integers(0, cod.size, size=(samples, dom.size))
        report.tables_scanned = samples
        dim_le_n, trivial, nontrivial = _reference_pipeline(dom, cod, n, (list(map(int, row)) for row in drawn))
        report.dim_le_n = dim_le_n
        _certify(report, dom, cod, trivial, nontrivial)
    elif mode == "exhaustive":
        gf2 = codomain_field.q == 2
        guard = EXHAUSTIVE_GUARD if gf2 else GENERIC_GUARD
        if total > guard:
            raise TooLarge(f"{total} tables exceed the exhaustive guard {guard}; use sampled mode")
        report.tables_scanned = total
        if gf2:
            kernel = Gf2Kernel(domain_field, n, n_prime)
            ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
            with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
                results = list(pool.map(lambda r: kernel.run(*r), ranges))
            report.dim_le_n = sum(r.dim_le_n for r in results)
            trivial = [_decode(int(t), dom.size, cod.size) for r in results for t in r.trivial_gl]
            nontrivial = [_decode(int(t), dom.size, cod.size) for r in results for t in r.nontrivial_gl]
        else:
            codes_iter = (_decode(t, dom.size, cod.size) for t in range(total))
            report.dim_le_n, trivial, nontrivial = _reference_pipeline(dom, cod, n, codes_iter)
        _certify(report, dom, cod, trivial, nontrivial)
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    report.wall_time_s = round(time.perf_counter() - started, 3)
    return report
