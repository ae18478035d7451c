"""Reproducible verification suites.

Each suite returns a :class:`SuiteReport` whose ``passed`` flag is false as
soon as any verdict contradicts the predicted outcome.  Reports serialize to
deterministic JSON; wall-time is the only run-dependent field and can be
dropped with ``to_json(timing=False)``.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from glmaps import __version__
from glmaps.commutation import (
    EXHAUSTIVE,
    GENERATORS,
    check_gl_mapping,
    check_pgl_mapping,
    induced_hom_is_homomorphism,
    vector_plus_constant,
    vector_indicator,
    point_indicator,
    semilinear_table,
    vector_table,
)
from glmaps.errors import GLMapsError, TooLarge, UnknownSuite
from glmaps.extendability import (
    HARMONIC,
    classify_linear_subset,
    classify_projective_subset,
    extend_permutation_projective,
    failing_transposition_projective,
    fully_extendable_linear,
    fully_extendable_projective,
    harmonic_subsets,
    is_harmonic,
)
from glmaps.gf_core import Field, enumerate_homs, make_field
from glmaps.invariants import (
    gl_mapping_invariants,
    harmonic_intersections,
    induced_projectivities_faithful,
    point_map_injective,
)
from glmaps.linalg import Matrix, enumerate_gl, gl_generators, gl_order, is_invertible, vector_space
from glmaps.maps import MappingTable, PointMap
from glmaps.oracles import fully_extendable_by_enumeration, gl_action_table, pgl_action_table
from glmaps.projective import enumerate_pgl, point_permutation, proj_points
from glmaps.reconstruct import ReconstructionError, reconstruct_semilinear
from glmaps.search import Gf2Kernel, exhaustive_theorem1_search, table_index
from glmaps.semilinear import SemilinearMap, induced_projective, is_strong_embedding, scalar_multiple_of

SUITES = (
    "prop1",
    "prop2",
    "harmonic",
    "theorem1-exhaustive",
    "examples",
    "ftpg-roundtrip",
    "lemma-invariants",
    "converse",
    "mode-agreement",
)

MAX_RANDOM_TABLES = 1_000_000
MAX_ROUNDTRIPS = 100_000


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    threads: int = 1
    roundtrips: int = 100
    corruptions: int = 20
    random_tables: int = 10_000
    # theorem1-exhaustive also reports the exploratory GF(2)^2 -> GF(2)^2 sweep
    include_n2: bool = True

    def check_guards(self) -> None:
        if not 0 <= self.random_tables <= MAX_RANDOM_TABLES:
            raise TooLarge(f"random_tables must be in [0, {MAX_RANDOM_TABLES}]")
        if not 0 <= self.roundtrips <= MAX_ROUNDTRIPS or not 0 <= self.corruptions <= MAX_ROUNDTRIPS:
            raise TooLarge(f"round-trip counts must be in [0, {MAX_ROUNDTRIPS}]")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class SuiteReport:
    suite: str
    passed: bool = True
    counts: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    seed: int | None = None
    wall_time_s: float | None = None
    version: str = __version__

    def fail(self, what: str, **detail) -> None:
        self.passed = False
        self.failures.append({"what": what, **detail})

    def expect(self, ok: bool, what: str, **detail) -> None:
        if not ok:
            self.fail(what, **detail)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "version": self.version,
            "passed": self.passed,
            "counts": self.counts,
            "cases": self.cases,
            "failures": self.failures,
            "seed": self.seed,
        }
        if timing:
            out["wall_time_s"] = self.wall_time_s
        return out


# shared fixtures

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)
F5 = make_field(5)
F9 = make_field(3, 2)

CONVERSE_PAIRS: tuple[tuple[Field, Field], ...] = ((F2, F2), (F2, F4), (F4, F4), (F3, F9))


def random_invertible(rng: np.random.Generator, n: int, f: Field) -> Matrix:
    while True:
        m = tuple(tuple(int(a) for a in row) for row in rng.integers(0, f.q, size=(n, n)))
        if is_invertible(m, f):
            return m


def random_strong_embedding(rng: np.random.Generator, src: Field, dst: Field, n: int = 3) -> SemilinearMap:
    """A semilinear ``src^n -> dst^n`` with a uniformly drawn invertible matrix."""
    homs = enumerate_homs(src, dst)
    sigma = homs[int(rng.integers(len(homs)))]
    while True:
        l = SemilinearMap(sigma, random_invertible(rng, n, dst))
        if is_strong_embedding(l):
            return l


def converse_embeddings(seed: int) -> list[SemilinearMap]:
    """The strong embeddings exercised by the converse and invariant suites.

    All 168 linear automorphisms of GF(2)^3, plus seeded random embeddings for
    the other field pairs; over GF(4) both automorphisms of the field are used.
    """
    rng = np.random.default_rng(seed)
    out = [SemilinearMap(enumerate_homs(F2, F2)[0], u) for u in enumerate_gl(3, F2)]
    out += [random_strong_embedding(rng, F2, F4) for _ in range(8)]
    for sigma in enumerate_homs(F4, F4):
        out += [SemilinearMap(sigma, random_invertible(rng, 3, F4)) for _ in range(2)]
    out += [random_strong_embedding(rng, F3, F9) for _ in range(4)]
    return out


def _subsets(universe: list, sizes) -> itertools.chain:
    return itertools.chain.from_iterable(itertools.combinations(universe, k) for k in sizes)


# suites


def suite_prop1(config: SuiteConfig, report: SuiteReport) -> None:
    """Linear full extendability: classifier vs transposition solver vs group oracle."""
    for f, n, sizes in ((F2, 2, range(2, 4)), (F2, 3, range(2, 6)), (F3, 2, range(2, 5))):
        space = vector_space(f, n)
        action = gl_action_table(f, n)
        classes: Counter = Counter()
        total = 0
        for codes in _subsets(list(range(space.size)), sizes):
            xs = [space.decode(c) for c in codes]
            cls = classify_linear_subset(xs, f)
            solver = fully_extendable_linear(xs, f)
            oracle = fully_extendable_by_enumeration(action, codes)
            classes[str(cls)] += 1
            total += 1
            report.expect(
                cls.fully_extendable == solver == oracle,
                "classifier/oracle disagreement",
                space=f"{f.spec}^{n}",
                subset=[list(x) for x in xs],
                classifier=str(cls),
                solver=solver,
                oracle=oracle,
            )
        report.cases.append(
            {
                "space": f"{f.spec}^{n}",
                "sizes": [min(sizes), max(sizes)],
                "subsets": total,
                "fully_extendable": total - classes["not_fully_extendable"],
                "classes": dict(sorted(classes.items())),
            }
        )
    report.counts["subsets"] = sum(c["subsets"] for c in report.cases)


def suite_prop2(config: SuiteConfig, report: SuiteReport) -> None:
    """Projective full extendability: classifier vs solver vs PGL oracle."""
    for f, n in ((F3, 2), (F2, 3), (F3, 3), (F5, 2)):
        space = proj_points(f, n)
        action = pgl_action_table(f, n)
        classes: Counter = Counter()
        total = 0
        for idx in _subsets(list(range(len(space))), range(2, min(5, len(space)) + 1)):
            pts = [space.points[i] for i in idx]
            cls = classify_projective_subset(pts, f)
            solver = fully_extendable_projective(pts, f)
            oracle = fully_extendable_by_enumeration(action, idx)
            classes[str(cls)] += 1
            total += 1
            report.expect(
                cls.fully_extendable == solver == oracle,
                "classifier/oracle disagreement",
                space=space.spec,
                subset=[list(p) for p in pts],
                classifier=str(cls),
                solver=solver,
                oracle=oracle,
            )
        harmonic = classes[HARMONIC]
        report.expect(f.p == 3 or harmonic == 0, "harmonic class outside characteristic 3", space=space.spec)
        report.cases.append(
            {
                "space": space.spec,
                "subsets": total,
                "fully_extendable": total - classes["not_fully_extendable"],
                "harmonic": harmonic,
                "classes": dict(sorted(classes.items())),
            }
        )
    report.counts["subsets"] = sum(c["subsets"] for c in report.cases)


def _quadruple(f: Field) -> list[tuple[int, int]]:
    """x, y, x+y, x-y on the projective line."""
    return [(1, 0), (0, 1), (1, 1), (1, f.neg(1))]


def suite_harmonic(config: SuiteConfig, report: SuiteReport) -> None:
    """The four points of PG(1,3) admit every permutation; over GF(5) they do not."""
    space = proj_points(F3, 2)
    quad = _quadruple(F3)
    report.expect(is_harmonic(quad, F3), "x, y, x+y, x-y is not harmonic over GF(3)")
    extended = 0
    for perm in itertools.permutations(range(4)):
        u = extend_permutation_projective(quad, perm, F3)
        if u is None:
            report.fail("permutation does not extend", perm=list(perm))
            continue
        images = point_permutation(u, space)
        if all(images[space.index[quad[i]]] == space.index[quad[perm[i]]] for i in range(4)):
            extended += 1
        else:
            report.fail("extension matrix realises the wrong permutation", perm=list(perm))
    report.counts["pg13_permutations_extended"] = extended
    report.expect(extended == 24, "not all 24 permutations extend", extended=extended)

    # three explicit matrices realising the adjacent transpositions
    adjacent = {
        (0, 1): ((0, 1), (1, 0)),  # x <-> y
        (1, 2): ((2, 1), (0, 1)),  # x -> -x, y -> x + y
        (2, 3): ((1, 0), (0, 2)),  # y -> -y
    }
    for (i, j), u in adjacent.items():
        images = point_permutation(u, space)
        want = list(range(4))
        want[i], want[j] = want[j], want[i]
        ok = all(images[space.index[quad[k]]] == space.index[quad[want[k]]] for k in range(4))
        report.expect(ok, "explicit matrix does not realise the transposition", transposition=[i, j])

    quad5 = _quadruple(F5)
    witness = failing_transposition_projective(quad5, F5)
    report.expect(witness is not None, "every transposition extends over GF(5)")
    report.cases.append(
        {
            "space": "PG(1,3)",
            "points": [list(p) for p in quad],
            "permutations_extended": extended,
        }
    )
    report.cases.append(
        {
            "space": "PG(1,5)",
            "points": [list(p) for p in quad5],
            "failing_transposition": list(witness) if witness else None,
        }
    )


def theorem1_reports(config: SuiteConfig) -> list:
    reports = [exhaustive_theorem1_search(F2, 3, F2, 3, threads=config.threads)]
    if config.include_n2:
        reports.append(exhaustive_theorem1_search(F2, 2, F2, 2, threads=config.threads))
    return reports


def suite_theorem1(config: SuiteConfig, report: SuiteReport, cache: dict | None = None) -> None:
    """Every non-trivial GL-mapping GF(2)^3 -> GF(2)^3 with dim V_g <= 3 is a strong embedding."""
    reps = theorem1_reports(config)
    if cache is not None:
        cache["theorem1"] = reps
    main = reps[0]
    for rep in reps:
        case = rep.to_json(timing=False)
        case.pop("nontrivial_tables")
        report.cases.append(case)
    report.counts.update(
        nontrivial_gl_dim_le_n=main.nontrivial_gl_dim_le_n,
        trivial_gl=main.trivial_gl_dim_le_n,
        all_strong=main.all_strong,
        gl_order=main.gl_order,
    )
    report.expect(main.nontrivial_gl_dim_le_n == gl_order(3, 2) == 168, "non-trivial count differs from |GL(3,2)|")
    report.expect(main.trivial_gl_dim_le_n == 64, "trivial count differs from 64")
    report.expect(main.theorem_holds, "a non-trivial GL-mapping is not a strong embedding")


def suite_converse(config: SuiteConfig, report: SuiteReport) -> None:
    """Strong semilinear embeddings are GL-mappings in both checking modes."""
    tally: Counter = Counter()
    for l in converse_embeddings(config.seed):
        g = semilinear_table(l)
        pair = f"{l.sigma.source.spec}^3->{l.sigma.target.spec}^3"
        for mode in (GENERATORS, EXHAUSTIVE):
            ok = check_gl_mapping(g, mode, verdict=False).is_gl_mapping
            tally[f"{pair} {mode}"] += ok
            report.expect(ok, "strong embedding rejected", pair=pair, mode=mode, embedding=l.to_json())
        tally[f"{pair} embeddings"] += 1
    report.seed = config.seed
    report.counts = dict(sorted(tally.items()))


def example_maps() -> dict:
    """Named instances of the three example families."""
    id3 = SemilinearMap(enumerate_homs(F2, F2)[0], ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)))
    sub3 = SemilinearMap(enumerate_homs(F2, F4)[0], ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)))
    frob3 = SemilinearMap(enumerate_homs(F4, F4)[1], ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)))
    e4 = (0, 0, 0, 1)
    return {
        "gl": {
            "vector_plus_constant GF(2)^3->GF(2)^4": vector_plus_constant(id3, e4),
            "vector_plus_constant GF(2)^3->GF(2^2)^4": vector_plus_constant(sub3, e4),
            "vector_plus_constant GF(2^2)^3->GF(2^2)^4": vector_plus_constant(frob3, e4),
            "indicator GF(2)^2->GF(2)^4": vector_indicator(F2, 2, F2, 4),
            "indicator GF(2)^3->GF(2)^8": vector_indicator(F2, 3, F2, 8),
        },
        "pgl": {
            "point_indicator PG(1,2)->GF(2)^3": point_indicator(proj_points(F2, 2), F2, 3),
            "point_indicator PG(2,2)->GF(2)^7": point_indicator(proj_points(F2, 3), F2, 7),
        },
    }


def suite_examples(config: SuiteConfig, report: SuiteReport) -> None:
    """GL/PGL-mappings far from semilinear once dim V_g exceeds n."""
    maps = example_maps()
    for name, g in maps["gl"].items():
        want = g.n + 1 if name.startswith("vector_plus_constant") else g.domain_field.q**g.n
        for mode in (GENERATORS, EXHAUSTIVE):
            rep = check_gl_mapping(g, mode, verdict=False)
            report.expect(rep.is_gl_mapping, "example is not a GL-mapping", example=name, mode=mode)
            report.expect(rep.dim_Vg == want, "unexpected dim V_g", example=name, got=rep.dim_Vg, want=want)
        report.cases.append({"example": name, "is_gl": rep.is_gl_mapping, "dim_Vg": rep.dim_Vg, "expected_dim": want})
    for name, f in maps["pgl"].items():
        want = len(f.domain)
        for mode in (GENERATORS, EXHAUSTIVE):
            rep = check_pgl_mapping(f, mode, verdict=False)
            report.expect(rep.is_pgl_mapping, "example is not a PGL-mapping", example=name, mode=mode)
            report.expect(rep.dim_Vf == want, "unexpected dim V_f", example=name, got=rep.dim_Vf, want=want)
        report.cases.append({"example": name, "is_pgl": rep.is_pgl_mapping, "dim_Vf": rep.dim_Vf, "expected_dim": want})
    # the vector-plus-constant construction refuses a y inside the image
    try:
        vector_plus_constant(SemilinearMap(enumerate_homs(F2, F2)[0], ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0))), (1, 0, 0, 0))
        report.fail("y in the image was accepted")
    except GLMapsError:
        pass
    report.counts["gl_examples"] = len(maps["gl"])
    report.counts["pgl_examples"] = len(maps["pgl"])


def _corrupt(f: PointMap, rng: np.random.Generator) -> tuple[PointMap, int, int]:
    i = int(rng.integers(len(f.domain)))
    j = int(rng.integers(len(f.codomain) - 1))
    if j >= f.table[i]:
        j += 1
    table = list(f.table)
    table[i] = j
    return PointMap(f.domain, f.codomain, tuple(table)), i, j


def suite_ftpg(config: SuiteConfig, report: SuiteReport) -> None:
    """pi(l) reconstructs to a scalar multiple of l; perturbed maps give certificates."""
    rng = np.random.default_rng(config.seed)
    report.seed = config.seed
    ok = Counter()
    for k in range(config.roundtrips):
        src, dst = CONVERSE_PAIRS[k % len(CONVERSE_PAIRS)]
        l = random_strong_embedding(rng, src, dst)
        f = induced_projective(l)
        pair = f"{src.spec}^3->{dst.spec}^3"
        try:
            rec = reconstruct_semilinear(f)
        except ReconstructionError as exc:
            report.fail("reconstruction failed", pair=pair, embedding=l.to_json(), kind=exc.kind)
            continue
        a = scalar_multiple_of(semilinear_table(rec), l)
        if a is None or rec.sigma != l.sigma:
            report.fail("reconstruction is not a scalar multiple", pair=pair, embedding=l.to_json())
            continue
        ok[pair] += 1
        # the induced-embedding verdict of the PGL check takes the same path
        if k < 20:
            pgl = check_pgl_mapping(f, GENERATORS)
            emb = pgl.induced_by_embedding
            report.expect(
                pgl.is_pgl_mapping and emb is not None and emb.is_strong,
                "PGL check did not recover the embedding",
                pair=pair,
            )
    kinds: Counter = Counter()
    for k in range(config.corruptions):
        src, dst = CONVERSE_PAIRS[k % len(CONVERSE_PAIRS)]
        f = induced_projective(random_strong_embedding(rng, src, dst))
        bad, i, j = _corrupt(f, rng)
        try:
            reconstruct_semilinear(bad)
            report.fail("corrupted map reconstructed", point=i, new_image=j)
        except ReconstructionError as exc:
            kinds[exc.kind] += 1
    report.counts["roundtrips"] = config.roundtrips
    report.counts["roundtrips_ok"] = sum(ok.values())
    report.counts["roundtrips_by_pair"] = dict(sorted(ok.items()))
    report.counts["corruptions"] = config.corruptions
    report.counts["certificates"] = sum(kinds.values())
    report.counts["certificate_kinds"] = dict(sorted(kinds.items()))


def suite_lemma_invariants(config: SuiteConfig, report: SuiteReport, cache: dict | None = None) -> None:
    """Structural invariants of every certified GL- and PGL-mapping."""
    totals: Counter = Counter()
    checked = Counter()

    def record(source: str, g: MappingTable) -> None:
        counts = gl_mapping_invariants(g)
        checked[source] += 1
        for key, v in counts.items():
            totals[key] += v
            if v:
                report.fail("invariant violated", source=source, invariant=key, violations=v, table=g.codes)

    reps = (cache or {}).get("theorem1") or [exhaustive_theorem1_search(F2, 3, F2, 3, threads=config.threads)]
    dom3, cod3 = vector_space(F2, 3), vector_space(F2, 3)
    for codes in reps[0].nontrivial_tables:
        record("theorem1", MappingTable.from_codes(dom3, cod3, codes))
    for l in converse_embeddings(config.seed):
        record("converse", semilinear_table(l))
    for g in example_maps()["gl"].values():
        record("examples", g)

    # u -> u-bar is multiplicative on sampled pairs of generators
    pairs_checked = 0
    for g in (semilinear_table(l) for l in converse_embeddings(config.seed)[::24]):
        gens = gl_generators(g.n, g.domain_field)
        ok = induced_hom_is_homomorphism(g, itertools.product(gens, gens))
        pairs_checked += 1
        totals["induced_hom_multiplicative"] += not ok
        report.expect(ok, "u -> u-bar is not multiplicative", table=g.codes)

    # point maps
    pgl_maps = list(example_maps()["pgl"].values())
    rng = np.random.default_rng(config.seed)
    pgl_maps += [induced_projective(random_strong_embedding(rng, s, d)) for s, d in CONVERSE_PAIRS]
    for f in pgl_maps:
        v = len(point_map_injective(f))
        totals["point_map_injective"] += v
        checked["pgl"] += 1
        report.expect(v == 0, "PGL-mapping is not injective", table=list(f.table))
    pg22 = pgl_maps[1]
    v = len(induced_projectivities_faithful(pg22, enumerate_pgl(F2, 3)))
    totals["induced_projectivities_faithful"] += v
    report.expect(v == 0, "h -> h-bar is not injective on PGL(3,2)")

    for f, n in ((F3, 2), (F3, 3)):
        space = proj_points(f, n)
        subsets = harmonic_subsets(space)
        v = len(harmonic_intersections(space, subsets))
        totals["harmonic_intersections"] += v
        report.cases.append({"space": space.spec, "harmonic_subsets": len(subsets), "violations": v})
        report.expect(v == 0, "two harmonic subsets share three points", space=space.spec)

    report.seed = config.seed
    report.counts = {"mappings_checked": dict(sorted(checked.items())), "violations": dict(sorted(totals.items()))}
    report.counts["homomorphism_samples"] = pairs_checked


def suite_mode_agreement(config: SuiteConfig, report: SuiteReport) -> None:
    """Generator mode, exhaustive mode and the bit-mask kernel give identical verdicts."""

    def compare(label: str, f: Field, n: int, tables: list[list[int]]) -> None:
        kernel = Gf2Kernel(f, n, n)
        base = vector_space(f, n).size
        fast = kernel.is_gl(np.array([table_index(c, base) for c in tables], dtype=np.int64))
        positives = 0
        for codes, k in zip(tables, fast):
            g = vector_table(f, n, f, n, codes)
            a = check_gl_mapping(g, GENERATORS, verdict=False).is_gl_mapping
            b = check_gl_mapping(g, EXHAUSTIVE, verdict=False).is_gl_mapping
            positives += a
            report.expect(a == b == bool(k), "mode disagreement", family=label, table=codes, generators=a, exhaustive=b, kernel=bool(k))
        report.cases.append({"family": label, "tables": len(tables), "gl_mappings": positives})

    all_2 = [[(t >> (2 * (3 - x))) & 3 for x in range(4)] for t in range(256)]
    compare("all GF(2)^2->GF(2)^2", F2, 2, all_2)

    rng = np.random.default_rng(config.seed)
    drawn = rng.integers(0, 8, size=(config.random_tables, 8))
    compare("random GF(2)^3->GF(2)^3", F2, 3, [[int(a) for a in row] for row in drawn])

    # random tables are almost never GL-mappings; add the known positives
    space = vector_space(F2, 3)
    known = [space.images(u) for u in enumerate_gl(3, F2)]
    known += [[0] + [c] * 7 for c in range(8)] + [[c] * 8 for c in range(8)]
    compare("GL(3,2) and constant-off-origin GF(2)^3->GF(2)^3", F2, 3, [list(c) for c in known])

    report.seed = config.seed
    report.counts["tables"] = sum(c["tables"] for c in report.cases)
    report.counts["disagreements"] = len(report.failures)


_RUNNERS: dict[str, Callable] = {
    "prop1": suite_prop1,
    "prop2": suite_prop2,
    "harmonic": suite_harmonic,
    "theorem1-exhaustive": suite_theorem1,
    "examples": suite_examples,
    "ftpg-roundtrip": suite_ftpg,
    "lemma-invariants": suite_lemma_invariants,
    "converse": suite_converse,
    "mode-agreement": suite_mode_agreement,
}


def run_suite(name: str, config: SuiteConfig | None = None, cache: dict | None = None) -> SuiteReport:
    """Run one suite.  ``cache`` lets theorem1-exhaustive hand its tables to lemma-invariants."""
    if name not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    config = config or SuiteConfig()
    config.check_guards()
    report = SuiteReport(name)
    started = time.perf_counter()
    runner = _RUNNERS[name]
    if name in ("theorem1-exhaustive", "lemma-invariants"):
        runner(config, report, cache)
    else:
        runner(config, report)
    report.wall_time_s = round(time.perf_counter() - started, 3)
    return report

