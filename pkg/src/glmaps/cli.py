"""Command-line entry point ``glmaps``."""

from __future__ import annotations

import argparse
import sys

from glmaps.commutation import EXHAUSTIVE, GENERATORS, check_gl_mapping, check_pgl_mapping, semilinear_table
from glmaps.errors import GLMapsError, ParseError
from glmaps.experiments import SUITES, SuiteConfig, example_maps, run_suite
from glmaps.extendability import (
    classify_linear_subset,
    classify_projective_subset,
    extend_permutation_linear,
    extend_permutation_projective,
    failing_transposition_linear,
    failing_transposition_projective,
    transpositions,
)
from glmaps.gf_core import enumerate_homs, parse_field, parse_space
from glmaps.io import dumps, load_mapping, to_json
from glmaps.linalg import identity
from glmaps.maps import MappingTable, PointMap
from glmaps.projective import normalize
from glmaps.reconstruct import ReconstructionError, reconstruct_semilinear
from glmaps.search import exhaustive_theorem1_search
from glmaps.semilinear import SemilinearMap, induced_projective


def _emit(obj, args) -> None:
    text = dumps(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_points(text: str, n: int) -> list[tuple[int, ...]]:
    pts = []
    for chunk in text.split(";"):
        try:
            v = tuple(int(a) for a in chunk.split(","))
        except ValueError as exc:
            raise ParseError(f"bad vector {chunk!r}", "--points") from exc
        if len(v) != n:
            raise ParseError(f"vector {chunk!r} does not have {n} coordinates", "--points")
        pts.append(v)
    return pts


def cmd_classify(args) -> int:
    f = parse_field(args.field)
    xs = _parse_points(args.points, args.dim)
    for v in xs:
        if any(not 0 <= a < f.q for a in v):
            raise ParseError(f"coordinate out of range in {v}", "--points")
    if args.projective:
        xs = [normalize(v, f) for v in xs]
        cls = classify_projective_subset(xs, f)
        failing = failing_transposition_projective(xs, f)
        extend = extend_permutation_projective
    else:
        cls = classify_linear_subset(xs, f)
        failing = failing_transposition_linear(xs, f)
        extend = extend_permutation_linear
    matrices = {}
    if failing is None:
        for perm in transpositions(len(xs)):
            i, j = (k for k, p in enumerate(perm) if p != k)
            u = extend(xs, perm, f)
            matrices[f"{i},{j}"] = [list(r) for r in u] if u is not None else None
    _emit(
        {
            "class": str(cls),
            "fully_extendable": cls.fully_extendable,
            "witnesses": {
                "failing_transposition": list(failing) if failing else None,
                "extension_matrices": matrices,
            },
        },
        args,
    )
    return 0


def _load(path: str, kind: type):
    obj = load_mapping(path)
    if isinstance(obj, SemilinearMap):
        obj = semilinear_table(obj) if kind is MappingTable else induced_projective(obj)
    if not isinstance(obj, kind):
        raise ParseError(f"expected a {kind.__name__}", path)
    return obj


def cmd_check_gl(args) -> int:
    g = _load(args.mapping, MappingTable)
    rep = check_gl_mapping(g, EXHAUSTIVE if args.exhaustive else GENERATORS)
    _emit(rep.to_json(), args)
    return 0


def cmd_check_pgl(args) -> int:
    f = _load(args.map, PointMap)
    rep = check_pgl_mapping(f, EXHAUSTIVE if args.exhaustive else GENERATORS)
    _emit(rep.to_json(), args)
    return 0


def cmd_reconstruct(args) -> int:
    f = _load(args.map, PointMap)
    try:
        l = reconstruct_semilinear(f)
    except ReconstructionError as exc:
        _emit({"ok": False, "certificate": exc.certificate()}, args)
        return 1
    _emit(
        {
            "ok": True,
            "sigma": l.sigma.to_json(),
            "matrix": [list(r) for r in l.matrix],
            "certificate": {"points_checked": len(f.domain), "induces_map": True},
        },
        args,
    )
    return 0


def cmd_search(args) -> int:
    dom_f, n = parse_space(args.domain)
    cod_f, n2 = parse_space(args.codomain)
    rep = exhaustive_theorem1_search(
        dom_f,
        n,
        cod_f,
        n2,
        threads=args.threads,
        mode="sampled" if args.sampled else "exhaustive",
        samples=args.samples,
        seed=args.seed,
    )
    _emit(rep.to_json(timing=not args.no_timing), args)
    return 0 if rep.theorem_holds else 1


def cmd_verify(args) -> int:
    config = SuiteConfig(seed=args.seed, threads=args.threads)
    names = SUITES if args.suite == "all" else (args.suite,)
    cache: dict = {}
    reports = [run_suite(name, config, cache) for name in names]
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.suite}", file=sys.stderr)
    out = [r.to_json(timing=not args.no_timing) for r in reports]
    _emit(out[0] if len(out) == 1 else out, args)
    return 0 if all(r.passed for r in reports) else 1


def _builtin_examples() -> dict:
    ex = example_maps()
    out = dict(ex["gl"]) | dict(ex["pgl"])
    f4 = parse_field("GF(4)")
    out["frobenius GF(2^2)^3"] = SemilinearMap(enumerate_homs(f4, f4)[1], identity(3))
    out["frobenius points PG(2,4)"] = induced_projective(out["frobenius GF(2^2)^3"])
    return {name.split()[0] + ":" + name.split()[-1]: m for name, m in out.items()}


def cmd_example(args) -> int:
    examples = _builtin_examples()
    if args.name is None or args.name not in examples:
        print("available examples:", file=sys.stderr)
        for name in examples:
            print(f"  {name}", file=sys.stderr)
        return 0 if args.name is None else 2
    _emit(to_json(examples[args.name]), args)
    return 0


_COMMON_DEFAULTS = {"threads": 1, "seed": 0, "out": None, "no_timing": False}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker count for partitionable sweeps")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled modes")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write JSON here instead of stdout")
    common.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS, help="omit wall-time for byte-identical reports")

    parser = argparse.ArgumentParser(prog="glmaps", description="GL- and PGL-mappings over finite fields", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a subset for full extendability")
    p.add_argument("--field", required=True, help="e.g. GF(3) or GF(2^2)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--points", required=True, help='vectors as "1,0;0,1;1,1"')
    p.add_argument("--projective", action="store_true", help="treat the vectors as projective points")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-gl", parents=[common], help="test the GL commutation condition")
    p.add_argument("--mapping", required=True, help="JSON mapping table or semilinear map")
    p.add_argument("--exhaustive", action="store_true", help="test every group element, not only generators")
    p.set_defaults(func=cmd_check_gl)

    p = sub.add_parser("check-pgl", parents=[common], help="test the PGL commutation condition")
    p.add_argument("--map", required=True, help="JSON point map or semilinear map")
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_check_pgl)

    p = sub.add_parser("reconstruct", parents=[common], help="recover a semilinear map from a point map")
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("search-theorem1", parents=[common], help="sweep all tables for GL-mappings")
    p.add_argument("--domain", required=True, help="e.g. GF(2)^3")
    p.add_argument("--codomain", required=True)
    p.add_argument("--sampled", action="store_true")
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", parents=[common], help="emit a built-in map as JSON")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # shared options may appear before or after the subcommand
    for key, value in _COMMON_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.func(args)
    except GLMapsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
