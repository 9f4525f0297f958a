"""The ``tgc`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .construct import constructive_hamilton_path_traced
from .core import DomainError, Graph, GraphCollection, TGCParseError, parse_tgc, serialize_tgc
from .families import (
    COROLLARY_VARIANTS,
    Tag,
    certify_no_thc,
    classify,
    corollary_strategic_edge,
    generate_family,
    single_graph_corollary_families,
)
from .harness import sample_collection, threshold_scan, verify_families, verify_theorem1
from .solver import (
    find_longest_rainbow_cycle,
    find_transversal_hamilton_cycle,
    find_transversal_hamilton_path,
)

EXIT_OK = 0
EXIT_ABSENT = 1
EXIT_USAGE = 2
EXIT_CAMPAIGN_FAILURE = 3

FAMILY_CHOICES = [t.value for t in Tag if t is not Tag.UNKNOWN] + ["corollary"]


class _UsageError(Exception):
    pass


def _read(path: str) -> GraphCollection:
    if path == "-":
        return parse_tgc(sys.stdin.buffer.read())
    try:
        with open(path, "rb") as fh:
            return parse_tgc(fh.read())
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit_json(obj: object) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or comma list, got {text!r}") from None


def _param(text: str) -> tuple[str, object]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    nums = _int_list(value)
    return key, nums[0] if len(nums) == 1 else tuple(nums)


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "corollary":
        if args.variant is None:
            raise _UsageError("--variant is required for the corollary family")
        c = single_graph_corollary_families(args.n, args.variant)
        if args.strategic_edge:
            u, v = corollary_strategic_edge(args.n, args.variant)
            c = GraphCollection.copies(c.graphs[0].with_edge(u, v), c.m)
    else:
        params = dict(args.param or [])
        if args.t is not None:
            params["t"] = args.t
        c = generate_family(args.family, args.n, args.fill, args.seed, **params)
    _write(serialize_tgc(c), args.output)
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    c = _read(args.file)
    stage = None
    if args.target == "hamilton-cycle":
        found = find_transversal_hamilton_cycle(c)
    elif args.target == "hamilton-path":
        if args.method == "constructive":
            found, stage = constructive_hamilton_path_traced(c)
        else:
            found = find_transversal_hamilton_path(c)
    else:
        found = find_longest_rainbow_cycle(c, args.min_len)
    if args.json:
        out: dict = {"target": args.target, "present": found is not None,
                     "walk": found.to_dict() if found else None}
        if stage is not None:
            out["stage"] = stage
        _emit_json(out)
    elif found is None:
        print("absent")
    else:
        print("present")
        print("vertices:", " ".join(map(str, found.vertex_sequence)))
        print("colors:  ", " ".join(map(str, found.edge_colors)))
    return EXIT_OK if found is not None else EXIT_ABSENT


def _cmd_classify(args: argparse.Namespace) -> int:
    cls = classify(_read(args.file))
    if args.json:
        _emit_json(cls.to_dict())
    else:
        print(cls.name)
        if cls.witness is not None:
            print("witness:", json.dumps(cls.witness.to_dict(), sort_keys=True))
    return EXIT_ABSENT if cls.tag is Tag.UNKNOWN else EXIT_OK


def _cmd_certify(args: argparse.Namespace) -> int:
    c = _read(args.file)
    cls = classify(c)
    cert = certify_no_thc(c, cls) if cls.tag is not Tag.UNKNOWN else None
    if args.json:
        _emit_json({"class": cls.to_dict(), "certificate": cert.to_dict() if cert else None})
    elif cert is None:
        print(f"no certificate ({cls.name})")
    else:
        print(f"{cls.name}: {cert.reason.value}")
    return EXIT_OK if cert is not None else EXIT_ABSENT


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.campaign == "theorem1":
        reports = [verify_theorem1(n, args.mode, args.count, args.seed, args.min_degree, args.workers) for n in args.n]
    elif args.campaign == "families":
        reports = [verify_families(args.n, args.target, workers=args.workers)]
    else:
        reports = [threshold_scan(n, args.seed, args.count, args.workers) for n in args.n]
    if args.json:
        dicts = [r.to_dict(include_elapsed=not args.no_elapsed) for r in reports]
        _emit_json(dicts[0] if len(dicts) == 1 else dicts)
    else:
        for r in reports:
            extra = f", {r.skipped} skipped" if r.skipped else ""
            extra += f", {len(r.anomalies)} anomalies" if r.anomalies else ""
            status = "ok" if r.ok else "FAILED"
            print(f"{r.campaign} {json.dumps(r.parameters, sort_keys=True)}: "
                  f"{r.checked} checked, {len(r.failures)} failures{extra} [{status}] {r.elapsed_ms:.0f} ms")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_CAMPAIGN_FAILURE


def _cmd_sample(args: argparse.Namespace) -> int:
    _write(serialize_tgc(sample_collection(args.n, args.m, args.min_degree, args.seed)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tgc", description="Transversal Hamilton paths and cycles in graph collections.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an extremal family as TGC")
    gen.add_argument("--family", required=True, choices=FAMILY_CHOICES)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--fill", choices=["empty", "complete", "random"], default="complete")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--t", type=int, help="number of bipartite colors (hst)")
    gen.add_argument("--param", type=_param, action="append", metavar="KEY=VALUE",
                     help="family parameter, e.g. u=0, exceptional=2, pair=3,4")
    gen.add_argument("--variant", choices=sorted(COROLLARY_VARIANTS))
    gen.add_argument("--strategic-edge", action="store_true", help="add the edge that creates a Hamilton cycle")
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="search for a transversal/rainbow walk")
    solve.add_argument("--target", required=True, choices=["hamilton-cycle", "hamilton-path", "longest-rainbow-cycle"])
    solve.add_argument("--method", choices=["exact", "constructive"], default="exact")
    solve.add_argument("--min-len", type=int, default=3)
    solve.add_argument("file")
    solve.add_argument("--json", action="store_true")
    solve.set_defaults(func=_cmd_solve)

    for name, func, text in (("classify", _cmd_classify, "match an extremal family"),
                             ("certify", _cmd_certify, "certify absence of a transversal Hamilton cycle/path")):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    verify = sub.add_parser("verify", help="run a verification campaign")
    verify.add_argument("campaign", choices=["theorem1", "families", "threshold"])
    verify.add_argument("--n", type=_int_list, required=True)
    verify.add_argument("--mode", choices=["exhaustive", "sample"], default="sample")
    verify.add_argument("--count", type=int, default=100)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--min-degree", type=int)
    verify.add_argument("--target", choices=["cycle", "path", "both"], default="both")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--no-elapsed", action="store_true", help="omit timing from JSON output")
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=_cmd_verify)

    sample = sub.add_parser("sample", help="draw a degree-constrained random collection")
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--m", type=int, required=True)
    sample.add_argument("--min-degree", type=int, required=True)
    sample.add_argument("--seed", type=int, required=True)
    sample.add_argument("-o", "--output")
    sample.set_defaults(func=_cmd_sample)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TGCParseError, DomainError, _UsageError) as exc:
        print(f"tgc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
