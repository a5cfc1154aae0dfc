"""``rrg`` command line: verify, count, biject, series, render.

Exit codes: 0 success, 1 verification FAIL, 2 usage or parameter error,
3 invalid input object.
"""
from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys
from pathlib import Path

from rrg.enumerate import (
    CountTable,
    count_partition_family,
    count_path_family,
    count_refined_partitions,
    count_refined_paths,
)
from rrg.errors import ParityConstraintError, PathGeometryError, RRGError, UnknownSeriesError
from rrg.moves import cluster_counts, phi
from rrg.partitions import (
    Family,
    FamilySpec,
    cluster_decompose,
    gordon_mark,
    is_member,
    parse_partition,
)
from rrg.paths import (
    LatticePath,
    PathFamily,
    PathFamilySpec,
    major_index,
    peaks,
    psi,
    render_ascii,
    render_svg,
    theta_inverse,
)
from rrg.qseries import SERIES_IDS, eval_series
from rrg.verify import ALL_IDS, verify

log = logging.getLogger("rrg")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(doc) -> str:
    return json.dumps(doc, indent=2)


# -- verify ------------------------------------------------------------------


def _verify_runs(args) -> list[dict]:
    """One dict of settings per run: config sections first, flags override."""
    flags = {
        "identity": args.identity,
        "k": args.k,
        "a": args.a,
        "max_n": args.max_n,
        "order": args.order,
    }
    runs = []
    if args.config:
        cp = configparser.ConfigParser()
        if not cp.read(args.config):
            raise InputError(f"cannot read config file {args.config}")
        for name in cp.sections():
            sec = cp[name]
            run = {key: sec.get(key.replace("_", "-"), sec.get(key)) for key in flags}
            runs.append(run)
    if not runs:
        runs = [{}]
    merged = []
    for run in runs:
        settings = {key: (flags[key] if flags[key] is not None else run.get(key)) for key in flags}
        if settings["identity"] is None or settings["k"] is None:
            raise UsageError("verify needs --identity and --k (from flags or --config)")
        k = int(settings["k"])
        a = int(settings["a"]) if settings["a"] is not None else k
        bound = settings["max_n"] if settings["max_n"] is not None else settings["order"]
        merged.append({"identity": settings["identity"], "k": k, "a": a, "bound": int(bound) if bound is not None else 20})
    return merged


def cmd_verify(args) -> int:
    reports = []
    for run in _verify_runs(args):
        try:
            rep = verify(run["identity"], run["k"], run["a"], run["bound"])
        except (ParityConstraintError, UnknownSeriesError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        log.info(rep.summary())
        reports.append(rep)
    if args.format == "csv":
        lines = []
        for rep in reports:
            lines.append(f"# {rep.summary()}")
            refined = bool(rep.rows) and len(next(iter(rep.rows))) == 3
            lines.append(",".join((["l", "m", "n"] if refined else ["n"]) + rep.sides + ["match"]))
            for key, vals in sorted(rep.rows.items()):
                lines.append(",".join(str(x) for x in (*key, *vals, int(len(set(vals)) == 1))))
        _emit("\n".join(lines), args.out)
    else:
        docs = [rep.to_json() for rep in reports]
        _emit(_dump(docs[0] if len(docs) == 1 else docs), args.out)
    for rep in reports:
        print(rep.summary(), file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- count -------------------------------------------------------------------


def cmd_count(args) -> int:
    fam = args.family
    a = args.a if args.a is not None else args.k
    bound = args.max_n if args.max_n is not None else 20
    try:
        if fam in {f.value for f in Family}:
            spec = FamilySpec(fam, args.k, a)
            if args.refined:
                table = CountTable.from_refined(f"{fam}(l,m,n)", count_refined_partitions(spec, bound))
            else:
                table = CountTable.from_list(fam, count_partition_family(spec, bound))
        elif fam in {f.value for f in PathFamily}:
            spec = PathFamilySpec(fam, args.k, a)
            if args.refined:
                table = CountTable.from_refined(f"{fam}(l,m,n)", count_refined_paths(spec, bound))
            else:
                table = CountTable.from_list(fam, count_path_family(spec, bound))
        else:
            raise UsageError(f"unknown family {fam!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(table.to_csv() if args.format == "csv" else _dump(table.to_json()), args.out)
    return EXIT_OK


# -- biject ------------------------------------------------------------------


def _path_doc(path: LatticePath) -> dict:
    return {
        **path.to_json(),
        "peaks": [{"weight": p.weight, "height": p.height, "relative_height": p.relative_height} for p in peaks(path)],
        "major_index": major_index(path),
    }


def _load_path(source: str) -> LatticePath:
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
        return LatticePath.from_json(json.loads(text))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, PathGeometryError) as exc:
        raise InputError(f"cannot load path from {source}: {exc}") from exc


def cmd_biject(args) -> int:
    k = args.k
    a = args.a if args.a is not None else k
    if args.inverse:
        if not args.path:
            raise UsageError("--inverse needs --path")
        path = _load_path(args.path)
        if path.start_height != k - a or max(path.heights()) >= k:
            raise InputError(f"path violates the ({k},{a})-conditions")
        p = theta_inverse(path, k, a)
        doc = {"k": k, "a": a, "path": _path_doc(path), "partition": list(p.parts), "weight": p.weight}
        _emit(_dump(doc), args.out)
        return EXIT_OK
    if args.partition is None:
        raise UsageError("biject needs --partition or --path with --inverse")
    try:
        p = parse_partition(args.partition)
    except ValueError as exc:
        raise InputError(f"bad partition text: {exc}") from exc
    spec = FamilySpec("B", k, a)
    if not is_member(p, spec):
        freq = p.frequencies()
        if freq[1] > a - 1:
            why = f"f_1 = {freq[1]} exceeds a - 1 = {a - 1}"
        else:
            l = next(l for l in sorted(freq) if freq[l] + freq[l + 1] > k - 1)
            why = f"f_{l} + f_{l + 1} = {freq[l] + freq[l + 1]} exceeds k - 1 = {k - 1}"
        raise InputError(f"partition is not counted by B_{{{k},{a}}}: {why}")
    g = gordon_mark(p)
    ledger = phi(p, k, a)
    path = psi(ledger.counts, ledger.pis, k, a)
    if major_index(path) != p.weight:
        raise RRGError(f"major index {major_index(path)} differs from weight {p.weight}")
    doc = {
        "k": k,
        "a": a,
        "partition": list(p.parts),
        "weight": p.weight,
        "marking": g.to_json(),
        "clusters": [
            {"order": c.order, "members": [{"part": x, "mark": m} for x, m in c.members]} for c in cluster_decompose(g)
        ],
        "cluster_counts": list(cluster_counts(g, k)),
        "ledger": {**ledger.to_json(), "mu_weight": ledger.mu.weight},
        "path": _path_doc(path),
    }
    _emit(_dump(doc), args.out)
    return EXIT_OK


# -- series / render -----------------------------------------------------------


def cmd_series(args) -> int:
    a = args.a if args.a is not None else args.k
    order = args.order if args.order is not None else 20
    try:
        s = eval_series(args.expr, args.k, a, order)
    except (ParityConstraintError, UnknownSeriesError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    doc = s.to_json()
    if args.format == "csv":
        if "terms" in doc:
            rows = ["l,m,n,coeff"] + [
                f"{t['l']},{t['m']},{n},{c}" for t in doc["terms"] for n, c in enumerate(t["coeffs"]) if c
            ]
        else:
            rows = ["n,coeff"] + [f"{n},{c}" for n, c in enumerate(doc["coeffs"])]
        _emit("\n".join(rows), args.out)
    else:
        _emit(_dump(doc), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    if args.steps is not None:
        try:
            path = LatticePath.parse(args.start_height, args.steps)
        except (ValueError, PathGeometryError) as exc:
            raise InputError(f"bad step list: {exc}") from exc
    elif args.path:
        path = _load_path(args.path)
    else:
        raise UsageError("render needs --path FILE or --steps LIST")
    text = render_svg(path) if args.format == "svg" else render_ascii(path, grid=args.grid)
    _emit(text, args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rrg", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json"), default="json"):
        p.add_argument("--k", type=int)
        p.add_argument("--a", type=int, help="defaults to k")
        p.add_argument("--max-n", type=int)
        p.add_argument("--order", type=int)
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write to FILE instead of stdout")

    p = sub.add_parser("verify", help="check an identity coefficient by coefficient")
    p.add_argument("--identity", choices=ALL_IDS)
    p.add_argument("--config", help="INI file; each section is one run, flags override its keys")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="count table for a partition or path family")
    p.add_argument("--family", required=True, help="B, A, W, Wbar, Btilde, Atilde, E, Etilde, P, Pbar or Q")
    p.add_argument("--refined", action="store_true", help="tabulate by (l, m, n)")
    common(p, default="csv")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("biject", help="run the partition to path bijection")
    p.add_argument("--partition", help='comma separated parts, e.g. "13,11,11,2"')
    p.add_argument("--path", help="path JSON file ('-' for stdin)")
    p.add_argument("--inverse", action="store_true", help="map --path back to a partition")
    common(p, formats=("json",))
    p.set_defaults(func=cmd_biject)

    p = sub.add_parser("series", help="expand a generating function")
    p.add_argument("--expr", required=True, help=", ".join(SERIES_IDS))
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("render", help="draw a path as ASCII or SVG")
    p.add_argument("--path", help="path JSON file ('-' for stdin)")
    p.add_argument("--steps", help='step list such as "NE,SE"')
    p.add_argument("--start-height", type=int, default=0)
    p.add_argument("--grid", action="store_true", help="ASCII drawing on rows instead of one line")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    needs_k = args.command in ("count", "biject", "series") or (args.command == "verify" and not args.config)
    if needs_k and args.k is None:
        parser.error("--k is required")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rrg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"rrg: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
