"""Command-line interface.

Line-oriented by design: graph6 goes to stdout, diagnostics to stderr,
machine-readable JSON behind --json where both make sense.  Exit codes:
0 success, 1 negative answer (`iso` mismatch, failed verification), 2 usage
errors, 3 internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import CensusConfig, census_summary, enumerate_haar_census
from .classify import analyze, delta_automorphism, verify_haar_witness, verify_theorems
from .constructions import (
    Graph,
    cayley_graph,
    cyclic_cover_sigma0,
    double_generalized_petersen,
    generalized_petersen,
    haar_graph,
    kronecker_cover,
    to_adjacency_text,
)
from .graph6 import Graph6Error, decode_graph6, encode_graph6
from .groups import (
    FiniteGroup,
    cyclic,
    direct_product,
    generalized_dihedral,
    load_group_file,
    semidirect_cyclic,
)


class UsageError(ValueError):
    pass


def _parse_group(spec: str) -> FiniteGroup:
    """Group specs: cyclic:N, dihedral:N (order 2N), product:N,M,
    semidirect:M,K,R, or a path to a .grp catalog file."""
    if ":" not in spec:
        return load_group_file(spec).group
    kind, _, rest = spec.partition(":")
    try:
        args = [int(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise UsageError(f"malformed group spec {spec!r}")
    if kind == "cyclic" and len(args) == 1:
        return cyclic(args[0])
    if kind == "dihedral" and len(args) == 1:
        return generalized_dihedral(cyclic(args[0]))
    if kind == "product" and len(args) == 2:
        return direct_product(cyclic(args[0]), cyclic(args[1]))
    if kind == "semidirect" and len(args) == 3:
        return semidirect_cyclic(*args)
    if kind == "file" and rest:
        return load_group_file(rest).group
    raise UsageError(f"unknown group spec {spec!r}")


def _parse_subset(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"subset must be a comma-separated list of indices, got {text!r}")


def _read_graph(source: str) -> Graph:
    """graph6 from a literal, a file, or '-' for stdin."""
    if source == "-":
        data = sys.stdin.read().strip()
    elif Path(source).exists():
        data = Path(source).read_text().strip()
    else:
        data = source
    lines = [ln for ln in data.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise UsageError("expected exactly one graph6 line")
    return decode_graph6(lines[0].strip())


def _cmd_construct(args) -> int:
    fam = args.family
    if fam == "gp":
        graph = generalized_petersen(args.n, args.r)
    elif fam == "dgp":
        graph, _ = double_generalized_petersen(args.n, args.r)
    elif fam == "sigma0":
        graph = cyclic_cover_sigma0(args.n, args.a, args.k, args.b)
    elif fam == "haar":
        if not args.group or args.set is None:
            raise UsageError("haar needs --group and --set")
        graph = haar_graph(_parse_group(args.group), _parse_subset(args.set))
    elif fam == "cayley":
        if not args.group or args.set is None:
            raise UsageError("cayley needs --group and --set")
        graph = cayley_graph(_parse_group(args.group), _parse_subset(args.set))
    elif fam == "kronecker":
        graph = kronecker_cover(_read_graph(args.input or "-"))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    if args.format == "graph6":
        text = encode_graph6(graph).decode("ascii") + "\n"
    else:
        text = to_adjacency_text(graph)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_analyze(args) -> int:
    graph = _read_graph(args.graph)
    report = analyze(graph)
    json.dump(report.to_json_dict(), sys.stdout, indent=None if args.compact else 2)
    sys.stdout.write("\n")
    return 0


def _cmd_iso(args) -> int:
    from .autsearch import is_isomorphic

    g1 = _read_graph(args.first)
    g2 = _read_graph(args.second)
    same = is_isomorphic(g1, g2)
    print("isomorphic" if same else "non-isomorphic")
    return 0 if same else 1


def _cmd_delta(args) -> int:
    report = verify_haar_witness(args.n, args.r)
    if args.json:
        json.dump(report.to_json_dict(), sys.stdout)
        sys.stdout.write("\n")
    else:
        d = delta_automorphism(args.n, args.r)
        print(f"crossing automorphism for n={args.n} r={args.r} (normalized r={report.normalized_r}):")
        print(f"  images: {list(d.images)}")
        print(f"  conjugation exponent on the double rotation: {report.conjugation_exponent}")
        print(f"  generated group order: {report.group_order} (expected {2 * args.n})")
        print(f"  regular on both parts: {report.regular_on_parts}")
        print(f"  matches semidirect model: {report.matches_semidirect_model}")
        print(f"  ok: {report.ok}")
    return 0 if report.ok else 1


def _cmd_verify_theorems(args) -> int:
    sweep = verify_theorems(args.max_n, workers=args.workers)
    for row in sweep.rows:
        status = "ok" if row.match else "MISMATCH"
        print(
            f"n={row.n:3d} r={row.r:3d} vt={int(row.computed_vt)} cayley={int(row.computed_cayley)} "
            f"haar={int(row.computed_haar)} branch={row.branch:<22} {status}"
        )
    bad = sweep.mismatches
    print(f"checked {len(sweep.rows)} parameter pairs up to n={args.max_n}: "
          f"{'all consistent' if not bad else f'{len(bad)} mismatches'}", file=sys.stderr)
    return 0 if not bad else 1


def _cmd_census(args) -> int:
    cfg = CensusConfig(
        catalog_path=args.catalog,
        min_order=args.min_order,
        max_order=args.max_order,
        min_valency=args.min_valency,
        max_valency=args.max_valency,
        filter=args.filter,
        workers=args.workers,
        output_path=args.out,
        checkpoint_path=args.checkpoint,
    )
    records = enumerate_haar_census(cfg, progress=lambda m: print(m, file=sys.stderr, flush=True))
    for rec in records:
        if args.json:
            print(json.dumps(rec.to_json_dict()))
        else:
            print(rec.certificate)
    print(json.dumps(census_summary(records)), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haarforge",
        description="Construct, classify and enumerate Haar and double generalized Petersen graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a graph family member, emit graph6")
    c.add_argument("--family", required=True, choices=["gp", "dgp", "sigma0", "haar", "cayley", "kronecker"])
    c.add_argument("--n", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--group", help="cyclic:N, dihedral:N, product:N,M, semidirect:M,K,R or a .grp file")
    c.add_argument("--set", help="comma-separated element indices")
    c.add_argument("--input", help="graph6 input (literal, file or -) for cover families")
    c.add_argument("--format", choices=["graph6", "adj"], default="graph6")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_construct)

    a = sub.add_parser("analyze", help="classification report (JSON) for a graph6 input")
    a.add_argument("graph", help="graph6 literal, file, or - for stdin")
    a.add_argument("--compact", action="store_true")
    a.set_defaults(func=_cmd_analyze)

    i = sub.add_parser("iso", help="isomorphism test; exit 0 iff isomorphic")
    i.add_argument("first")
    i.add_argument("second")
    i.set_defaults(func=_cmd_iso)

    d = sub.add_parser("delta", help="verify the crossing-automorphism Haar witness for D(n, r)")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=_cmd_delta)

    v = sub.add_parser("verify-theorems", help="computed vs predicted flags over all D(n, r)")
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--workers", type=int, default=None)
    v.set_defaults(func=_cmd_verify_theorems)

    s = sub.add_parser("census", help="enumerate Haar graphs over a group catalog")
    s.add_argument("--catalog", required=True)
    s.add_argument("--min-order", type=int, required=True)
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--min-valency", type=int, required=True)
    s.add_argument("--max-valency", type=int, required=True)
    s.add_argument("--filter", choices=["all", "vt", "vt-noncayley"], default="all")
    s.add_argument("--workers", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--checkpoint")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_census)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (UsageError, Graph6Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    except Exception as exc:  # internal failures get a distinct code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main():  # console entry point
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
