"""Command-line front end.

One subcommand per surface: complex | nerve | ss | generation |
presentation | fio | verify-paper. Exit codes: 0 success, 1 failed check or
resource cap, 2 usage error (argparse's own convention).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import config_complex as cc
from . import fio
from . import spectral, verify
from .nerve import homology_csv, nerve
from .config_complex import ResourceLimitError


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_complex(args: argparse.Namespace) -> int:
    complex = cc.build_complex(args.particles, args.leaves)
    b0, b1 = cc.betti(complex)
    print(f"{complex.num_vertices} {complex.num_edges} {b0} {b1}")
    if args.export == "json":
        _write_or_print(complex.to_json(), args.out)
    elif args.export == "dot":
        _write_or_print(complex.to_dot(), args.out)
    return 0


def _parse_coeff(text: str) -> int | None:
    if text == "z":
        return None
    if text == "z2":
        return 2
    if text.startswith("zp:"):
        return int(text.split(":", 1)[1])
    raise argparse.ArgumentTypeError(f"bad coefficient spec {text!r}")


def cmd_nerve(args: argparse.Namespace) -> int:
    nv = nerve(args.rows, args.cols)
    degrees = [args.degree] if args.degree is not None else list(range(nv.complex.dim + 1))
    results = [(args.rows, args.cols, nv.homology(q, args.coeff)) for q in degrees]
    for _, _, res in results:
        torsion = "+".join(map(str, res.torsion)) or "-"
        print(f"{res.degree} {res.betti} {torsion} {res.coeff}")
    if args.export == "csv":
        _write_or_print(homology_csv(results), args.out)
    elif args.export == "json":
        _write_or_print(nv.complex.to_json(), args.out)
    return 0


def cmd_ss(args: argparse.Namespace) -> int:
    page = spectral.e1_page(args.particles, args.leaves)
    row0 = spectral.e2_row0(args.particles, args.leaves, page)
    print(f"E1_01_rank {page.row1_rank(0)}")
    print(f"E2_00_rank {row0[0]}")
    print(f"E2_10_rank {row0[1]}")
    print(f"E2_20_rank {row0[2]}")
    print(f"E2_01_rank {spectral.e2_01(args.particles, args.leaves, page)}")
    return 0


def cmd_generation(args: argparse.Namespace) -> int:
    if args.particles is not None:
        report = spectral.generation_check(args.particles, args.leaves)
        _write_or_print(report.to_json(), args.out)
        return 0
    table = spectral.generation_degree_table(args.leaves, args.max)
    text = spectral.generation_csv(args.leaves, table)
    _write_or_print(text, args.out)
    return 0


def cmd_presentation(args: argparse.Namespace) -> int:
    rows = spectral.presentation_evidence(args.leaves,
                                          list(range(2, args.max + 1)))
    _write_or_print(spectral.presentation_csv(args.leaves, rows), args.out)
    return 0


def cmd_fio(args: argparse.Namespace) -> int:
    if args.fio_command == "count":
        count = fio.count_morphisms(args.source, args.target, args.colors)
        print(f"morphisms {count.morphisms}")
        print(f"free_module_dimension {count.free_module_dimension}")
        return 0
    if args.fio_command == "enumerate":
        for f in fio.enumerate_morphisms(args.source, args.target, args.colors):
            print(f.to_json())
        return 0
    if args.fio_command == "compose":
        with open(args.outer) as fh:
            outer = fio.FioMorphism.from_json(fh.read())
        with open(args.inner) as fh:
            inner = fio.FioMorphism.from_json(fh.read())
        print(fio.compose(outer, inner).to_json())
        return 0
    if args.fio_command == "decompose":
        with open(args.morphism) as fh:
            f = fio.FioMorphism.from_json(fh.read())
        sigma, colors = fio.decompose(f)
        print(json.dumps({"sigma": list(sigma), "insertions": colors}))
        return 0
    raise AssertionError("unreachable")


def cmd_verify_paper(args: argparse.Namespace) -> int:
    records = verify.run_suite(args.budget)
    for r in records:
        print(f"{r.claim_id:34s} {r.status:7s} {r.seconds:8.3f}s  {r.locator}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(verify.report_json(records, args.budget))
    ok = verify.all_pass(records)
    print(f"{'all checks passed' if ok else 'FAILURES PRESENT'} "
          f"({sum(r.status == 'pass' for r in records)} pass, "
          f"{sum(r.status == 'fail' for r in records)} fail, "
          f"{sum(r.status == 'skipped' for r in records)} skipped)")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starconfig",
        description="Exact homology toolkit for configuration spaces of star graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complex", help="build a configuration complex")
    p.add_argument("--particles", type=int, required=True)
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--export", choices=["json", "dot"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("nerve", help="homology of a chessboard nerve")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--coeff", type=_parse_coeff, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--export", choices=["json", "csv"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("ss", help="first-page summary of the leaf cover")
    p.add_argument("--particles", type=int, required=True)
    p.add_argument("--leaves", type=int, required=True)
    p.set_defaults(func=cmd_ss)

    p = sub.add_parser("generation", help="inserted-classes cokernel ranks")
    p.add_argument("--leaves", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--particles", type=int)
    group.add_argument("--max", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generation)

    p = sub.add_parser("presentation", help="second nerve homology table")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("fio", help="colored-ordered injection calculus")
    fio_sub = p.add_subparsers(dest="fio_command", required=True)
    q = fio_sub.add_parser("count")
    q.add_argument("--source", type=int, required=True)
    q.add_argument("--target", type=int, required=True)
    q.add_argument("--colors", type=int, required=True)
    q = fio_sub.add_parser("enumerate")
    q.add_argument("--source", type=int, required=True)
    q.add_argument("--target", type=int, required=True)
    q.add_argument("--colors", type=int, required=True)
    q = fio_sub.add_parser("compose")
    q.add_argument("--outer", required=True)
    q.add_argument("--inner", required=True)
    q = fio_sub.add_parser("decompose")
    q.add_argument("--morphism", required=True)
    p.set_defaults(func=cmd_fio)

    p = sub.add_parser("verify-paper", help="recompute every reference value")
    p.add_argument("--budget", choices=["small", "full"], default="small")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
