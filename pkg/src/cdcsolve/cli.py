"""Command-line entry point.

Exit codes: 0 consistent / satisfiable, 1 inconsistent / unsatisfiable,
2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .fileformat import (
    NetworkFormatError,
    parse_network,
    pbm_text,
    print_network,
    render_ascii,
)
from .grid import IntRect, PixelRegion
from .matrix import DirectionMatrix, Model, is_valid_matrix
from .simplify import simplify_solution
from .solver import SolveOutcome, solve_basic, solve_disjunctive

EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _model(text: Optional[str]) -> Optional[Model]:
    if text is None:
        return None
    try:
        return Model.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _load(path: str, model: Optional[Model]):
    try:
        return parse_network(path, model)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except NetworkFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(
    regions: Sequence[PixelRegion],
    mbrs: Optional[Sequence[IntRect]],
    args: argparse.Namespace,
    title: str,
) -> None:
    frame = regions[0].frame
    print(f"frame {frame.n_x}x{frame.n_y}")
    if mbrs is not None:
        for i, m in enumerate(mbrs):
            print(f"mbr v{i + 1} {m}")
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    if args.format == "pbm":
        if out_dir is None:
            for i, r in enumerate(regions):
                print(f"# v{i + 1}")
                sys.stdout.write(pbm_text(r))
        else:
            for i, r in enumerate(regions):
                (out_dir / f"v{i + 1}.pbm").write_text(pbm_text(r))
            print(f"wrote {len(regions)} PBM files to {out_dir}")
    else:
        text = render_ascii(regions)
        if out_dir is None:
            sys.stdout.write(text)
        else:
            (out_dir / "solution.txt").write_text(text)
            print(f"wrote {out_dir / 'solution.txt'}")
    if args.figure:
        from .report import render_solution

        target = Path(args.figure)
        if out_dir is not None and not target.is_absolute() and target.parent == Path("."):
            target = out_dir / target
        render_solution(regions, target, mbrs, title)
        print(f"wrote {target}")


def _report_failure(outcome: SolveOutcome) -> int:
    print(f"inconsistent: {outcome.stage}", file=sys.stderr)
    if outcome.detail:
        print(outcome.detail, file=sys.stderr)
    print("inconsistent")
    return EXIT_INCONSISTENT


def _basic_outcome(args) -> SolveOutcome:
    nf = _load(args.file, _model(args.model))
    try:
        net = nf.basic()
    except NetworkFormatError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    return solve_basic(net, nf.model)


def cmd_check(args) -> int:
    outcome = _basic_outcome(args)
    if not outcome.consistent:
        return _report_failure(outcome)
    print("consistent")
    _emit(outcome.solution, outcome.mbrs, args, "maximal canonical solution")
    return EXIT_OK


def cmd_solve(args) -> int:
    nf = _load(args.file, _model(args.model))
    result = solve_disjunctive(nf.disjunctive(), nf.model)
    if not result.satisfiable:
        print(f"unsatisfiable after {result.leaves} basic refinements", file=sys.stderr)
        print("unsatisfiable")
        return EXIT_INCONSISTENT
    print("satisfiable")
    sys.stdout.write(print_network(result.refinement, nf.model))
    _emit(result.outcome.solution, result.outcome.mbrs, args, "solution of the chosen refinement")
    return EXIT_OK


def cmd_simplify(args) -> int:
    outcome = _basic_outcome(args)
    if outcome.model is Model.CDC_D:
        raise InputError("simplify works on connected regions (cdc or cdc-s)")
    if not outcome.consistent:
        return _report_failure(outcome)
    regions = simplify_solution(outcome)
    print("consistent")
    _emit(regions, [m.scaled(5) for m in outcome.mbrs], args, "simple-region solution")
    return EXIT_OK


def _matrix_arg(text: str, model: Model) -> DirectionMatrix:
    try:
        m = DirectionMatrix.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not is_valid_matrix(m, model):
        raise InputError(f"{text} is not a valid {model.value} relation")
    return m


def cmd_tables(args) -> int:
    from .relations import build_converse_table, weak_composition

    model = _model(args.model) or Model.CDC
    if args.which == "converses":
        if args.matrices:
            raise InputError("'converses' takes no matrix arguments")
        table = build_converse_table(model, workers=args.workers)
        rows = [(str(d), str(e)) for d, e in table.pairs()]
        _write_rows(args.out, ("relation", "converse"), rows)
        dist = " ".join(f"{k}:{v}" for k, v in table.size_distribution().items())
        print(f"pairs={table.pair_count}")
        print(f"distribution {dist}")
        if args.figure:
            from .report import render_converse_histogram

            render_converse_histogram(table, args.figure)
            print(f"wrote {args.figure}")
        return EXIT_OK
    if len(args.matrices) != 2:
        raise InputError("'compose' needs two matrices A B")
    a, b = (_matrix_arg(t, model) for t in args.matrices)
    result = weak_composition(a, b, model)
    rows = [(str(a), str(b), str(g)) for g in result.gammas]
    _write_rows(args.out, ("alpha", "beta", "gamma"), rows)
    print(f"relations={len(result.gammas)}")
    return EXIT_OK


def _write_rows(out: Optional[str], header, rows) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
        print(f"wrote {len(rows)} rows to {out}")
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _add_render_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="DIR", help="write renderings into DIR instead of stdout")
    p.add_argument("--format", choices=("ascii", "pbm"), default="ascii")
    p.add_argument("--figure", metavar="PNG", help="also draw the solution to a PNG file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdcsolve", description="Cardinal direction constraint solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a basic network and render its maximal solution")
    p.add_argument("file")
    p.add_argument("--model", choices=("cdc", "cdc-d", "cdc-s"), help="override the file header")
    _add_render_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="search a disjunctive network for a consistent refinement")
    p.add_argument("file")
    p.add_argument("--model", choices=("cdc", "cdc-d", "cdc-s"), help="override the file header")
    _add_render_opts(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simplify", help="render a solution made of simple regions (5x refined)")
    p.add_argument("file")
    p.add_argument("--model", choices=("cdc", "cdc-s"), help="override the file header")
    _add_render_opts(p)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("tables", help="converse table or weak composition as CSV")
    p.add_argument("which", choices=("converses", "compose"))
    p.add_argument("matrices", nargs="*", metavar="MATRIX")
    p.add_argument("--model", choices=("cdc", "cdc-d"), default="cdc")
    p.add_argument("--out", metavar="CSV", help="write rows to CSV instead of stdout")
    p.add_argument("--figure", metavar="PNG", help="converse-count histogram (converses only)")
    p.add_argument("--workers", type=int, default=1, help="processes for the converse sweep")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
