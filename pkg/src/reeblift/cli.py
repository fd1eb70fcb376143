"""Command-line entry point: ``gen``, ``reeb``, ``lift``, ``verify``, ``export-table``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import RankTooLarge, RankTooSmall, ReebLiftError
from .lifts import build_tower, format_tower, format_tower_metadata, minimal_heights
from .poset import format_poset, format_subset, hasse_digraph
from .reeb import augmented_pre_reeb, format_reeb, pre_reeb, to_dot
from .suite import check_rank, verify_all
from .towers import deletion
from .type_a import class_subset, nu_A
from .type_b import format_table, gamma_f
from .weak import format_word, perms, signed_perms, weak_poset_A, weak_poset_B

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _tsv_edges(g) -> str:
    return "".join(f"{g.label(a)}\t{g.label(b)}\t{k}\n" for a, b, k in g.sorted_edges())


def cmd_gen(args) -> int:
    check_rank(args.type, args.rank, lo=1 if args.type == "A" else 0)
    if args.type == "A":
        p, words = weak_poset_A(args.rank), perms(args.rank)
    else:
        p, words = weak_poset_B(args.rank), signed_perms(args.rank)
    if args.format == "text":
        text = format_poset(p)
    elif args.format == "tsv":
        text = "".join(format_word(w) + "\n" for w in words)
    else:
        text = to_dot(hasse_digraph(p), f"weak_{args.type}{args.rank}")
    _emit(text, args.out)
    return EXIT_OK


def cmd_reeb(args) -> int:
    check_rank(args.type, args.rank, lo=2)
    pr = deletion(args.type, args.rank)
    rg = augmented_pre_reeb(pr, jobs=args.jobs) if args.augmented else pre_reeb(pr)
    if args.format == "text":
        text = format_reeb(rg)
    elif args.format == "tsv":
        text = _tsv_edges(rg.graph)
    else:
        ranks = minimal_heights(pre_reeb(pr))
        text = to_dot(rg.graph, f"reeb_{args.type}{args.rank}", ranks)
    _emit(text, args.out)
    return EXIT_OK


def cmd_lift(args) -> int:
    check_rank(args.type, args.rank, lo=1 if args.type == "A" else 0)
    if args.format == "dot":
        raise UsageError("lift writes coordinates; use --format text or tsv")
    try:
        t = build_tower(args.type, args.rank, args.heights or "minimal", jobs=args.jobs)
    except ReebLiftError as exc:
        print(f"FAIL lift: {exc}", file=sys.stderr)
        return EXIT_FAIL
    meta = format_tower_metadata(t)
    _emit(format_tower(t), args.out)
    if args.out:
        Path(args.out + ".meta").write_text(meta, encoding="utf-8")
    else:
        sys.stderr.write(meta)
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify_all(args.type, args.rank, jobs=args.jobs)
    text = "".join(line + "\n" for line in rep.lines())
    _emit(text, args.out)
    if args.out:
        print(f"{'PASS' if rep.ok else 'FAIL'} {len(rep.items) - len(rep.failures())}/{len(rep.items)}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def _table_a(n: int) -> str:
    rg = augmented_pre_reeb(deletion("A", n))
    h = minimal_heights(rg)
    lines = []
    for c in sorted(rg.classes, key=h.get):
        A = class_subset(rg.representative(c))
        lines.append(f"{h[c]} {format_subset(A)} {nu_A(A)} {h[c]}\n")
    return "".join(lines)


def cmd_export_table(args) -> int:
    n = args.rank if args.rank is not None else 3
    if args.type == "A":
        check_rank("A", n, lo=2)
        if n > 6:
            raise RankTooLarge("export-table supports type A ranks up to 6")
    elif not 2 <= n <= 4:
        raise (RankTooLarge if n > 4 else RankTooSmall)("export-table supports type B ranks 2..4")
    if args.format == "dot":
        if args.type == "A":
            raise UsageError("DOT export of the flip graph is type B only")
        g = gamma_f(n)
        text = to_dot(g, f"Gamma_F{n}", {o: bin(o).count("1") for o in g.vertices})
    elif args.type == "A":
        text = _table_a(n)
    else:
        text = format_table(n)
    if args.format == "tsv":
        text = text.replace(" ", "\t")
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "reeb": cmd_reeb,
    "lift": cmd_lift,
    "verify": cmd_verify,
    "export-table": cmd_export_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reeblift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--type", choices=("A", "B"), default="A" if name != "export-table" else "B")
        p.add_argument("--rank", type=int, required=name != "export-table")
        p.add_argument("--augmented", action="store_true")
        p.add_argument("--heights", choices=("nu", "minimal"))
        p.add_argument("--format", choices=("text", "dot", "tsv"), default="text")
        p.add_argument("--out")
        p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.heights and args.command != "lift":
            raise UsageError("--heights applies only to lift")
        if args.augmented and args.command != "reeb":
            raise UsageError("--augmented applies only to reeb")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        return COMMANDS[args.command](args)
    except (UsageError, RankTooLarge, RankTooSmall, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
