"""Command line interface: ``wlgroups <command> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments, structure
from .game import (BudgetExceeded as GameBudget, GameConfig, GameSpec, SizeMismatch, Solver,
                   dump_certificate, minimal_rounds, verify_certificate)
from .groups import (CATALOG, GroupError, OrderLimitExceeded, TableParseError, catalog_group,
                     catalog_names, format_table, from_table, named_order, parse_name,
                     parse_table_text, resolve_group)
from .wl import CorollaryViolation, SizeLimitExceeded, coloring_at, default_workers, run_wl

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVALID = 4
EXIT_BUDGET = 5
EXIT_CONTRACT = 6

EPILOG = """\
exit codes:
  0  success (wl and game exit 0 whatever the verdict; read the verdict line)
  2  usage error
  3  file missing or table text unparseable
  4  invalid group (table violates a group axiom, bad constructor parameters)
  5  size or time budget exceeded
  6  contract violation (check-equivalence found a failing cell)

environment:
  WLGROUPS_THREADS  default worker count for --threads (default 1)
"""


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def human(self, text: str):
        if self.fmt == "human":
            print(text, file=self.stream)

    def kv(self, **pairs):
        if self.fmt == "kv":
            print(" ".join(f"{k}={experiments._fmt(v)}" for k, v in pairs.items()), file=self.stream)

    def both(self, text: str, **pairs):
        self.human(text)
        self.kv(**pairs)


def _group(spec: str):
    if spec not in CATALOG and not Path(spec).exists() and ("/" in spec or spec.endswith(".txt")):
        raise FileNotFoundError(f"no such file: {spec}")
    G = resolve_group(spec)
    if not G.name:
        G.name = spec
    return G


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(args, out: Output) -> int:
    names = catalog_names(args.max_order)
    if args.write:
        Path(args.write).mkdir(parents=True, exist_ok=True)
    for name in names:
        order = named_order(parse_name(CATALOG[name]))
        if args.write:
            (Path(args.write) / f"{name}.txt").write_text(format_table(catalog_group(name)))
        out.both(f"{name:8s} order={order:<6d} {CATALOG[name]}", name=name, order=order,
                 constructor=CATALOG[name])
    return EXIT_OK


def cmd_validate(args, out: Output) -> int:
    text = Path(args.file).read_text()
    rows = parse_table_text(text)
    try:
        G = from_table(rows, max_order=args.max_order)
    except TableParseError:
        raise
    except GroupError as exc:
        out.both(f"INVALID {type(exc).__name__}: {exc}", valid=False, error=type(exc).__name__)
        return EXIT_INVALID
    out.both(f"VALID order={G.order}", valid=True, order=G.order, identity=G.identity)
    return EXIT_OK


def cmd_analyze(args, out: Output) -> int:
    G = _group(args.group)
    rep = structure.analyze(G)
    out.human(f"group={G.name}")
    for key, val in rep.items():
        print(f"{key}={experiments._fmt(val)}", file=out.stream)
    return EXIT_OK


def cmd_wl(args, out: Output) -> int:
    G, H = _group(args.left), _group(args.right)
    rep = run_wl(G, H, args.k, args.version, args.q, max_order=args.max_order, workers=args.threads)
    out.human(f"G={G.name} order={G.order}")
    out.human(f"H={H.name} order={H.order}")
    out.human(f"k={args.k} q={args.q} version={args.version}")
    out.kv(left=G.name, right=H.name, order_left=G.order, order_right=H.order,
           k=args.k, q=args.q, version=args.version)
    for i, (joint, cl, cr) in enumerate(rep.rounds):
        out.both(f"round {i}: classes G={cl} H={cr} joint={joint}",
                 round=i, classes_left=cl, classes_right=cr, classes_joint=joint)
    if args.r is not None:
        if G.order != H.order:
            at_r = True
        else:
            c = coloring_at(G, H, args.k, args.r, args.version, args.q,
                            max_order=args.max_order, workers=args.threads)
            at_r = not c.identity_colors_equal()
        out.both(f"at round {args.r}: {'distinguished' if at_r else 'not distinguished'}",
                 at_round=args.r, distinguished_at_round=at_r)
    out.kv(stable_round=rep.stable_round, first_round=rep.first_round,
           first_multiset_round=rep.first_multiset_round, distinguished=rep.distinguished)
    print(rep.verdict(), file=out.stream)
    if args.plot:
        from .plotting import plot_wl_rounds
        plot_wl_rounds(rep, args.plot, labels=(G.name, H.name))
        out.both(f"figure written to {args.plot}", figure=args.plot)
    return EXIT_OK


def _parse_start(text: str | None, k: int) -> GameConfig:
    if not text:
        return GameConfig.empty(k)
    try:
        left, right = text.split(":")
        xs = [int(t) for t in left.split(",") if t]
        ys = [int(t) for t in right.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError("--start expects 'x1,x2,...:y1,y2,...'") from None
    if len(xs) != len(ys) or len(xs) > k:
        raise argparse.ArgumentTypeError("--start tuples must have equal length at most k")
    slots = tuple(zip(xs, ys)) + (None,) * (k - len(xs))
    return GameConfig(slots)


def cmd_game(args, out: Output) -> int:
    G, H = _group(args.left), _group(args.right)
    spec = GameSpec(args.k, args.r, args.q, args.version)
    if G.order != H.order:
        out.both("Spoiler wins at round 0 (orders differ)", spoiler_wins=True, min_rounds=0)
        return EXIT_OK
    start = _parse_start(args.start, args.k)
    budget = dict(max_order=args.max_order, time_limit=args.time_limit)
    best = minimal_rounds(G, H, spec, start, inverse_pruning=args.inverse_pruning, **budget)
    out.kv(left=G.name, right=H.name, k=args.k, r=args.r, q=args.q, version=args.version,
           inverse_pruning=args.inverse_pruning)
    if best is None:
        out.both(f"Duplicator survives {args.r} rounds", spoiler_wins=False, min_rounds=None)
        return EXIT_OK
    out.both(f"Spoiler wins within {args.r} rounds (minimal r={best})", spoiler_wins=True, min_rounds=best)
    if args.certificate:
        solver = Solver(G, H, args.k, args.q, args.version, inverse_pruning=args.inverse_pruning, **budget)
        cfg = start.normalized()
        solver.win(cfg, best)
        cert = solver.certificate(cfg, best)
        ok = verify_certificate(G, H, spec.with_rounds(best), start, cert)
        out.kv(certificate_verified=ok)
        text = dump_certificate(cert, max_lines=args.certificate_lines)
        if args.certificate_file:
            Path(args.certificate_file).write_text(dump_certificate(cert))
            out.both(f"certificate written to {args.certificate_file}", certificate=args.certificate_file)
        else:
            print(text, end="", file=out.stream)
        out.human(f"certificate verified: {ok}")
    return EXIT_OK


def _cells_from(reports):
    """(row, column, ok) triples parsed back out of the kv lines."""
    for rep in reports:
        for line in rep.lines:
            d = dict(tok.split("=", 1) for tok in line.split())
            if "pair" not in d or "ok" not in d:
                continue
            col = f"{rep.item} k{d.get('k')} {d.get('version')}"
            if "r" in d:
                col += f" r{d['r']}"
            yield d["pair"], col, d["ok"] == "true"


def cmd_check_equivalence(args, out: Output) -> int:
    reports = experiments.equivalence_grid(args.max_order, args.k, args.r_max, samples=args.samples,
                                           workers=args.threads)
    passed = all(r.passed for r in reports)
    for rep in reports:
        if out.fmt == "kv":
            out.stream.write(rep.kv())
    cells = list(_cells_from(reports))
    rows = sorted({c[0] for c in cells}, key=lambda s: [c[0] for c in cells].index(s))
    cols = sorted({c[1] for c in cells}, key=lambda s: [c[1] for c in cells].index(s))
    table = {(a, b): ok for a, b, ok in cells}
    status = [[table.get((a, b)) for b in cols] for a in rows]
    if out.fmt == "human":
        width = max(len(a) for a in rows) if rows else 4
        for rep in reports:
            out.human(f"{rep.item}: {'PASS' if rep.passed else 'FAIL'}")
        out.human("")
        out.human(" " * width + "  " + " ".join(f"c{j}" for j in range(len(cols))))
        for a, row in zip(rows, status):
            marks = " ".join(("ok" if s else "XX") if s is not None else "--" for s in row)
            out.human(f"{a:<{width}}  {marks}")
        for j, c in enumerate(cols):
            out.human(f"  c{j} = {c}")
    print("ALL CELLS PASS" if passed else "SOME CELLS FAIL", file=out.stream)
    if args.plot:
        from .plotting import plot_check_matrix
        plot_check_matrix(rows, cols, status, args.plot, title=f"max order {args.max_order}, k<={args.k}")
        out.both(f"figure written to {args.plot}", figure=args.plot)
    return EXIT_OK if passed else EXIT_CONTRACT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wlgroups", description=__doc__.strip() + " Groups are catalog names "
                                "(see `catalog`), constructor expressions such as dihedral(4) or A4xZ5, "
                                "or Cayley-table files.",
                                epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--format", choices=("human", "kv"), default="human",
                   help="human readable or line-oriented key=value output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", help="list (and optionally write) the built-in groups")
    s.add_argument("--max-order", type=int, default=None)
    s.add_argument("--write", metavar="DIR", help="write each table to DIR/<name>.txt")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("validate", help="check a Cayley-table file")
    s.add_argument("file")
    s.add_argument("--max-order", type=int, default=10_000)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="structure report: radical, socle, factors, PKer")
    s.add_argument("group")
    s.set_defaults(func=cmd_analyze)

    def common(s, r_default):
        s.add_argument("left")
        s.add_argument("right")
        s.add_argument("--k", type=int, default=2)
        s.add_argument("--r", type=int, default=r_default)
        s.add_argument("--q", type=int, default=2)
        s.add_argument("--version", choices=("I", "II"), default="I")
        s.add_argument("--threads", type=int, default=default_workers())

    s = sub.add_parser("wl", help="run the WL refinement on two groups")
    common(s, None)
    s.add_argument("--max-order", type=int, default=None, help="override the size cap for this k")
    s.add_argument("--plot", metavar="PATH", help="write a class-count figure")
    s.set_defaults(func=cmd_wl)

    s = sub.add_parser("game", help="solve the bijective pebble game")
    common(s, 2)
    s.add_argument("--start", help="initial pebbling 'x1,x2:y1,y2' (default: empty board)")
    s.add_argument("--certificate", action="store_true", help="print Spoiler's strategy tree")
    s.add_argument("--certificate-file", metavar="PATH")
    s.add_argument("--certificate-lines", type=int, default=200)
    s.add_argument("--inverse-pruning", action="store_true")
    s.add_argument("--max-order", type=int, default=6)
    s.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    s.set_defaults(func=cmd_game)

    s = sub.add_parser("check-equivalence", help="coloring/game/corollary/version grid")
    s.add_argument("--max-order", type=int, default=6)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--r-max", type=int, default=2)
    s.add_argument("--samples", type=int, default=10, help="random pebblings per pair")
    s.add_argument("--threads", type=int, default=default_workers())
    s.add_argument("--plot", metavar="PATH", help="write the pass/fail matrix figure")
    s.set_defaults(func=cmd_check_equivalence)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        return args.func(args, out)
    except (TableParseError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GameBudget, structure.BudgetExceeded, SizeLimitExceeded, OrderLimitExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CorollaryViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except GroupError as exc:
        print(f"invalid group: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SizeMismatch as exc:  # pragma: no cover - handled in cmd_game
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
