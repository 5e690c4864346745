"""Command line entry point.

Exit status: 0 on success, 1 on invalid input, 2 when a solver gives up.
Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import io, report
from .equilibrium import REPLICATOR_EPS, VERIFY_EPS, solve
from .errors import NonConvergence, ValidationError
from .game import build_game
from .partitions import enumerate_diagrams, enumerate_structures
from .stability import MODES, analyze_family, evaluate

log = logging.getLogger("coalform")


def _emit(rep: dict, as_json: bool) -> None:
    sys.stdout.write(report.to_json(rep) if as_json else report.render_table(rep))


def cmd_enumerate(args) -> None:
    if args.diagrams:
        rep = report.enumeration_report(args.players, args.max_size, diagrams=enumerate_diagrams(args.players, args.max_size))
    else:
        rep = report.enumeration_report(args.players, args.max_size,
                                        structures=enumerate_structures(args.players, args.max_size))
    _emit(rep, args.json)


def cmd_solve(args) -> None:
    game = build_game(io.load_spec(args.spec), force=args.force)
    kwargs = {}
    if args.method == "support":
        kwargs["force"] = args.force
    elif args.method == "replicator":
        kwargs.update(steps=args.steps, polish=not args.no_polish)
    eps = args.eps if args.eps is not None else (REPLICATOR_EPS if args.method == "replicator" else VERIFY_EPS)
    results = solve(game.induced, args.method, eps=eps, **kwargs)
    _emit(report.solve_report(game, results, args.method), args.json)


def cmd_stability(args) -> None:
    games = [build_game(io.load_spec(p), force=args.force) for p in args.spec]
    fam = analyze_family(games, method=args.method)
    verdicts = evaluate(fam, args.criterion, args.mode, args.k)
    _emit(report.stability_report(fam, verdicts, args.criterion, args.mode), args.json)


def cmd_example(args) -> None:
    kwargs = {}
    if args.name in ("pd", "pd-raised"):
        kwargs["k"] = args.max_size
    if args.name == "pd" and args.payoffs:
        parts = args.payoffs.split(",")
        if len(parts) != 4:
            raise ValidationError("--payoffs needs four values: reward,sucker,temptation,punishment")
        kwargs.update(zip(("reward", "sucker", "temptation", "punishment"), parts))
    spec = io.EXAMPLES[args.name](**kwargs)
    text = io.dump_spec(spec)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
        log.info("wrote %s", args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coalform", description="Coalition-structure formation games.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list Young diagrams or coalition structures")
    e.add_argument("--players", type=int, required=True)
    e.add_argument("--max-size", type=int, required=True)
    g = e.add_mutually_exclusive_group()
    g.add_argument("--diagrams", action="store_true")
    g.add_argument("--structures", action="store_true")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("solve", help="equilibria of the induced game of a spec")
    s.add_argument("--spec", required=True)
    s.add_argument("--method", choices=("pure", "support", "replicator", "auto"), default="support")
    s.add_argument("--eps", type=float)
    s.add_argument("--steps", type=int, default=100_000, help="replicator step budget")
    s.add_argument("--no-polish", action="store_true", help="plain replicator, no support polishing")
    s.add_argument("--json", action="store_true")
    s.add_argument("--force", action="store_true", help="skip the desk-scale guardrails")
    s.set_defaults(func=cmd_solve)

    st = sub.add_parser("stability", help="stability criteria over a family K = 1..N")
    st.add_argument("--spec", nargs="+", required=True, help="one spec per K")
    st.add_argument("--criterion", choices=("local", "global", "strong"), required=True)
    st.add_argument("--mode", choices=MODES, default="forall")
    st.add_argument("--k", type=int, help="only this K (local/global)")
    st.add_argument("--method", choices=("support", "auto"), default="auto")
    st.add_argument("--json", action="store_true")
    st.add_argument("--force", action="store_true")
    st.set_defaults(func=cmd_stability)

    x = sub.add_parser("example", help="write a built-in spec")
    x.add_argument("name", choices=sorted(io.EXAMPLES))
    x.add_argument("--payoffs", help="pd only: reward,sucker,temptation,punishment")
    x.add_argument("--max-size", type=int, default=2)
    x.add_argument("--out", help="output file (default stdout)")
    x.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
