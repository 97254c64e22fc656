"""Command line front end.

Four subcommands: `aut` transforms and inspects automata, `randaut`
generates random ones, `game` solves ownership-annotated automata, and
`mealy` turns machines into circuits or simulates them.  Automata are
read as HOA from file arguments or stdin ("-" also means stdin) and
written as HOA to stdout.

Exit status: 0 on success (and on all-yes answers for the query modes),
1 when a query answers no (a non-empty automaton under --is-empty, a
failed --check, an unrealizable game), 2 on usage or processing errors.

The ELAUT_COLOR_WORDS environment variable widens the per-edge color
storage of every parsed automaton to at least that many 32-bit words.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import algorithms, synthesis
from .acceptance import (AccClass, acc_name, change_parity, class_colors,
                         generalized_buchi, generalized_co_buchi,
                         generalized_rabin, parity, rabin, streett,
                         AcceptanceParseError, parse_acceptance)
from .graph import FLAG_NAMES, get_or_compute_flag, trim
from .hoa import parse_hoa_stream, print_dot, print_hoa, stats


def _min_nwords():
    raw = os.environ.get("ELAUT_COLOR_WORDS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError("ELAUT_COLOR_WORDS must be an integer: %r" % raw)
    if n < 1:
        raise ValueError("ELAUT_COLOR_WORDS must be >= 1")
    return n


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_automata(paths):
    if not paths:
        paths = ["-"]
    out = []
    nwords = _min_nwords()
    for path in paths:
        out.extend(parse_hoa_stream(_read_text(path), min_nwords=nwords))
    if not out:
        raise ValueError("no automata in the input")
    return out


def _parse_class(text):
    """An AccClass from its conventional name, or None."""
    toks = text.split()
    try:
        if toks == ["Buchi"]:
            return AccClass("Buchi")
        if toks == ["co-Buchi"]:
            return AccClass("co-Buchi")
        if toks == ["Fin-less"]:
            return AccClass("Fin-less")
        if len(toks) == 2 and toks[0] == "generalized-Buchi":
            return generalized_buchi(int(toks[1]))
        if len(toks) == 2 and toks[0] == "generalized-co-Buchi":
            return generalized_co_buchi(int(toks[1]))
        if len(toks) == 2 and toks[0] == "Rabin":
            return rabin(int(toks[1]))
        if len(toks) == 2 and toks[0] == "Streett":
            return streett(int(toks[1]))
        if len(toks) >= 2 and toks[0] == "generalized-Rabin":
            sizes = [int(t) for t in toks[2:]]
            if len(sizes) != int(toks[1]):
                raise ValueError("generalized-Rabin wants %s sizes"
                                 % toks[1])
            return generalized_rabin(sizes)
        if len(toks) == 4 and toks[0] == "parity":
            return parity(toks[1], toks[2], int(toks[3]))
    except ValueError as exc:
        raise ValueError("bad acceptance class %r: %s" % (text, exc))
    return None


def _print_run(aut, run):
    def step(idx):
        e = aut.edges[idx]
        return "  %d --[%s]--> %d" % (e.src, aut.store.print_label(e.cond),
                                      e.dst)

    lines = ["prefix:"]
    lines.extend(step(i) for i in run.prefix)
    lines.append("cycle:")
    lines.extend(step(i) for i in run.cycle)
    return "\n".join(lines)


def cmd_aut(args):
    auts = _read_automata(args.files)
    other = None
    if args.product:
        others = parse_hoa_stream(_read_text(args.product),
                                  min_nwords=_min_nwords())
        if len(others) != 1:
            raise ValueError("--product wants exactly one automaton")
        other = others[0]

    processed = []
    for aut in auts:
        if other is not None:
            aut = algorithms.product(aut, other)
        if args.remove_alternation:
            aut = algorithms.remove_alternation(aut)
        if args.remove_fin:
            aut = algorithms.remove_fin(aut)
        if args.change_parity:
            aut = change_parity(aut, args.change_parity)
        if args.trim:
            aut = trim(aut)
        processed.append(aut)

    if args.is_empty:
        status = 0
        for aut in processed:
            empty = algorithms.is_empty(aut)
            print("empty" if empty else "nonempty")
            if not empty:
                status = 1
        return status
    if args.accepting_run:
        status = 0
        for aut in processed:
            run = algorithms.accepting_run(aut)
            if run is None:
                print("no accepting run")
                status = 1
            else:
                print(_print_run(aut, run))
        return status
    if args.check:
        name = args.check.replace("-", "_")
        if name not in FLAG_NAMES:
            raise ValueError("unknown flag %r (one of: %s)"
                             % (args.check, ", ".join(FLAG_NAMES)))
        status = 0
        for aut in processed:
            answer = get_or_compute_flag(aut, name)
            print("yes" if answer else "no")
            if not answer:
                status = 1
        return status
    if args.acceptance_name:
        for aut in processed:
            name = acc_name(aut.acceptance, aut.num_sets)
            print(name if name is not None else "unknown")
        return 0
    if args.stats:
        blobs = [stats(aut, include_sccs=True) for aut in processed]
        if args.json:
            print(json.dumps(blobs if len(blobs) > 1 else blobs[0],
                             indent=2, sort_keys=True))
        else:
            for k, blob in enumerate(blobs):
                if k:
                    print()
                for key, value in blob.items():
                    print("%s: %s" % (key, value))
        return 0
    if args.dot:
        for aut in processed:
            sys.stdout.write(print_dot(aut, hide_sinks=args.hide_sinks))
        return 0
    for aut in processed:
        sys.stdout.write(print_hoa(aut))
    return 0


def cmd_randaut(args):
    acceptance = None
    colors = args.colors
    if args.acceptance and args.acceptance != "random":
        cls = _parse_class(args.acceptance)
        if cls is not None:
            acceptance = cls
            colors = max(colors, class_colors(cls))
        else:
            try:
                acceptance = parse_acceptance(args.acceptance)
            except AcceptanceParseError as exc:
                raise ValueError("bad --acceptance: %s" % exc)
            from .acceptance import used_colors
            used = used_colors(acceptance)
            if used:
                colors = max(colors, used.max_color() + 1)
    aut = algorithms.random_automaton(
        args.states, args.ap, density=args.density, colors=colors,
        color_density=args.color_density, acceptance=acceptance,
        seed=args.seed)
    sys.stdout.write(print_hoa(aut))
    return 0


def cmd_game(args):
    games = _read_automata(args.files)
    status = 0
    for game in games:
        sol = synthesis.solve_game(game)
        init = game.init
        realizable = init >= 0 and sol.winners[init] == 1
        if not realizable:
            status = 1
        if args.print_winners:
            print("winners: " + " ".join(str(w) for w in sol.winners))
        elif args.print_strategy_dot:
            sys.stdout.write(print_dot(game))
        elif args.to_mealy:
            if not realizable:
                print("elaut: game is not won by player 1 from the "
                      "initial state", file=sys.stderr)
                continue
            machine = synthesis.strategy_to_mealy(game, sol)
            sys.stdout.write(print_hoa(synthesis.mealy_to_automaton(machine)))
        else:
            print("winners: " + " ".join(str(w) for w in sol.winners))
            print("strategy: " + " ".join(
                "-" if i is None else str(i) for i in sol.strategy))
    return status


def cmd_mealy(args):
    auts = _read_automata(args.files)
    machines = [synthesis.automaton_to_mealy(aut) for aut in auts]
    for m in machines:
        synthesis.validate_mealy(m)
    if args.to_aiger:
        for m in machines:
            sys.stdout.write(synthesis.print_aiger(synthesis.mealy_to_aiger(m)))
        return 0
    if args.simulate is not None:
        steps = args.simulate.split(",") if args.simulate else []
        for m in machines:
            for row in synthesis.simulate_mealy(m, steps):
                print(row)
        return 0
    for m in machines:
        sys.stdout.write(print_hoa(synthesis.mealy_to_automaton(m)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="elaut",
        description="transition-based automata with Emerson-Lei acceptance")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("aut", help="inspect and transform automata")
    p.add_argument("files", nargs="*", help="HOA files ('-' or none: stdin)")
    p.add_argument("--stats", action="store_true",
                   help="print shape statistics")
    p.add_argument("--json", action="store_true",
                   help="with --stats, print JSON")
    p.add_argument("--dot", action="store_true", help="print Graphviz")
    p.add_argument("--hide-sinks", action="store_true",
                   help="with --dot, drop all-accepting sink states")
    p.add_argument("--is-empty", action="store_true",
                   help="report emptiness; exit 0 iff every automaton is "
                        "empty")
    p.add_argument("--accepting-run", action="store_true",
                   help="print an accepting lasso when one exists")
    p.add_argument("--remove-fin", action="store_true",
                   help="rewrite into Fin-free acceptance")
    p.add_argument("--remove-alternation", action="store_true",
                   help="rewrite away universal branching")
    p.add_argument("--product", metavar="FILE",
                   help="intersect with the automaton in FILE")
    p.add_argument("--change-parity", metavar="KIND",
                   help="convert parity style, e.g. 'max odd' or "
                        "'min-even'")
    p.add_argument("--trim", action="store_true",
                   help="drop unreachable states and false edges")
    p.add_argument("--acceptance-name", action="store_true",
                   help="print the conventional acceptance name")
    p.add_argument("--check", metavar="FLAG",
                   help="decide a structural flag (e.g. universal, weak)")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("randaut", help="generate a random automaton")
    p.add_argument("--states", type=int, default=10)
    p.add_argument("--ap", type=int, default=2,
                   help="number of atomic propositions")
    p.add_argument("--density", type=float, default=0.2,
                   help="per-state, per-letter edge probability")
    p.add_argument("--colors", type=int, default=0)
    p.add_argument("--color-density", type=float, default=0.2,
                   help="per-edge, per-color probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--acceptance", metavar="NAME",
                   help="a class name ('parity min even 4'), a formula, "
                        "or 'random'")
    p.set_defaults(func=cmd_randaut)

    p = sub.add_parser("game", help="solve ownership-annotated automata")
    p.add_argument("files", nargs="*")
    p.add_argument("--solve", action="store_true",
                   help="print winners and strategy (the default)")
    p.add_argument("--print-winners", action="store_true")
    p.add_argument("--print-strategy-dot", action="store_true")
    p.add_argument("--to-mealy", action="store_true",
                   help="print the induced machine as HOA")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("mealy", help="work with machines in HOA form")
    p.add_argument("files", nargs="*")
    p.add_argument("--to-aiger", action="store_true",
                   help="print an AIGER ascii circuit")
    p.add_argument("--simulate", metavar="STEPS",
                   help="comma-separated input rows, e.g. '10,11,00'")
    p.set_defaults(func=cmd_mealy)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (ValueError, TypeError, OSError) as exc:
        print("elaut: error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
