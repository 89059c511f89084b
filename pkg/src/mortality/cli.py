"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict,
2 usage or parse error, 3 internal oracle divergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import core, matrices
from .counter import BinTracker, trace
from .errors import MortalityError, OracleDivergence, UsageError
from .families import FAMILIES, canonical_word, generate
from .search import CLASSES, DEFAULT_BUDGET, MODES, OBJECTIVES, SearchSpec, search, verify_bounds
from .solver import (
    is_mortal_word,
    solve_careful_sync,
    solve_d1_directing,
    solve_mortality,
    solve_reset_threshold,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_nfa(path: str) -> core.Nfa:
    text = _read(path)
    if text.lstrip().startswith("matrices"):
        return matrices.matrices_to_nfa(matrices.parse_matrices(text))
    return core.parse(text)


def _parse_word(nfa: core.Nfa, spec: str) -> tuple[int, ...]:
    tokens = []
    for tok in spec.replace(",", " ").split():
        # runs of one-character letter names may be written without spaces
        if tok not in nfa.letters and all(c in nfa.letters for c in tok):
            tokens.extend(tok)
        else:
            tokens.append(tok)
    return nfa.word(tokens)


def _names_comment(inst) -> str:
    body = " ".join(f"{q}={name}" for q, name in enumerate(inst.names))
    return f"# family={inst.family} param={inst.param}\n# names: {body}\n"


def cmd_gen(args) -> int:
    inst = generate(args.family, args.param)
    text = _names_comment(inst) + core.serialize(inst.nfa)
    _emit(text, args.out)
    if args.out:
        for q, name in enumerate(inst.names):
            print(f"{q}\t{name}")
    return EXIT_OK


def cmd_solve(args) -> int:
    nfa = _load_nfa(args.file)
    if args.objective == "mortality":
        res = solve_mortality(nfa, count_shortest=args.count_shortest)
        if not res.mortal:
            print("immortal")
            return EXIT_NO
        print(f"mortal threshold={res.threshold}")
        witness, count, overflow = res.witness, res.shortest_count, res.count_overflow
    else:
        solver = {
            "careful": solve_careful_sync,
            "reset": solve_reset_threshold,
            "d1": lambda a, count_shortest=False: solve_d1_directing(a),
        }[args.objective]
        res = solver(nfa, count_shortest=args.count_shortest)
        if res is None:
            print(f"not {'directable' if args.objective == 'd1' else 'synchronizing'}")
            return EXIT_NO
        print(f"synchronizing threshold={res.threshold} state={res.state}")
        witness, count, overflow = res.witness, res.shortest_count, res.count_overflow
    if args.witness:
        print("witness=" + " ".join(nfa.spell(witness)))
    if args.count_shortest and count is not None:
        print(f"shortest_count={count}{' (saturated)' if overflow else ''}")
    print(f"visited={res.trace.visited} depth={res.trace.depth}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    nfa = _load_nfa(args.file)
    word = _parse_word(nfa, args.word)
    by_image = is_mortal_word(nfa, word)
    by_product = matrices.product_is_zero(matrices.nfa_to_matrices(nfa), word)
    if by_image != by_product:
        raise OracleDivergence(
            f"subset image says {by_image}, matrix product says {by_product} for {args.word!r}"
        )
    print("mortal" if by_image else "not mortal")
    return EXIT_OK if by_image else EXIT_NO


def cmd_trace(args) -> int:
    if args.family:
        if args.param is None:
            raise UsageError("--family needs --param")
        inst = generate(args.family, args.param)
        nfa, names = inst.nfa, list(inst.names)
        tracker_states = inst.tracker() if inst.family != "dfa-tail" else tuple(range(nfa.n))
        word = _parse_word(nfa, args.word) if args.word else canonical_word(inst)
    elif args.file:
        nfa = _load_nfa(args.file)
        names = [f"{q}" for q in range(nfa.n)]
        tracker_states = tuple(range(nfa.n))
        if not args.word:
            raise UsageError("--word is required when tracing a file")
        word = _parse_word(nfa, args.word)
    else:
        raise UsageError("give a file or --family/--param")
    if args.tracker:
        lookup = {name: q for q, name in enumerate(names)}
        try:
            tracker_states = tuple(lookup[x] for x in args.tracker.replace(",", " ").split())
        except KeyError as exc:
            raise UsageError(f"unknown tracker state {exc.args[0]!r}") from None
    tracker = BinTracker(nfa, tracker_states)
    rows = trace(nfa, tracker, word)
    width = max(len(x) for x in names)
    header = [f"[{x}]" if q in tracker_states else f" {x} " for q, x in enumerate(names)]
    print("step letter " + " ".join(h.rjust(width + 2) for h in header) + "  bin")
    for row in rows:
        letter = "" if row.letter is None else nfa.letters[row.letter]
        bits = " ".join(str((row.active >> q) & 1).rjust(width + 2) for q in range(nfa.n))
        print(f"{row.length:>4} {letter:>6} {bits}  {row.bin}")
    if args.plot:
        from .plots import trace_figure

        trace_figure(rows, names, tracker_states, nfa.letters, args.plot)
        print(f"wrote {args.plot}", file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    spec = SearchSpec(
        states=args.states,
        letters=args.letters,
        cls=args.cls,
        mode=args.mode,
        objective=args.objective,
        seed=args.seed,
        samples=args.samples,
        budget=args.budget,
        workers=args.workers,
        prune_isomorphs=args.prune,
    )
    report = search(spec)
    if not verify_bounds(report):
        raise OracleDivergence(f"best={report.best} breaks the class upper bound")
    _emit(report.render(), args.out)
    return EXIT_OK if report.best is not None else EXIT_NO


def cmd_convert(args) -> int:
    text = _read(args.file)
    if text.lstrip().startswith("matrices"):
        out = core.serialize(matrices.matrices_to_nfa(matrices.parse_matrices(text)))
    else:
        out = matrices.serialize_matrices(matrices.nfa_to_matrices(core.parse(text)))
    _emit(out, args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import DEFAULT_RANGES, write_report

    ranges = dict(DEFAULT_RANGES)
    for family, hi in (("linear", args.max_linear), ("ternary", args.max_ternary),
                       ("binary", args.max_binary), ("dfa-tail", args.max_dfa_tail)):
        if hi is not None:
            ranges[family] = range(ranges[family].start, hi + 1)
    text, paths = write_report(args.out, ranges)
    sys.stdout.write(text)
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mortality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a family automaton")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--param", required=True, type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="shortest mortal (or synchronizing) word")
    p.add_argument("file")
    p.add_argument("--objective", default="mortality",
                   choices=("mortality", "careful", "reset", "d1"))
    p.add_argument("--count-shortest", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a word with both mortality oracles")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace", help="bin() rows along a word")
    p.add_argument("file", nargs="?")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--param", type=int)
    p.add_argument("--word")
    p.add_argument("--tracker", help="tracker state names, most significant first")
    p.add_argument("--plot", help="also render the grid to this image file")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("search", help="extremal threshold search on small automata")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--letters", type=int, required=True)
    p.add_argument("--class", dest="cls", default="nfa", choices=CLASSES)
    p.add_argument("--mode", default="exhaustive", choices=MODES)
    p.add_argument("--objective", default="mortality", choices=OBJECTIVES)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--prune", action="store_true", help="skip state-relabelled duplicates")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("convert", help="automaton <-> matrix text format")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("report", help="threshold table (CSV) plus figures")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--max-linear", type=int)
    p.add_argument("--max-ternary", type=int)
    p.add_argument("--max-binary", type=int)
    p.add_argument("--max-dfa-tail", type=int)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except OracleDivergence as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except MortalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
