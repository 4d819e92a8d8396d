"""Command-line front end: ``ndpm <subcommand> ...``.

Primary output is JSON (sorted keys) or plain text on stdout.  Exit codes are
0 on success, 1 when a check finds an inconsistency and 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import deque
from typing import Sequence

from .encoding import encode_machine, format_observation
from .errors import CapacityError, NDPMError, ParseError
from .integer_rep import build_graph, build_matrix, check_representation, coordinate_triples, graph_to_dot
from .machine_file import load_machine, parse_pseudo
from .ndpm import Configuration, Machine, PseudoConfiguration, initial_configuration, run, step
from .nilpotency import ProductDynamics, crossval, is_nilpotent, is_nilpotent_matrix
from .stconn import DirectedGraph, decide_stconn, reach_oracle, stconn_machine
from .suite import run_suite
from .words import load_graph, parse_word


class UsageError(Exception):
    pass


def emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2))


def pseudo_for(machine: Machine, text: str | None) -> PseudoConfiguration:
    if text is not None:
        c = parse_pseudo(text, source="--pseudo")
    elif machine.initial is not None:
        c = machine.initial
    else:
        raise UsageError("machine has no initial: directive; pass --pseudo")
    if len(c.slots) != machine.p:
        raise UsageError(f"--pseudo has {len(c.slots)} symbols, machine has {machine.p} pointers")
    if c.state not in machine.states:
        raise UsageError(f"--pseudo names unknown state {c.state!r}")
    return c


def trace(machine: Machine, word, c: PseudoConfiguration, limit: int = 2000) -> None:
    """Print the reachable configuration graph, breadth first, to stderr."""
    start = initial_configuration(c)
    seen = {start}
    queue: deque[Configuration] = deque([start])
    shown = 0
    while queue and shown < limit:
        cfg = queue.popleft()
        nxt = step(machine, word, cfg)
        shown += 1
        targets = []
        for o in nxt:
            if isinstance(o, Configuration):
                targets.append(f"{o.positions} {PseudoConfiguration(o.slots, o.state)}")
                if o not in seen:
                    seen.add(o)
                    queue.append(o)
            else:
                targets.append(str(o))
        here = f"{cfg.positions} {PseudoConfiguration(cfg.slots, cfg.state)}"
        print(f"{here} => {' | '.join(targets) or 'accept (no transition)'}", file=sys.stderr)
    if queue:
        print(f"... trace truncated after {limit} configurations", file=sys.stderr)


def cmd_run(args) -> int:
    machine = load_machine(args.machine)
    word = parse_word(args.word)
    c = pseudo_for(machine, args.pseudo)
    if args.trace:
        trace(machine, word, c)
    out = run(machine, c, word).as_dict()
    out.update(word=str(word), pseudo=str(c))
    emit(out)
    return 0


def cmd_stconn(args) -> int:
    g = DirectedGraph.from_table(load_graph(args.graph))
    machine = stconn_machine(args.omit_rule)
    result = decide_stconn(g, machine)
    oracle = reach_oracle(g)
    agree = result.verdict.value != "DIVERGE" and (result.verdict.value == "REJECT") == oracle
    if args.dot:
        print(graph_to_dot(build_graph(g.word())), file=sys.stderr)
    emit({"verdict": result.verdict.value, "oracle": oracle, "agree": agree, "n": g.n, "word": str(g.word()),
          "configurations": result.configurations})
    return 0 if agree else 1


def cmd_matrix(args) -> int:
    word = parse_word(args.word)
    if args.action == "check":
        m = build_matrix(word)
        dense = m.assembled()
        ok = check_representation(m) and bool((dense == dense.T).all())
        emit({"word": str(word), "representation": ok, "size": int(dense.shape[0])})
        return 0 if ok else 1
    if args.dot:
        print(graph_to_dot(build_graph(word)))
        return 0
    for r, c, v in coordinate_triples(build_matrix(word)):
        print(r, c, v)
    return 0


def cmd_encode(args) -> int:
    machine = load_machine(args.machine)
    obs = encode_machine(machine, pseudo_for(machine, args.pseudo))
    print(format_observation(obs, expand=not args.summands))
    return 0


def cmd_nilpotency(args) -> int:
    machine = load_machine(args.machine)
    dyn = ProductDynamics(encode_machine(machine, pseudo_for(machine, args.pseudo)), parse_word(args.word))
    if args.method == "matrix":
        nilpotent = is_nilpotent_matrix(dyn, args.cap)
        emit({"nilpotent": nilpotent, "degree": None, "method": "matrix", "basis_size": dyn.dimension})
        return 0
    out = is_nilpotent(dyn).as_dict()
    if args.method == "both":
        mat = is_nilpotent_matrix(dyn, args.cap)
        out.update(method="both", matrix_nilpotent=mat)
        if mat != out["nilpotent"]:
            emit(out)
            return 1
    emit(out)
    return 0


def cmd_crossval(args) -> int:
    machine = load_machine(args.machine)
    report = crossval(machine, pseudo_for(machine, args.pseudo), parse_word(args.word), matrix=args.matrix,
                      cap=args.cap)
    emit(report.as_dict())
    return 0 if report.consistent else 1


def cmd_suite(args) -> int:
    results = run_suite(args.filter, omit_stconn_rules=args.omit_rule)
    if not results:
        raise UsageError(f"--filter {args.filter!r} selects no battery")
    for r in results:
        print(r.line())
        if args.verbose:
            for f in r.failures[:10]:
                print(f"    {f}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} batteries passed")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ndpm", description="Pointer machines and their operator encodings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a machine on a word under universal acceptance")
    p.add_argument("machine")
    p.add_argument("--word", required=True, help="binary word a1..ak, '' for the empty word")
    p.add_argument("--pseudo", help="pseudo-configuration 'sym,...;state' (default: the initial: directive)")
    p.add_argument("--trace", action="store_true", help="print the reachable configurations to stderr")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("stconn", help="decide 'no path from 1 to n' with the built-in machine")
    p.add_argument("graph", help="file with n, then n rows of 0/1 entries")
    p.add_argument("--omit-rule", type=int, action="append", default=[], help="drop a numbered rule (mutation)")
    p.add_argument("--dot", action="store_true", help="print the input's integer graph as DOT to stderr")
    p.set_defaults(func=cmd_stconn)

    p = sub.add_parser("matrix", help="the integer representation of a word")
    p.add_argument("action", choices=("dump", "check"))
    p.add_argument("word")
    p.add_argument("--dot", action="store_true", help="dump the graph as DOT instead of coordinate triples")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("encode", help="print the observation encoding a machine")
    p.add_argument("machine")
    p.add_argument("--pseudo")
    p.add_argument("--summands", action="store_true", help="one line per summand instead of per entry")
    p.set_defaults(func=cmd_encode)

    for name, fn, helptext in (("nilpotency", cmd_nilpotency, "decide nilpotency of the encoded product"),
                               ("crossval", cmd_crossval, "compare the simulator with the operator side")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("machine")
        p.add_argument("--word", required=True)
        p.add_argument("--pseudo")
        p.add_argument("--cap", type=int, help="largest basis the matrix method may build")
        if name == "nilpotency":
            p.add_argument("--method", choices=("tree", "matrix", "both"), default="tree")
        else:
            p.add_argument("--matrix", action="store_true", help="also run the matrix oracle")
        p.set_defaults(func=fn)

    p = sub.add_parser("suite", help="run the acceptance batteries")
    p.add_argument("--filter", help="comma separated battery numbers, names or tags")
    p.add_argument("--omit-rule", type=int, action="append", default=[],
                   help="drop a numbered ST-CONN rule before the stconn battery (mutation)")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"ndpm {args.command}: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"ndpm {args.command}: {exc} (raise it with --cap or NDPM_NILPOTENCY_CAP)", file=sys.stderr)
        return 2
    except (NDPMError, ValueError) as exc:
        print(f"ndpm {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
