"""Acceptance batteries, shared by ``ndpm suite`` and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .algebra import GroupAlgebraElement, all_permutations
from .catalog import halting_machines, looping_machines
from .encoding import encode_machine, expected_summand_count
from .integer_rep import FLAVORS, GraphNode, NodeFlavor, build_graph, build_matrix, check_representation, is_matching
from .ndpm import Machine, Move, PseudoConfiguration, Verdict, halts_everywhere, run
from .nilpotency import ProductDynamics, crossval, is_nilpotent, is_nilpotent_matrix
from .observation import ALL_FLAVORS, Observation, SlotMap, Summand
from .stconn import DirectedGraph, all_graphs, decide_stconn, random_graph, reach_oracle, stconn_machine
from .transforms import make_acyclic, one_move_normalize
from .words import BinaryWord, all_words, parse_word


@dataclass
class BatteryResult:
    number: int
    name: str
    passed: bool
    summary: str
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} [{self.name}]: {status} - {self.summary} ({self.seconds:.1f}s)"


def _node(label: str, slice_: int) -> GraphNode:
    return GraphNode(NodeFlavor.from_label(label), slice_)


FIGURE_EDGES: dict[str, set[frozenset[GraphNode]]] = {
    "": {frozenset({_node("S", 0), _node("E", 0)})},
    "0": {frozenset({_node("0o", 1), _node("E", 0)}), frozenset({_node("S", 0), _node("0i", 1)})},
    "110": {
        frozenset({_node("0o", 1), _node("E", 0)}),
        frozenset({_node("0i", 1), _node("1o", 2)}),
        frozenset({_node("1i", 2), _node("1o", 3)}),
        frozenset({_node("S", 0), _node("1i", 3)}),
    },
    "11010": {
        frozenset({_node("0o", 1), _node("E", 0)}),
        frozenset({_node("0i", 1), _node("1o", 2)}),
        frozenset({_node("1i", 2), _node("0o", 3)}),
        frozenset({_node("1o", 4), _node("0i", 3)}),
        frozenset({_node("1i", 4), _node("1o", 5)}),
        frozenset({_node("1i", 5), _node("S", 0)}),
    },
}


def matrix_matches_graph(word: BinaryWord) -> bool:
    m = build_matrix(word)
    edges = build_graph(word).edges
    pairs = m.nonzero_pairs()
    expected = {(a, b) for e in edges for a, b in (tuple(e), tuple(e)[::-1])}
    return pairs == expected


def battery_representation() -> BatteryResult:
    failures = []
    words = all_words(8, min_len=1)
    for w in words:
        m = build_matrix(w)
        dense = m.assembled()
        if not check_representation(m):
            failures.append(f"{w}: representation equations fail")
        if not np.array_equal(dense, dense.T):
            failures.append(f"{w}: assembled matrix not symmetric")
        if not (is_matching(m) and matrix_matches_graph(w)):
            failures.append(f"{w}: matrix and matching disagree")
    return BatteryResult(1, "representation", not failures,
                         f"{len(words) - len({f.split(':')[0] for f in failures})}/{len(words)} words sound",
                         failures=failures)


def battery_figures() -> BatteryResult:
    failures = []
    for bits, expected in FIGURE_EDGES.items():
        got = set(build_graph(parse_word(bits)).edges)
        if got != expected:
            failures.append(f"⋆{bits}: got {sorted(map(str, map(sorted, got)))}")
    return BatteryResult(2, "figures", not failures,
                         f"{len(FIGURE_EDGES) - len(failures)}/{len(FIGURE_EDGES)} edge sets exact "
                         f"(⋆11010 has {len(FIGURE_EDGES['11010'])} edges)", failures=failures)


def battery_stconn(omit_rules: Iterable[int] = (), n_random: int = 200, seed: int = 20240611) -> BatteryResult:
    machine = stconn_machine(omit_rules)
    graphs: list[DirectedGraph] = [g for n in (1, 2, 3) for g in all_graphs(n)]
    rng = random.Random(seed)
    graphs += [random_graph(rng.choice((4, 5, 6)), rng) for _ in range(n_random)]
    failures = []
    for g in graphs:
        verdict = decide_stconn(g, machine).verdict
        oracle = reach_oracle(g)
        if verdict is Verdict.DIVERGE or (verdict is Verdict.ACCEPT) == oracle:
            failures.append(f"{g.adjacency}: verdict {verdict.value}, path {oracle}")
    agree = len(graphs) - len(failures)
    return BatteryResult(3, "stconn", not failures, f"{agree}/{len(graphs)} graphs agree with BFS",
                         failures=failures)


def battery_acyclic() -> BatteryResult:
    failures = []
    rescued = 0
    halting = 0
    empty_word_loops = 0
    machines = looping_machines()
    for name, m in machines.items():
        clocked, mapping = make_acyclic(m)
        saw_rescue = False
        for c in m.pseudo_configurations():
            for w in all_words(3):
                before = run(m, c, w).verdict
                after = run(clocked, mapping[c], w).verdict
                if before is Verdict.DIVERGE:
                    if len(w) == 0:
                        # a one-cell tape gives the clock nothing to count on
                        empty_word_loops += 1
                    elif after is Verdict.REJECT:
                        rescued += 1
                        saw_rescue = True
                    else:
                        failures.append(f"{name} {c} {w}: DIVERGE became {after.value}")
                else:
                    halting += 1
                    if after is not before:
                        failures.append(f"{name} {c} {w}: {before.value} became {after.value}")
        if not saw_rescue:
            failures.append(f"{name}: never diverged on a non-empty word")
    summary = (f"{len(machines)} looping machines, {rescued} DIVERGE→REJECT on k=1..3, "
               f"{halting} halting pairs preserved, {empty_word_loops} empty-word loops left as DIVERGE")
    return BatteryResult(4, "acyclicity", not failures and len(machines) >= 5, summary, failures=failures)


# crossval results are shared by batteries 5 to 8
_CROSSVAL_CACHE: dict[tuple[str, PseudoConfiguration, BinaryWord], dict] = {}


def crossval_instances() -> list[tuple[str, Machine, PseudoConfiguration, BinaryWord]]:
    out = []
    for name, m in halting_machines().items():
        configs = list(m.pseudo_configurations()) if m.p == 1 else [m.initial]
        for c in configs:
            for w in all_words(3):
                out.append((name, m, c, w))
    return out


def _crossval_cached(name: str, m: Machine, c: PseudoConfiguration, w: BinaryWord) -> dict:
    key = (name, c, w)
    if key not in _CROSSVAL_CACHE:
        report = crossval(m, c, w, matrix=True)
        _CROSSVAL_CACHE[key] = report.as_dict()
    return _CROSSVAL_CACHE[key]


def is_one_move(m: Machine) -> bool:
    return all(len(t.outcome.moving_pointers()) == 1 for t in m.transitions if isinstance(t.outcome, Move))


def battery_crossval() -> BatteryResult:
    failures = []
    machines = halting_machines()
    for name, m in machines.items():
        if not is_one_move(m):
            failures.append(f"{name}: not one-move")
        if not all(halts_everywhere(m, w) for w in all_words(3)):
            failures.append(f"{name}: loops from some configuration")
        if m.p > 2 or len(m.states) > 4:
            failures.append(f"{name}: outside p ≤ 2, |Q| ≤ 4")
    instances = crossval_instances()
    consistent = 0
    for name, m, c, w in instances:
        r = _crossval_cached(name, m, c, w)
        ok = r["verdict"] != Verdict.DIVERGE.value and \
            (r["verdict"] == Verdict.ACCEPT.value) == r["nilpotent"] and r["degree_within_bound"]
        if ok:
            consistent += 1
        else:
            failures.append(f"{name} {c} {w}: {r}")
    summary = f"{len(machines)} machines, {consistent}/{len(instances)} (machine, c, word) cases consistent"
    return BatteryResult(5, "crossval", not failures and len(machines) >= 10, summary, failures=failures)


def random_observation(rng: random.Random, p: int | None = None) -> Observation:
    """A random observation in P≥0 with rational coefficients.

    About half of the draws only send control labels upward in a fixed order,
    which forces nilpotency; the others may loop.
    """
    p = p if p is not None else rng.choice((1, 1, 2))
    controls = [f"c{i}" for i in range(rng.randint(1, 3))]
    ordered = rng.random() < 0.5 and len(controls) > 1
    perms = list(all_permutations(p + 1))
    summands = []
    for n in range(rng.randint(1, 5)):
        pairs = frozenset((rng.choice(FLAVORS), rng.choice(FLAVORS)) for _ in range(rng.randint(1, 8 if ordered else 20)))
        terms = [(rng.choice(perms), Fraction(rng.randint(1, 9), rng.randint(1, 6))) for _ in range(rng.randint(1, 2))]
        slots = []
        for _ in range(p):
            sources = frozenset(f for f in FLAVORS if rng.random() < 0.7) or ALL_FLAVORS
            target = rng.choice((None, None, rng.choice(FLAVORS)))
            slots.append(SlotMap(sources, target))
        if ordered:
            i = rng.randrange(len(controls) - 1)
            src, tgt = controls[i], controls[rng.randrange(i + 1, len(controls))]
        else:
            src, tgt = rng.choice(controls), rng.choice(controls)
        summands.append(Summand(pairs, GroupAlgebraElement(terms), tuple(slots), src, tgt, f"r{n}"))
    return Observation(p, controls, summands)


def random_instances(count: int = 50, seed: int = 7) -> list[tuple[Observation, BinaryWord]]:
    rng = random.Random(seed)
    words = all_words(2)
    return [(random_observation(rng), rng.choice(words)) for _ in range(count)]


def battery_oracles(n_random: int = 50) -> BatteryResult:
    failures = []
    agree = 0
    instances = crossval_instances()
    for name, m, c, w in instances:
        r = _crossval_cached(name, m, c, w)
        if r["matrix_nilpotent"] == r["nilpotent"]:
            agree += 1
        else:
            failures.append(f"{name} {c} {w}: tree {r['nilpotent']} matrix {r['matrix_nilpotent']}")
    nil = 0
    for obs, w in random_instances(n_random):
        dyn = ProductDynamics(obs, w)
        tree = is_nilpotent(dyn).nilpotent
        mat = is_nilpotent_matrix(dyn, confirm=True)
        nil += tree
        if tree == mat:
            agree += 1
        else:
            failures.append(f"random observation on {w}: tree {tree} matrix {mat}")
    total = len(instances) + n_random
    summary = f"{agree}/{total} agree ({n_random} random P≥0 observations, {nil} of them nilpotent)"
    return BatteryResult(6, "oracles", not failures, summary, failures=failures)


def battery_p_plus() -> BatteryResult:
    failures = []
    checked = 0
    for name, m in halting_machines().items():
        for c in m.pseudo_configurations():
            obs = encode_machine(m, c)
            checked += 1
            if not obs.in_p_plus():
                failures.append(f"{name} {c}: coefficient other than 1")
            if len(obs) != expected_summand_count(m):
                failures.append(f"{name} {c}: {len(obs)} summands, expected {expected_summand_count(m)}")
    for name, m in looping_machines().items():
        normalized, _ = one_move_normalize(m)
        obs = encode_machine(normalized, normalized.initial)
        checked += 1
        if not obs.in_p_plus():
            failures.append(f"normalized {name}: coefficient other than 1")
    return BatteryResult(7, "p-plus", not failures, f"{checked - len(failures)}/{checked} encodings in P+",
                         failures=failures)


def battery_positivity(n_random: int = 50) -> BatteryResult:
    failures = []
    rng = random.Random(11)
    cases = 0
    for name, m, c, w in crossval_instances():
        r = _crossval_cached(name, m, c, w)
        factor = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        dyn = ProductDynamics(encode_machine(m, c).scaled(factor), w)
        res = is_nilpotent(dyn)
        cases += 1
        if res.nilpotent != r["nilpotent"] or res.degree != r["degree"]:
            failures.append(f"{name} {c} {w}: scaling by {factor} changed the verdict")
    for obs, w in random_instances(n_random):
        base = is_nilpotent(ProductDynamics(obs, w))
        for factor in (Fraction(1, 3), Fraction(7, 2), Fraction(rng.randint(1, 50), rng.randint(1, 50))):
            scaled = is_nilpotent(ProductDynamics(obs.scaled(factor), w))
            cases += 1
            if (scaled.nilpotent, scaled.degree) != (base.nilpotent, base.degree):
                failures.append(f"random observation on {w}: scaling by {factor} changed the verdict")
    return BatteryResult(8, "positivity", not failures, f"{cases - len(failures)}/{cases} scalings invariant",
                         failures=failures)


BATTERIES: list[tuple[int, str, tuple[str, ...], Callable[..., BatteryResult]]] = [
    (1, "representation", ("matrix", "representation"), battery_representation),
    (2, "figures", ("matrix", "representation", "graph"), battery_figures),
    (3, "stconn", ("stconn", "machine"), battery_stconn),
    (4, "acyclicity", ("acyclic", "machine", "clock"), battery_acyclic),
    (5, "crossval", ("crossval", "operators"), battery_crossval),
    (6, "oracles", ("nilpotency", "oracle"), battery_oracles),
    (7, "p-plus", ("operators", "encoding"), battery_p_plus),
    (8, "positivity", ("nilpotency", "positivity"), battery_positivity),
]


def selected(filter_: str | None) -> list[tuple[int, str, tuple[str, ...], Callable[..., BatteryResult]]]:
    if not filter_:
        return list(BATTERIES)
    keys = {part.strip() for part in filter_.split(",") if part.strip()}
    return [b for b in BATTERIES if str(b[0]) in keys or b[1] in keys or keys & set(b[2])]


def run_battery(number: int, **kwargs) -> BatteryResult:
    for num, _, _, fn in BATTERIES:
        if num == number:
            start = time.perf_counter()
            result = fn(**kwargs)
            result.seconds = time.perf_counter() - start
            return result
    raise KeyError(number)


def run_suite(filter_: str | None = None, omit_stconn_rules: Iterable[int] = ()) -> list[BatteryResult]:
    results = []
    for num, _, _, _ in selected(filter_):
        kwargs = {"omit_rules": tuple(omit_stconn_rules)} if num == 3 and omit_stconn_rules else {}
        results.append(run_battery(num, **kwargs))
    return results
