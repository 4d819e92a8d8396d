"""Nilpotency of the product "integer, then observation" on the finite basis.

All coefficients are positive, so no cancellation can occur: the product is
nilpotent exactly when the digraph "v has w among its successors" has no
cycle, and the nilpotency degree is one more than the longest path.

Two independent deciders live here.  :func:`is_nilpotent` walks the digraph
lazily with a memoized depth-first search.  :func:`is_nilpotent_matrix`
materializes the whole sparse matrix with numpy and asks scipy for strongly
connected components.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .algebra import Permutation, all_permutations
from .errors import CapacityError
from .integer_rep import FLAVORS, NodeFlavor, build_graph
from .ndpm import Machine, PseudoConfiguration, Verdict, run
from .observation import BasisVector, Observation, StateBasisElement, apply_integer, apply_observation
from .words import BinaryWord

DEFAULT_CAP = 5_000_000
CAP_ENV = "NDPM_NILPOTENCY_CAP"


def capacity_cap() -> int:
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


@dataclass
class ProductDynamics:
    observation: Observation
    word: BinaryWord

    @property
    def p(self) -> int:
        return self.observation.p

    @property
    def k(self) -> int:
        return len(self.word)

    @property
    def dimension(self) -> int:
        """6 · (k+1)^(p+1) · (p+1)! · 6^p · |controls|."""
        p = self.p
        return 6 * (self.k + 1) ** (p + 1) * math.factorial(p + 1) * 6**p * len(self.observation.controls)

    def basis(self):
        """Every basis vector, in a fixed order."""
        p = self.p
        perms = list(all_permutations(p + 1))
        for pi in FLAVORS:
            for positions in itertools.product(range(self.k + 1), repeat=p + 1):
                for sigma in perms:
                    for slots in itertools.product(FLAVORS, repeat=p):
                        for ctrl in self.observation.controls:
                            yield BasisVector(pi, positions, sigma, StateBasisElement(slots, ctrl))


def step_product(dyn: ProductDynamics, v: BasisVector) -> list[tuple[Fraction, BasisVector]]:
    w = apply_integer(dyn.word, v)
    if w is None:
        return []
    return apply_observation(dyn.observation, w)


@dataclass
class NilpotencyResult:
    nilpotent: bool
    degree: int | None
    cycle: list[BasisVector] | None
    method: str
    basis_size: int
    explored: int = 0

    def as_dict(self) -> dict:
        out = {
            "nilpotent": self.nilpotent,
            "degree": self.degree,
            "method": self.method,
            "basis_size": self.basis_size,
        }
        if self.cycle is not None:
            out["cycle"] = [str(v) for v in self.cycle]
        return out


class _Engine:
    """Integer-coded copy of the dynamics for fast traversal.

    A vector is ``(pi, positions, sigma index, slots, control index)`` with
    flavors as ints.
    """

    def __init__(self, dyn: ProductDynamics):
        obs = dyn.observation
        self.p = obs.p
        self.k = dyn.k
        self.perms = list(all_permutations(self.p + 1))
        index = {g: i for i, g in enumerate(self.perms)}
        self.identity = index[Permutation.identity(self.p + 1)]
        self.inv0 = [g.inverse()(0) for g in self.perms]
        self.compose = [[index[nu.compose(sg)] for sg in self.perms] for nu in self.perms]
        self.controls = list(obs.controls)
        cidx = {c: i for i, c in enumerate(self.controls)}
        graph = build_graph(dyn.word)
        self.partner: dict[tuple[int, int], tuple[int, int]] = {}
        for a, b in graph.edge_pairs():
            self.partner[(int(a.flavor), a.slice)] = (int(b.flavor), b.slice)
            self.partner[(int(b.flavor), b.slice)] = (int(a.flavor), a.slice)
        self.by_ctrl: list[list[tuple]] = [[] for _ in self.controls]
        for s in obs.summands:
            colmap: dict[int, tuple[int, ...]] = {}
            for r, c in s.flavor:
                colmap.setdefault(int(c), ())
                colmap[int(c)] += (int(r),)
            sources = tuple(frozenset(int(f) for f in sm.sources) for sm in s.slots)
            targets = tuple(-1 if sm.target is None else int(sm.target) for sm in s.slots)
            group = tuple((index[g], a) for g, a in s.group.items())
            self.by_ctrl[cidx[s.source]].append((colmap, sources, targets, cidx[s.target], group))

    def successors(self, v: tuple) -> list[tuple]:
        pi, pos, sg, slots, c = v
        s = self.inv0[sg]
        hit = self.partner.get((pi, pos[s]))
        if hit is None:
            return []
        pi2, a2 = hit
        pos2 = pos[:s] + (a2,) + pos[s + 1:]
        out = []
        for colmap, sources, targets, tgt, group in self.by_ctrl[c]:
            rows = colmap.get(pi2)
            if rows is None:
                continue
            ok = True
            for f, src in zip(slots, sources):
                if f not in src:
                    ok = False
                    break
            if not ok:
                continue
            new_slots = tuple(f if t < 0 else t for f, t in zip(slots, targets))
            for row in rows:
                for nu, _ in group:
                    w = (row, pos2, self.compose[nu][sg], new_slots, tgt)
                    if w not in out:
                        out.append(w)
        return out

    def starts(self):
        """Vectors with σ = id; right translation of σ is a symmetry of the digraph.

        Relabelling slots by ρ maps (π, a; σ; e) to (π, a∘ρ; σρ; e) and
        commutes with both the integer and the observation, so every cycle
        and every path has a copy starting at σ = id.
        """
        active = [i for i, lst in enumerate(self.by_ctrl) if lst]
        for c in active:
            for pi in range(6):
                for pos in itertools.product(range(self.k + 1), repeat=self.p + 1):
                    if (pi, pos[0]) not in self.partner:
                        continue
                    for slots in itertools.product(range(6), repeat=self.p):
                        yield (pi, pos, self.identity, slots, c)

    def to_vector(self, v: tuple) -> BasisVector:
        pi, pos, sg, slots, c = v
        return BasisVector(NodeFlavor(pi), pos, self.perms[sg],
                           StateBasisElement(tuple(NodeFlavor(f) for f in slots), self.controls[c]))


def is_nilpotent(dyn: ProductDynamics) -> NilpotencyResult:
    """Memoized three-colour depth-first search over the successor digraph."""
    eng = _Engine(dyn)
    depth: dict[tuple, int] = {}
    grey: set[tuple] = set()
    longest = 0
    for root in eng.starts():
        if root in depth:
            continue
        stack = [(root, eng.successors(root), 0, 0)]
        grey.add(root)
        while stack:
            node, succ, i, best = stack[-1]
            if i < len(succ):
                child = succ[i]
                stack[-1] = (node, succ, i + 1, best)
                if child in grey:
                    cycle_nodes = [entry[0] for entry in stack]
                    start = cycle_nodes.index(child)
                    cycle = [eng.to_vector(x) for x in cycle_nodes[start:]] + [eng.to_vector(child)]
                    return NilpotencyResult(False, None, cycle, "tree", dyn.dimension, len(depth))
                d = depth.get(child)
                if d is None:
                    grey.add(child)
                    stack.append((child, eng.successors(child), 0, 0))
                else:
                    stack[-1] = (node, succ, i + 1, max(best, d + 1))
                continue
            stack.pop()
            grey.discard(node)
            depth[node] = best
            if stack:
                parent, psucc, pi_, pbest = stack[-1]
                stack[-1] = (parent, psucc, pi_, max(pbest, best + 1))
        longest = max(longest, depth[root])
    return NilpotencyResult(True, longest + 1, None, "tree", dyn.dimension, len(depth))


def _matrix_structure(dyn: ProductDynamics, cap: int | None = None):
    """All nonzero entries (src, dst, weight) of the product over the full basis."""
    obs = dyn.observation
    p, k = obs.p, dyn.k
    D = dyn.dimension
    cap = capacity_cap() if cap is None else cap
    if D > cap:
        raise CapacityError(f"basis of size {D} exceeds the cap {cap}")
    perms = list(all_permutations(p + 1))
    pidx = {g: i for i, g in enumerate(perms)}
    nperm = len(perms)
    ncontrol = len(obs.controls)
    size = k + 1
    radix = [6] + [size] * (p + 1) + [nperm] + [6] * p + [ncontrol]
    idx = np.arange(D, dtype=np.int64)
    comps = np.unravel_index(idx, radix)
    pi = comps[0].astype(np.int64)
    pos = np.stack(comps[1:p + 2]).astype(np.int64)
    sg = comps[p + 2].astype(np.int64)
    slots = np.stack(comps[p + 3:2 * p + 3]).astype(np.int64) if p else np.zeros((0, D), dtype=np.int64)
    ctrl = comps[2 * p + 3].astype(np.int64)

    # integer: a 6(k+1) table of partners read off the axiom links
    partner_f = np.full((6, size), -1, dtype=np.int64)
    partner_s = np.full((6, size), -1, dtype=np.int64)
    for edge in build_graph(dyn.word).edges:
        a, b = tuple(edge)
        partner_f[int(a.flavor), a.slice], partner_s[int(a.flavor), a.slice] = int(b.flavor), b.slice
        partner_f[int(b.flavor), b.slice], partner_s[int(b.flavor), b.slice] = int(a.flavor), a.slice
    inv0 = np.array([g.inverse()(0) for g in perms], dtype=np.int64)
    active = inv0[sg]
    acted = pos[active, idx]
    new_pi = partner_f[pi, acted]
    new_a = partner_s[pi, acted]
    alive = new_pi >= 0
    pos_after = pos.copy()
    pos_after[active, idx] = np.where(alive, new_a, acted)

    compose = np.array([[pidx[nu.compose(s)] for s in perms] for nu in perms], dtype=np.int64)
    cidx = {c: i for i, c in enumerate(obs.controls)}
    denominators = [a.denominator for s in obs.summands for _, a in s.group.items()]
    scale = math.lcm(*denominators) if denominators else 1

    src_parts, dst_parts, w_parts = [], [], []
    for s in obs.summands:
        base = alive & (ctrl == cidx[s.source])
        for j, sm in enumerate(s.slots):
            allowed = np.zeros(6, dtype=bool)
            allowed[[int(f) for f in sm.sources]] = True
            base &= allowed[slots[j]]
        if not base.any():
            continue
        new_slots = slots.copy()
        for j, sm in enumerate(s.slots):
            if sm.target is not None:
                new_slots[j] = int(sm.target)
        for row, col in s.flavor:
            mask = base & (new_pi == int(col))
            if not mask.any():
                continue
            rows_idx = np.nonzero(mask)[0]
            for g, a in s.group.items():
                weight = int(a * scale)
                new_sg = compose[pidx[g], sg[rows_idx]]
                parts = ([np.full(rows_idx.size, int(row))] + [pos_after[i, rows_idx] for i in range(p + 1)]
                         + [new_sg] + [new_slots[j, rows_idx] for j in range(p)]
                         + [np.full(rows_idx.size, cidx[s.target])])
                dst = np.ravel_multi_index(parts, radix)
                src_parts.append(rows_idx)
                dst_parts.append(dst)
                w_parts.append(np.full(rows_idx.size, weight, dtype=np.int64))
    if src_parts:
        src = np.concatenate(src_parts)
        dst = np.concatenate(dst_parts)
        wts = np.concatenate(w_parts)
    else:
        src = dst = wts = np.zeros(0, dtype=np.int64)
    return D, src, dst, wts


def product_matrix(dyn: ProductDynamics, cap: int | None = None) -> sparse.csr_matrix:
    """The product as a sparse matrix; entry (w, v) is the coefficient of w in T v.

    Coefficients are scaled by the common denominator of the observation, so
    the integer entries are exact.
    """
    D, src, dst, wts = _matrix_structure(dyn, cap)
    return sparse.csr_matrix((wts, (dst, src)), shape=(D, D), dtype=np.int64)


def is_nilpotent_matrix(dyn: ProductDynamics, cap: int | None = None, confirm: bool = False) -> bool:
    D, src, dst, _ = _matrix_structure(dyn, cap)
    if src.size == 0:
        return True
    if np.any(src == dst):
        return False
    pattern = sparse.csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(D, D))
    n_comp, labels = csgraph.connected_components(pattern, directed=True, connection="strong")
    nilpotent = n_comp == D
    if nilpotent and confirm:
        if not power_vanishes(pattern, D):
            raise AssertionError("acyclic pattern whose power does not vanish")
    return bool(nilpotent)


def power_vanishes(pattern: sparse.csr_matrix, exponent: int) -> bool:
    """Boolean repeated squaring: does ``pattern ** exponent`` vanish?"""
    result = None
    base = pattern.astype(bool).astype(np.int8)
    e = exponent
    while e:
        if e & 1:
            result = base if result is None else _bool_product(result, base)
            if result.nnz == 0:
                return True
        e >>= 1
        if e:
            base = _bool_product(base, base)
            if base.nnz == 0:
                return True
    return result is not None and result.nnz == 0


def _bool_product(a: sparse.csr_matrix, b: sparse.csr_matrix) -> sparse.csr_matrix:
    prod = (a @ b).tocsr()
    prod.data[:] = 1
    prod.eliminate_zeros()
    return prod.astype(np.int8)


@dataclass
class CrossvalReport:
    verdict: str
    nilpotent: bool
    consistent: bool
    degree: int | None
    dimension: int
    degree_within_bound: bool
    matrix_nilpotent: bool | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "nilpotent": self.nilpotent,
            "consistent": self.consistent,
            "degree": self.degree,
            "dimension": self.dimension,
            "degree_within_bound": self.degree_within_bound,
        }
        if self.matrix_nilpotent is not None:
            out["matrix_nilpotent"] = self.matrix_nilpotent
        out.update(self.details)
        return out


def crossval(machine: Machine, c: PseudoConfiguration, word: BinaryWord, *, matrix: bool = False,
             cap: int | None = None) -> CrossvalReport:
    """Compare the simulator verdict with nilpotency of the encoded machine."""
    from .encoding import encode_machine

    verdict = run(machine, c, word).verdict
    dyn = ProductDynamics(encode_machine(machine, c), word)
    res = is_nilpotent(dyn)
    consistent = (verdict is Verdict.ACCEPT) == res.nilpotent
    within = res.degree is None or res.degree <= dyn.dimension
    mat = None
    if matrix:
        mat = is_nilpotent_matrix(dyn, cap)
        consistent = consistent and mat == res.nilpotent
    return CrossvalReport(verdict.value, res.nilpotent, consistent and within, res.degree, dyn.dimension, within,
                          mat)
