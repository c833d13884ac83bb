"""The one-hub amalgamation of mu K_{n+m} and its detachment.

The ``m`` new vertices are merged into a single hub carrying ``mu*m`` edges
to every old vertex and ``mu*C(m,2)`` loops. Colouring the hub edges so each
class has degree 2 at old vertices and ``2m`` at the hub, then splitting the
hub back into ``m`` vertices one at a time, produces a 2-factorization of
mu K_{n+m} containing the path decomposition on the old vertices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor

import numpy as np

from ._kernels import max_flow
from .decomp import ClassKind, Decomposition, classify_class, path_count
from .errors import ConstructionError, Report
from .graphcore import Multigraph, complete_multigraph, component_count, component_labels

log = logging.getLogger(__name__)

HUB = -1
LOOP = -2


@dataclass
class AmalgamGraph:
    """Path decomposition of mu K_n plus a coloured hub (vertex ``n``)."""

    n: int
    m: int
    mu: int
    classes: list[Multigraph]
    hub: np.ndarray  # hub[i, u]: class-i edges between old vertex u and the hub
    loops: np.ndarray  # loops[i]: class-i loops on the hub
    cycle_free: int = 0

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def hub_vertex(self) -> int:
        return self.n

    def class_graph(self, i: int) -> Multigraph:
        g = Multigraph(self.n + 1)
        g.mult[: self.n, : self.n] = self.classes[i].mult
        g.mult[: self.n, self.n] = self.hub[i]
        g.mult[self.n, : self.n] = self.hub[i]
        g.loops[self.n] = self.loops[i]
        return g

    def graph(self) -> Multigraph:
        total = Multigraph(self.n + 1)
        for i in range(self.k):
            total = total + self.class_graph(i)
        return total


@dataclass
class DetachmentPlan:
    """``sigma[w]`` split counts and the map from detached to amalgamated vertices."""

    sigma: list[int]
    phi_map: list[int]

    def preimage(self, w: int) -> list[int]:
        return [x for x, img in enumerate(self.phi_map) if img == w]


def hub_plan(n: int, m: int) -> DetachmentPlan:
    return DetachmentPlan(sigma=[1] * n + [m], phi_map=list(range(n)) + [n] * m)


def check_Y(b: Decomposition, m: int, mu: int) -> Report:
    rep = Report()
    n, k = b.n, b.k
    rep.require(mu * (n + m - 1) % 2 == 0, f"Y1: mu(n+m-1)/2 = {mu * (n + m - 1)}/2 is not an integer")
    rep.require(2 * k == mu * (n + m - 1), f"Y1: k={k} but mu(n+m-1)/2 = {Fraction(mu * (n + m - 1), 2)}")
    for i, c in enumerate(b.classes):
        if not classify_class(c).is_path_class:
            rep.require(False, f"class {i} is not a union of paths and cycles")
            continue
        p = path_count(c)
        rep.require(p <= m, f"Y2: class {i} has {p} paths, more than m={m}")
    return rep


def build_H(b: Decomposition, m: int, mu: int) -> AmalgamGraph:
    """Colour the hub edges and loops of the amalgam for the completed ``b``."""
    rep = check_Y(b, m, mu)
    if not rep:
        raise ValueError("; ".join(rep.failures))
    if b.base != complete_multigraph(b.n, mu):
        raise ValueError("b must decompose mu K_n exactly")
    n, k = b.n, b.k
    hub = np.zeros((k, n), dtype=np.int64)
    loops = np.zeros(k, dtype=np.int64)
    cycle_free = 0
    for i, c in enumerate(b.classes):
        hub[i] = 2 - c.degrees()
        p = path_count(c)
        if 2 * p != hub[i].sum():
            raise ConstructionError("amalgam", f"class {i}: {hub[i].sum()} hub ends for {p} paths")
        loops[i] = m - p
        if loops[i] < 0:
            raise ConstructionError("amalgam", f"class {i} would need {loops[i]} loops")
        cycle_free += classify_class(c) is ClassKind.PATH_FOREST
    h = AmalgamGraph(n, m, mu, [c.copy() for c in b.classes], hub, loops, cycle_free)
    if (hub.sum(axis=0) != mu * m).any() or loops.sum() != mu * comb(m, 2):
        raise ConstructionError("amalgam", "hub edge or loop totals disagree with mu K_{n+m}")
    return h


# -- detachment ------------------------------------------------------------


class _Round:
    """Choose, for a newly split vertex, two hub edge-ends from every class."""

    def __init__(self, edges: list[list[int]], k: int, n_old: int, w: int, r: int, mu: int):
        self.k = k
        self.w = w
        self.targets = list(range(w)) + [LOOP]  # old vertices, earlier split vertices, loops
        self.demand = {t: mu for t in range(w)}
        self.demand[LOOP] = mu * (r - 1)
        self.ends: dict[tuple[int, int], list[int]] = {}
        strands = self._strands(edges, k, w)
        self.strand: dict[tuple[int, int], int] = {}
        for idx, (j, a, b) in enumerate(edges):
            if a == HUB and b == HUB:
                self.ends.setdefault((j, LOOP), []).append(idx)
            elif HUB in (a, b):
                x = b if a == HUB else a
                self.ends.setdefault((j, x), []).append(idx)
                self.strand[(j, x)] = strands[j][x]
        self.options = [self._options(j) for j in range(k)]

    @staticmethod
    def _strands(edges, k, w):
        per_class = [Multigraph(w) for _ in range(k)]
        for j, a, b in edges:
            if a != HUB and b != HUB:
                per_class[j].add_edge(a, b)
        return [component_labels(g) for g in per_class]

    def cap(self, j: int, t: int) -> int:
        have = len(self.ends.get((j, t), ()))
        return have if t == LOOP else min(have, 1)

    def _options(self, j: int) -> list[tuple[int, int]]:
        opts = []
        avail = [t for t in self.targets if self.cap(j, t)]
        for a_i, t1 in enumerate(avail):
            for t2 in avail[a_i:]:
                if t1 == t2:
                    if t1 == LOOP and self.cap(j, LOOP) >= 2:
                        opts.append((t1, t2))
                    continue
                if LOOP in (t1, t2) or self.strand[(j, t1)] != self.strand[(j, t2)]:
                    opts.append((t1, t2))
        return opts

    def feasible(self, order: list[int], depth: int, demand: dict[int, int]) -> bool:
        rest = order[depth:]
        if not rest:
            return all(v == 0 for v in demand.values())
        tindex = {t: i for i, t in enumerate(self.targets)}
        nc, nt = len(rest), len(self.targets)
        size = 2 + nc + nt
        cap = np.zeros((size, size), dtype=np.int64)
        sink = size - 1
        for ci, j in enumerate(rest):
            cap[0, 1 + ci] = 2
            for t in self.targets:
                cap[1 + ci, 1 + nc + tindex[t]] = self.cap(j, t)
        for t in self.targets:
            cap[1 + nc + tindex[t], sink] = demand[t]
        value, _ = max_flow(cap, 0, sink)
        return value == 2 * nc and value == sum(demand.values())

    def solve(self, order: list[int], rng, node_limit: int) -> dict[int, tuple[int, int]] | None:
        demand = dict(self.demand)
        chosen: dict[int, tuple[int, int]] = {}
        nodes = [0]
        options = {j: list(self.options[j]) for j in order}
        if rng is not None:
            for opts in options.values():
                rng.shuffle(opts)

        def rec(depth: int) -> bool:
            if depth == len(order):
                return all(v == 0 for v in demand.values())
            j = order[depth]
            for t1, t2 in options[j]:
                nodes[0] += 1
                if nodes[0] > node_limit:
                    return False
                if demand[t1] < 1 or demand[t2] < 1 or (t1 == t2 and demand[t1] < 2):
                    continue
                demand[t1] -= 1
                demand[t2] -= 1
                if self.feasible(order, depth + 1, demand) and rec(depth + 1):
                    chosen[j] = (t1, t2)
                    return True
                demand[t1] += 1
                demand[t2] += 1
            return False

        if not self.feasible(order, 0, demand):
            return None
        return chosen if rec(0) else None


def _split_once(edges, k, n, w, r, mu, attempts, node_limit):
    rnd = _Round(edges, k, n, w, r, mu)
    for attempt in range(attempts):
        order = list(range(k))
        rng = None
        if attempt:
            rng = np.random.default_rng(attempt)
            rng.shuffle(order)
        chosen = rnd.solve(order, rng, node_limit)
        if chosen is not None:
            break
        log.debug("split round r=%d attempt %d failed", r, attempt)
    else:
        raise ConstructionError("detach", f"no valid split for vertex {w} after {attempts} attempts")
    for j, (t1, t2) in chosen.items():
        taken = [t1, t2]
        used: set[int] = set()
        for t in taken:
            idx = next(i for i in rnd.ends[(j, t)] if i not in used)
            used.add(idx)
            cls, a, b = edges[idx]
            if t == LOOP:
                edges[idx] = [cls, w, HUB]
            else:
                edges[idx] = [cls, t, w]


def detach(h: AmalgamGraph, plan: DetachmentPlan | None = None, attempts: int = 25,
           node_limit: int = 20000) -> Decomposition:
    """Split the hub into ``m`` vertices, one per round.

    Each round picks two hub edge-ends per class for the new vertex so that it
    gets exactly ``mu`` edges to every other vertex and the two ends come from
    different strands of the class (which keeps every class's component count).
    A max-flow feasibility test prunes the per-class backtracking.
    """
    n, m, mu, k = h.n, h.m, h.mu, h.k
    plan = plan or hub_plan(n, m)
    if plan.sigma != [1] * n + [m]:
        raise ValueError("only the single-hub split is supported")
    if m == 1 and h.loops.any():
        raise ValueError("an unsplit vertex cannot carry loops")
    if any(classify_class(c) is ClassKind.INVALID for c in h.classes):
        raise ValueError("base classes must have maximum degree 2")

    edges: list[list[int]] = []
    for j in range(k):
        for u, v in h.classes[j].edges():
            edges.append([j, u, v])
        for u in range(n):
            edges.extend([j, u, HUB] for _ in range(int(h.hub[j, u])))
        edges.extend([j, HUB, HUB] for _ in range(int(h.loops[j])))

    for r in range(m, 1, -1):
        w = n + (m - r)
        _split_once(edges, k, n, w, r, mu, attempts, node_limit)
        _check_round(edges, k, w, r, mu)

    last = n + m - 1
    classes = [Multigraph(n + m) for _ in range(k)]
    for j, a, b in edges:
        a = last if a == HUB else a
        b = last if b == HUB else b
        classes[j].add_edge(a, b)
    return Decomposition(classes)


def _check_round(edges, k, w, r, mu):
    per_class = np.zeros(k, dtype=np.int64)
    to_vertex: dict[int, int] = {}
    for j, a, b in edges:
        if w not in (a, b):
            continue
        if a == b:
            raise ConstructionError("detach", f"loop created at split vertex {w}")
        other = b if a == w else a
        per_class[j] += 1
        to_vertex[other] = to_vertex.get(other, 0) + 1
    if (per_class != 2).any():
        raise ConstructionError("detach", f"X2: split vertex {w} class degrees {per_class.tolist()}")
    expected = {x: mu for x in range(w)}
    expected[HUB] = mu * (r - 1)
    expected = {x: c for x, c in expected.items() if c}
    if to_vertex != expected:
        raise ConstructionError("detach", f"X3/X4: split vertex {w} multiplicities {to_vertex}")


def verify_detachment(g: Decomposition, h: AmalgamGraph, plan: DetachmentPlan | None = None,
                      exact: bool = False) -> Report:
    """Check the detachment conditions X1-X5 plus amalgamation consistency.

    Degrees and multiplicities must lie within floor/ceil of their targets;
    with ``exact`` every target must be an integer and be met exactly.
    """
    plan = plan or hub_plan(h.n, h.m)

    def _approx(a: Fraction, b: int) -> bool:
        if exact:
            return a == b
        return floor(a) <= b <= ceil(a)

    rep = Report()
    nv = len(plan.phi_map)
    rep.require(g.n == nv, f"detachment has {g.n} vertices, plan expects {nv}")
    if g.n != nv:
        return rep
    rep.require(g.base.is_loopless(), "detachment has loops")
    hg = h.graph()
    hcls = [h.class_graph(j) for j in range(h.k)]
    phi = plan.phi_map
    sigma = plan.sigma

    for j in range(h.k):
        contracted = Multigraph(h.n + 1)
        for a, b in g.classes[j].edges():
            contracted.add_edge(phi[a], phi[b])
        rep.require(contracted == hcls[j], f"class {j} does not amalgamate back to H")

    for x in range(nv):
        w = phi[x]
        rep.require(_approx(Fraction(hg.degree(w), sigma[w]), g.base.degree(x)),
                    f"X1: degree of {x} is {g.base.degree(x)}, H degree {hg.degree(w)} over {sigma[w]}")
        for j in range(h.k):
            rep.require(_approx(Fraction(hcls[j].degree(w), sigma[w]), g.classes[j].degree(x)),
                        f"X2: class {j} degree at {x} is {g.classes[j].degree(x)}")
    for x in range(nv):
        for y in range(x + 1, nv):
            w, z = phi[x], phi[y]
            got = g.base.multiplicity(x, y)
            if w == z:
                target = Fraction(int(hg.loops[w]), comb(sigma[w], 2))
                rep.require(_approx(target, got), f"X3: multiplicity {got} between {x},{y}, expected {target}")
            else:
                target = Fraction(hg.multiplicity(w, z), sigma[w] * sigma[z])
                rep.require(_approx(target, got), f"X4: multiplicity {got} between {x},{y}, expected {target}")
    for j in range(h.k):
        ratios = [Fraction(hcls[j].degree(w), sigma[w]) for w in range(h.n + 1)]
        if all(q.denominator == 1 and q.numerator % 2 == 0 for q in ratios):
            got, want = component_count(g.classes[j]), component_count(hcls[j])
            rep.require(got == want, f"X5: class {j} has {got} components, H class has {want}")
    rep.require(g.base == complete_multigraph(nv, h.mu), "detachment base is not mu K_{n+m}")
    return rep


def restrict(g: Decomposition, n: int) -> Decomposition:
    """Classes of ``g`` restricted to the first ``n`` vertices."""
    classes = []
    for c in g.classes:
        sub = Multigraph(n, c.mult[:n, :n], c.loops[:n])
        classes.append(sub)
    return Decomposition(classes)


__all__ = [
    "AmalgamGraph",
    "DetachmentPlan",
    "build_H",
    "check_Y",
    "detach",
    "hub_plan",
    "restrict",
    "verify_detachment",
]
