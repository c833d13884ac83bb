"""Brute-force enclosure search and random instance generation.

The search knows nothing about the existence conditions: it colours every edge of
mu K_{n+m} not fixed by the input, keeping each class a union of paths (and,
in Hamiltonian mode, closing a cycle only through all vertices).
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

import numpy as np

from ._kernels import SEARCH_EXHAUSTED, SEARCH_FOUND, oracle_search, path_join
from .decomp import Decomposition
from .enclose import HAMILTONIAN, MODES, verify_enclosure
from .errors import ConstructionError, GenerationError
from .graphcore import Multigraph, component_labels


class OracleVerdict(enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 8
    max_multiplicity: int = 3
    node_limit: int = 50_000_000
    time_limit: float = 60.0
    chunk: int = 200_000


@dataclass
class OracleResult:
    verdict: OracleVerdict
    witness: Decomposition | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def exists(self) -> bool | None:
        return {OracleVerdict.YES: True, OracleVerdict.NO: False}.get(self.verdict)


def _signatures(a: Decomposition) -> np.ndarray:
    seen: dict[bytes, int] = {}
    sig = np.empty(a.k, dtype=np.int64)
    for i, c in enumerate(a.classes):
        key = c.mult.tobytes() + c.loops.tobytes()
        sig[i] = seen.setdefault(key, len(seen))
    return sig


def oracle_exists(a: Decomposition, mu: int, m: int, mode: str,
                  budget: SearchBudget | None = None) -> OracleResult:
    budget = budget or SearchBudget()
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    n, k = a.n, a.k
    total = n + m
    if total > budget.max_vertices or mu > budget.max_multiplicity:
        raise ValueError(f"instance n+m={total}, mu={mu} exceeds search caps "
                         f"({budget.max_vertices}, {budget.max_multiplicity})")
    lam = a.lam
    if lam is None or mu <= lam:
        raise ValueError("need a decomposition of lambda K_n with mu > lambda")
    if a.base.loops.any():
        return OracleResult(OracleVerdict.NO, reason="input has loops")

    # every class of a 2-factorization of mu K_N has N edges
    if 2 * k * total != mu * total * (total - 1):
        return OracleResult(OracleVerdict.NO, reason=f"{k} classes cannot each be a 2-factor of {mu}K_{total}")

    ham = mode == HAMILTONIAN
    deg = np.zeros((k, total), dtype=np.int64)
    other_end = np.tile(np.arange(total, dtype=np.int64), (k, 1))
    psize = np.ones((k, total), dtype=np.int64)
    scratch = np.zeros((1, 7), dtype=np.int64)
    for i, c in enumerate(a.classes):
        for u, v in c.edges():
            if not path_join(i, u, v, total, ham, deg, other_end, psize, scratch, 0):
                return OracleResult(OracleVerdict.NO, reason=f"class {i} cannot lie in a {mode} class")

    slots = []
    for u in range(total):
        for v in range(u + 1, total):
            free = mu - (a.base.multiplicity(u, v) if v < n else 0)
            slots.extend([(u, v)] * free)
    slot_u = np.array([s[0] for s in slots], dtype=np.int64)
    slot_v = np.array([s[1] for s in slots], dtype=np.int64)
    assigned = np.zeros(k, dtype=np.int64)
    colour = np.full(max(len(slots), 1), -1, dtype=np.int64)
    undo = np.zeros((max(len(slots), 1), 7), dtype=np.int64)
    state = np.zeros(2, dtype=np.int64)
    sig = _signatures(a)

    start = time.monotonic()
    while True:
        chunk = min(budget.chunk, budget.node_limit - int(state[1]))
        if chunk <= 0:
            return OracleResult(OracleVerdict.BUDGET_EXCEEDED, nodes=int(state[1]), reason="node limit")
        status = oracle_search(slot_u, slot_v, total, k, ham, deg, other_end, psize,
                               assigned, sig, colour, undo, state, chunk)
        if status == SEARCH_EXHAUSTED:
            return OracleResult(OracleVerdict.NO, nodes=int(state[1]), reason="search exhausted")
        if status == SEARCH_FOUND:
            break
        if time.monotonic() - start > budget.time_limit:
            return OracleResult(OracleVerdict.BUDGET_EXCEEDED, nodes=int(state[1]), reason="time limit")

    classes = []
    for i, c in enumerate(a.classes):
        big = Multigraph(total)
        big.mult[:n, :n] = c.mult
        classes.append(big)
    for d, (u, v) in enumerate(slots):
        classes[int(colour[d])].add_edge(u, v)
    witness = Decomposition(classes)
    rep = verify_enclosure(a, witness, mu, mode)
    if not rep:
        raise ConstructionError("oracle", "witness fails verification: " + "; ".join(rep.failures))
    return OracleResult(OracleVerdict.YES, witness=witness, nodes=int(state[1]))


def random_instance(seed: int, n: int, lam: int, k: int, strong: bool = False,
                    retries: int = 200) -> Decomposition:
    """Random path decomposition of lam K_n into ``k`` classes.

    Edges are dealt in random order to random classes that can take them;
    a dead end restarts the deal. Deterministic in ``seed``.
    """
    if k < 1 or n < 1 or lam < 1:
        raise ValueError("need n, lambda, k >= 1")
    rng = np.random.default_rng(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) for _ in range(lam)]
    for _ in range(retries):
        classes = [Multigraph(n) for _ in range(k)]
        order = rng.permutation(len(edges))
        for idx in order:
            u, v = edges[idx]
            fits = [i for i, c in enumerate(classes) if _accepts(c, u, v, strong)]
            if not fits:
                break
            classes[fits[int(rng.integers(len(fits)))]].add_edge(u, v)
        else:
            return Decomposition(classes)
    raise GenerationError(f"no {'strong ' if strong else ''}path decomposition of {lam}K_{n} "
                          f"into {k} classes found in {retries} tries")


def _accepts(c: Multigraph, u: int, v: int, strong: bool) -> bool:
    if c.degree(u) >= 2 or c.degree(v) >= 2:
        return False
    if strong:
        labels = component_labels(c)
        return labels[u] != labels[v]
    return True
