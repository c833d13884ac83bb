"""Growing a path decomposition of lam K_n inside mu K_n so every class has
at least one or two edges, including the max-flow addibility assignment."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import max_flow
from .decomp import Decomposition, DecompositionProfile, profile, validate
from .errors import ConstructionError, InfeasibleError
from .graphcore import Multigraph, complete_multigraph

Pair = tuple[int, int]


def _pairs(n: int) -> list[Pair]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _spare_total(lam: int, mu: int, n: int) -> int:
    return (mu - lam) * n * (n - 1) // 2


def _lambda_of(a: Decomposition, mu: int) -> int:
    lam = a.lam
    if lam is None:
        raise ValueError("decomposition base is not a complete multigraph")
    if mu <= lam:
        raise ValueError(f"need mu > lambda, got mu={mu}, lambda={lam}")
    return lam


@dataclass(frozen=True)
class ExtendibilityRequest:
    alpha: int
    lam: int
    mu: int
    strong: bool = False

    def __post_init__(self):
        if self.alpha > 2:
            raise ValueError("only alpha <= 2 is supported")


def star_lhs(prof: DecompositionProfile, alpha: int) -> int:
    """Edges that must be added so every class reaches ``alpha`` edges."""
    return sum((alpha - i) * prof.count(i) for i in range(max(alpha, 0)))


def check_star(prof: DecompositionProfile, alpha: int, lam: int, mu: int, n: int) -> bool:
    if alpha <= 0:
        return True
    return star_lhs(prof, alpha) <= _spare_total(lam, mu, n)


def check_addible(prof: DecompositionProfile, lam: int, mu: int, n: int) -> bool:
    total = _spare_total(lam, mu, n)
    a1 = prof.count(1) <= total
    a2 = prof.max_pair_count() <= total - (mu - lam)
    return a1 and a2


def check_strong_2(prof: DecompositionProfile, lam: int, mu: int, n: int) -> tuple[bool, bool]:
    """The two conditions for strong 2-extendibility, as ``(B1, B2)``."""
    total = _spare_total(lam, mu, n)
    b1 = 2 * prof.count(0) + prof.count(1) <= total
    b2 = prof.count(0) + prof.max_pair_count() <= total - (mu - lam)
    return b1, b2


@dataclass
class FlowNetwork:
    """Source, one X node and one Y node per vertex pair, sink.

    Node order: ``0`` is the source, X nodes follow in pair order, then Y
    nodes, and the sink is last.
    """

    pairs: list[Pair]
    cap: np.ndarray

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return 2 * len(self.pairs) + 1

    def x(self, p: int) -> int:
        return 1 + p

    def y(self, p: int) -> int:
        return 1 + len(self.pairs) + p


def addibility_network(pair_counts: dict[Pair, int], lam: int, mu: int, n: int) -> FlowNetwork:
    pairs = _pairs(n)
    size = len(pairs)
    cap = np.zeros((2 * size + 2, 2 * size + 2), dtype=np.int64)
    net = FlowNetwork(pairs, cap)
    for p, pair in enumerate(pairs):
        cap[net.source, net.x(p)] = pair_counts.get(pair, 0)
        cap[net.y(p), net.sink] = mu - lam
        for q in range(size):
            if q != p:
                cap[net.x(p), net.y(q)] = mu - lam
    return net


def solve_addible(s1_edges: list[Pair], lam: int, mu: int, n: int) -> list[Pair]:
    """Map each single-edge class to a spare edge on a different vertex pair.

    Returns the target pair for each entry of ``s1_edges``, in order. No
    target pair receives more than ``mu - lam`` images, so the map is
    injective on the copies of mu K_n minus lam K_n.
    """
    if not s1_edges:
        return []
    counts: dict[Pair, int] = {}
    for u, v in s1_edges:
        key = (min(u, v), max(u, v))
        counts[key] = counts.get(key, 0) + 1
    total = _spare_total(lam, mu, n)
    if len(s1_edges) > total:
        raise InfeasibleError(f"A1 fails: {len(s1_edges)} single-edge classes, {total} spare edges")
    worst = max(counts.values())
    if worst > total - (mu - lam):
        raise InfeasibleError(f"A2 fails: {worst} single-edge classes on one pair")

    net = addibility_network(counts, lam, mu, n)
    value, flow = max_flow(net.cap, net.source, net.sink)
    if value != len(s1_edges):
        raise ConstructionError("addible", f"max flow {value} below {len(s1_edges)} while A1/A2 hold")

    units: dict[Pair, list[Pair]] = {}
    for p, pair in enumerate(net.pairs):
        targets = []
        for q, other in enumerate(net.pairs):
            targets.extend([other] * int(flow[net.x(p), net.y(q)]))
        units[pair] = targets
    phi = []
    for u, v in s1_edges:
        phi.append(units[(min(u, v), max(u, v))].pop(0))
    return phi


@dataclass
class CompletionSets:
    """Spare-edge bookkeeping of the strong 2-extension."""

    e0: list[tuple[Pair, Pair]] = field(default_factory=list)
    e1: list[Pair] = field(default_factory=list)
    leftover: dict[Pair, int] = field(default_factory=dict)


def _add_edges(a: Decomposition, additions: dict[int, list[Pair]]) -> Decomposition:
    classes = []
    for i, c in enumerate(a.classes):
        c = c.copy()
        for u, v in additions.get(i, ()):
            c.add_edge(u, v)
        classes.append(c)
    return Decomposition(classes)


def _empty_and_single(a: Decomposition) -> tuple[list[int], list[int]]:
    sizes = a.sizes()
    return [i for i, s in enumerate(sizes) if s == 0], [i for i, s in enumerate(sizes) if s == 1]


def _spare_stream(lam: int, mu: int, n: int):
    for pair in _pairs(n):
        for _ in range(mu - lam):
            yield pair


def extend_1(a: Decomposition, mu: int) -> Decomposition:
    """Give every empty class one distinct spare edge."""
    lam = _lambda_of(a, mu)
    empty, _ = _empty_and_single(a)
    total = _spare_total(lam, mu, a.n)
    if len(empty) > total:
        raise InfeasibleError(f"{len(empty)} empty classes but only {total} spare edges")
    spares = _spare_stream(lam, mu, a.n)
    return _add_edges(a, {i: [next(spares)] for i in empty})


def extend_2_weak(a: Decomposition, mu: int) -> Decomposition:
    """Bring every class to two edges; parallel pairs (2-cycles) may appear."""
    lam = _lambda_of(a, mu)
    if not validate(a):
        raise ValueError("not a path decomposition")
    empty, single = _empty_and_single(a)
    need = 2 * len(empty) + len(single)
    total = _spare_total(lam, mu, a.n)
    if need > total:
        raise InfeasibleError(f"need {need} spare edges, only {total} exist")
    spares = _spare_stream(lam, mu, a.n)
    additions = {i: [next(spares), next(spares)] for i in empty}
    additions.update({i: [next(spares)] for i in single})
    return _add_edges(a, additions)


def strong_2_sets(a: Decomposition, mu: int) -> CompletionSets:
    """Choose the 2-paths for empty classes and partners for single edges.

    Starts from a max-flow partner assignment, packs 2-paths greedily away
    from the fullest vertex pair, then trades that pair's edges into existing
    2-paths or partner slots until enough 2-paths exist.
    """
    lam = _lambda_of(a, mu)
    n = a.n
    prof = profile(a)
    b1, b2 = check_strong_2(prof, lam, mu, n)
    if not b1:
        raise InfeasibleError("B1 fails: not enough spare edges for two per class")
    if not b2:
        raise InfeasibleError("B2 fails: too many classes need a partner off one vertex pair")

    empty, single = _empty_and_single(a)
    s1_edges = [next(a.classes[i].edges()) for i in single]
    phi = solve_addible(s1_edges, lam, mu, n)

    pairs = _pairs(n)
    left = {p: mu - lam for p in pairs}
    for p in phi:
        left[p] -= 1
    need = len(empty)
    e0: list[tuple[Pair, Pair]] = []

    # ties broken lexicographically: max() keeps the first maximum
    xy = max(pairs, key=lambda p: left[p])

    def others():
        return sorted((p for p in pairs if p != xy and left[p] > 0), key=lambda p: -left[p])

    while len(e0) < need:
        avail = others()
        if len(avail) < 2:
            break
        p, q = avail[0], avail[1]
        left[p] -= 1
        left[q] -= 1
        e0.append((p, q))
    while len(e0) < need and left[xy] > 0:
        avail = others()
        if not avail:
            break
        p = avail[0]
        left[p] -= 1
        left[xy] -= 1
        e0.append((p, xy))

    s1_pairs = [(min(u, v), max(u, v)) for u, v in s1_edges]
    while len(e0) < need:
        if any(left[p] for p in pairs if p != xy) or left[xy] < 2:
            raise ConstructionError("extend", "leftover spares are not two or more edges on one pair")
        swap = next((j for j, path in enumerate(e0) if xy not in path), None)
        if swap is not None:
            p, q = e0.pop(swap)
            e0.extend([(p, xy), (q, xy)])
            left[xy] -= 2
            continue
        j = next((j for j, t in enumerate(phi) if t != xy and s1_pairs[j] != xy), None)
        if j is None:
            raise ConstructionError("extend", "no exchange possible although B2 holds")
        freed = phi[j]
        phi[j] = xy
        e0.append((freed, xy))
        left[xy] -= 2
    return CompletionSets(e0=e0, e1=phi, leftover=left)


def extend_2_strong(a: Decomposition, mu: int) -> Decomposition:
    """Bring every class to two edges without creating any cycle."""
    if not validate(a, strong=True):
        raise ValueError("not a strong path decomposition")
    sets = strong_2_sets(a, mu)
    empty, single = _empty_and_single(a)
    additions = {i: list(path) for i, path in zip(empty, sets.e0)}
    additions.update({i: [t] for i, t in zip(single, sets.e1)})
    out = _add_edges(a, additions)
    bad = validate(out, strong=True)
    if not bad:
        raise ConstructionError("extend", f"class {bad.index} is not a strong path class")
    return out


def extend(a: Decomposition, mu: int, alpha: int, strong: bool) -> Decomposition:
    """Dispatch to the extension needed for ``alpha`` edges per class."""
    if alpha <= 0:
        return a.copy()
    if alpha == 1:
        return extend_1(a, mu)
    if alpha == 2:
        return extend_2_strong(a, mu) if strong else extend_2_weak(a, mu)
    raise ValueError(f"alpha={alpha} is not supported")


def spare_graph(a: Decomposition, mu: int) -> Multigraph:
    """Edges of mu K_n not present in ``a``'s base."""
    return complete_multigraph(a.n, mu) - a.base


__all__ = [
    "CompletionSets",
    "ExtendibilityRequest",
    "FlowNetwork",
    "addibility_network",
    "check_addible",
    "check_star",
    "check_strong_2",
    "extend",
    "extend_1",
    "extend_2_strong",
    "extend_2_weak",
    "solve_addible",
    "spare_graph",
    "star_lhs",
    "strong_2_sets",
]
