"""Colour the remaining edges of mu K_n one at a time, keeping the partial
decomposition a (strong) path decomposition that still encloses the input."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .decomp import ClassKind, Decomposition, classify_class
from .errors import ConstructionError, OutOfRegimeError
from .graphcore import Multigraph, complete_multigraph, component_labels

STRONG = "strong"
WEAK = "weak"


@dataclass(frozen=True)
class ColorIncidence:
    """Colours seen 0, 1 and 2 times at a vertex."""

    c0: frozenset[int]
    c1: frozenset[int]
    c2: frozenset[int]


def color_incidence(d: Decomposition, v: int) -> ColorIncidence:
    buckets: dict[int, set[int]] = {0: set(), 1: set(), 2: set()}
    for i, c in enumerate(d.classes):
        buckets[min(c.degree(v), 2)].add(i)
    return ColorIncidence(frozenset(buckets[0]), frozenset(buckets[1]), frozenset(buckets[2]))


@dataclass
class CompletionState:
    current: Decomposition
    original: Decomposition
    mu: int
    mode: str
    m: int | None = None
    steps: int = 0
    recolourings: int = 0
    counters: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (STRONG, WEAK):
            raise ValueError(f"unknown completion mode {self.mode!r}")
        if self.mode == WEAK and self.m is None:
            raise ValueError("weak completion needs m for the 2-factor budget")

    @property
    def n(self) -> int:
        return self.current.n

    @property
    def k(self) -> int:
        return self.current.k

    def uncoloured(self) -> Multigraph:
        return complete_multigraph(self.n, self.mu) - self.current.base

    def uncoloured_count(self) -> int:
        return self.uncoloured().edge_count()

    @property
    def budget(self) -> int:
        return self.mu * (self.m - 1) // 2

    def two_factor_count(self) -> int:
        return sum(kind.is_two_factor for kind in self.current.kinds())


def _joinable_strong(c: Multigraph, u: int, v: int) -> bool:
    if c.degree(u) >= 2 or c.degree(v) >= 2:
        return False
    labels = component_labels(c)
    return labels[u] != labels[v]


def _with_edge(c: Multigraph, u: int, v: int) -> Multigraph:
    c = c.copy()
    c.add_edge(u, v)
    return c


def _check_enclosure(state: CompletionState, d: Decomposition) -> None:
    for i, (orig, cur) in enumerate(zip(state.original.classes, d.classes)):
        if not orig.is_subgraph_of(cur):
            raise ConstructionError("complete", f"class {i} lost an original edge")


def _strong_hypothesis(state: CompletionState) -> None:
    if state.mode != STRONG:
        raise ValueError("step_strong needs a strong-mode state")
    if state.k < state.mu * (state.n - 1) - 1:
        raise OutOfRegimeError(
            f"k={state.k} below mu(n-1)-1={state.mu * (state.n - 1) - 1}; strong step not available"
        )


def _first_uncoloured(state: CompletionState) -> tuple[int, int]:
    edges = list(state.uncoloured().edges())
    if not edges:
        raise ValueError("partial decomposition is already complete (not strict)")
    return edges[0]


def _assert_claim(d: Decomposition, u: int, v: int) -> None:
    cu, cv = color_incidence(d, u), color_incidence(d, v)
    if not (cu.c0 == cv.c2 and cv.c0 == cu.c2 and cu.c1 == cv.c1):
        raise ConstructionError("complete", f"colour-incidence claim fails at edge {u}{v}")


def step_strong(state: CompletionState) -> CompletionState:
    """Colour one more edge, keeping every class a path forest.

    Tries the lexicographically first uncoloured edge with the lowest
    compatible colour. Failing that, one spare edge moves from some class b to
    another class so that b can take the edge, and as a last resort a later
    uncoloured edge is used.
    """
    _strong_hypothesis(state)
    d = state.current
    u, v = _first_uncoloured(state)

    for j, c in enumerate(d.classes):
        if _joinable_strong(c, u, v):
            return _advance(state, d.with_class(j, _with_edge(c, u, v)), recoloured=0)

    if not any(c.degree(u) < 2 and c.degree(v) < 2 for c in d.classes):
        _assert_claim(d, u, v)

    spare = [cur - orig for cur, orig in zip(d.classes, state.original.classes)]
    for b, sb in enumerate(spare):
        for x, y in sb.pairs():
            for a, ca in enumerate(d.classes):
                if a == b or not _joinable_strong(ca, x, y):
                    continue
                cb = d.classes[b].copy()
                cb.remove_edge(x, y)
                # the freed colour b takes uv, so no class shrinks
                if _joinable_strong(cb, u, v):
                    trial = d.with_class(a, _with_edge(ca, x, y)).with_class(b, _with_edge(cb, u, v))
                    return _advance(state, trial, recoloured=1)

    for x, y in sorted(set(state.uncoloured().edges())):
        for j, c in enumerate(d.classes):
            if _joinable_strong(c, x, y):
                return _advance(state, d.with_class(j, _with_edge(c, x, y)), recoloured=0)
    raise ConstructionError("complete", "no edge can be added to any class")


def weak_counters(d: Decomposition, u: int, v: int) -> dict[str, int]:
    """Partition sizes of the classes around the uncoloured edge ``uv``."""
    out = dict.fromkeys(("F1", "F2", "F3", "Q1", "Q2"), 0)
    for c in d.classes:
        uv = c.multiplicity(u, v)
        touching = c.degree(u) + c.degree(v) - uv
        if classify_class(c).is_two_factor:
            out["F1" if uv >= 2 else "F2" if uv == 1 else "F3"] += 1
        elif uv:
            out["Q1"] += 1
        elif touching >= 2:
            out["Q2"] += 1
    out["k_star"] = sum(out.values())
    return out


def step_weak(state: CompletionState) -> CompletionState:
    """Colour one more edge, never exceeding the 2-factor budget."""
    if state.mode != WEAK:
        raise ValueError("step_weak needs a weak-mode state")
    n, m, mu, k = state.n, state.m, state.mu, state.k
    if m < n - 2:
        raise OutOfRegimeError(f"m={m} below n-2={n - 2}")
    if m == n - 2 and n < 4:
        raise OutOfRegimeError("m = n-2 needs n >= 4")
    if 2 * k < mu * (n + m - 1):
        raise OutOfRegimeError(f"k={k} below mu(n+m-1)/2")
    count = state.two_factor_count()
    if count > state.budget:
        raise ValueError(f"{count} 2-factors already exceed the budget {state.budget}")

    d = state.current
    u, v = _first_uncoloured(state)
    counters = weak_counters(d, u, v)
    if count == state.budget:
        if 2 * counters["k_star"] + 2 * count > mu * (2 * n - 2) - 2 or counters["k_star"] >= k:
            raise ConstructionError("complete", f"2-factor counting bound fails: {counters}")

    for j, c in enumerate(d.classes):
        if c.degree(u) >= 2 or c.degree(v) >= 2:
            continue
        grown = _with_edge(c, u, v)
        if classify_class(grown) is ClassKind.INVALID:
            continue
        if classify_class(grown).is_two_factor and count + 1 > state.budget:
            continue
        return _advance(state, d.with_class(j, grown), recoloured=0, counters=counters)
    raise ConstructionError("complete", f"no colour available for edge {u}{v}")


def _advance(state: CompletionState, d: Decomposition, recoloured: int, counters=None) -> CompletionState:
    _check_enclosure(state, d)
    return replace(
        state,
        current=d,
        steps=state.steps + 1,
        recolourings=state.recolourings + recoloured,
        counters=counters or {},
    )


def complete_with_trace(state: CompletionState) -> CompletionState:
    """Run steps until nothing is uncoloured; returns the final state."""
    step = step_strong if state.mode == STRONG else step_weak
    remaining = state.uncoloured_count()
    for _ in range(remaining):
        before = state.current.sizes()
        state = step(state)
        after = state.current.sizes()
        if sum(after) != sum(before) + 1 or any(a < b for a, b in zip(after, before)):
            raise ConstructionError("complete", "step did not grow exactly one class by one edge")
    if state.uncoloured_count():
        raise ConstructionError("complete", "edges left uncoloured")
    return state


def complete(state: CompletionState) -> Decomposition:
    return complete_with_trace(state).current
