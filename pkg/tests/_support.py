"""Shared builders and independent reference checks for the test suite."""

from __future__ import annotations

import itertools

from enclosure.complete import STRONG, CompletionState, step_strong, step_weak
from enclosure.decomp import Decomposition, validate
from enclosure.graphcore import Multigraph

K3_EDGES = [(0, 1), (0, 2), (1, 2)]

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def decomposition(n: int, *classes) -> Decomposition:
    return Decomposition([Multigraph.from_edges(n, c) for c in classes])


def k3_singles() -> Decomposition:
    return decomposition(3, [(0, 1)], [(1, 2)], [(0, 2)])


def two_k3_paths() -> Decomposition:
    return decomposition(3, [(0, 1), (1, 2)], [(1, 2), (0, 2)], [(0, 2), (0, 1)])


def k4_cycle_instance() -> Decomposition:
    """K_4 as one 4-cycle, two single edges and two empty classes."""
    return decomposition(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [(0, 2)], [(1, 3)], [], [])


def k3_assignments():
    """All 27 labelled colourings of K_3's edges with 3 colours."""
    for colours in itertools.product(range(3), repeat=3):
        classes = [[] for _ in range(3)]
        for e, c in zip(K3_EDGES, colours):
            classes[c].append(e)
        yield colours, decomposition(3, *classes)


def brute_addible(pair_counts: dict, n: int, spare_per_pair: int) -> bool:
    """Backtracking search for an injection of single edges into spare edges
    on a different pair, at most ``spare_per_pair`` images per pair."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    items = [p for p in pairs for _ in range(pair_counts.get(p, 0))]
    room = {p: spare_per_pair for p in pairs}

    def place(i: int) -> bool:
        if i == len(items):
            return True
        for q in pairs:
            if q != items[i] and room[q] > 0:
                room[q] -= 1
                if place(i + 1):
                    return True
                room[q] += 1
        return False

    return place(0)


def monitored_completion(state: CompletionState):
    """Step a completion by hand, checking every intermediate state.

    Returns ``(final_state, problems)``; ``problems`` lists every violated
    invariant (empty when all hold).
    """
    problems = []
    todo = state.uncoloured_count()
    start = state.steps
    step = step_strong if state.mode == STRONG else step_weak
    for _ in range(todo):
        before = state.current.sizes()
        state = step(state)
        after = state.current.sizes()
        if any(a < b for a, b in zip(after, before)):
            problems.append(f"class shrank: {before} -> {after}")
        if sum(after) != sum(before) + 1:
            problems.append(f"step coloured {sum(after) - sum(before)} edges")
        if state.mode == STRONG and not validate(state.current, strong=True):
            problems.append("strongness lost")
        if state.mode != STRONG:
            if not validate(state.current):
                problems.append("not a path decomposition")
            if state.two_factor_count() > state.budget:
                problems.append(f"{state.two_factor_count()} 2-factors exceed budget {state.budget}")
    if state.uncoloured_count():
        problems.append(f"{state.uncoloured_count()} edges left after {todo} steps")
    if state.steps - start != todo:
        problems.append(f"{state.steps - start} steps for {todo} uncoloured edges")
    return state, problems

