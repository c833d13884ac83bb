"""Edge-coloured decompositions and the per-class statistics the conditions use."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence


from .graphcore import Multigraph, component_labels, uniform_multiplicity


class ClassKind(enum.Enum):
    PATH_FOREST = "path-forest"
    PATHS_AND_CYCLES = "paths-and-cycles"
    TWO_FACTOR = "two-factor"
    HAMILTONIAN_CYCLE = "hamiltonian-cycle"
    INVALID = "invalid"

    @property
    def is_path_class(self) -> bool:
        return self is not ClassKind.INVALID

    @property
    def is_two_factor(self) -> bool:
        return self in (ClassKind.TWO_FACTOR, ClassKind.HAMILTONIAN_CYCLE)


def _is_acyclic(c: Multigraph) -> bool:
    if c.loops.any() or (c.mult > 1).any():
        return False
    # a forest has exactly n - components edges
    comps = len(set(component_labels(c).tolist())) if c.n else 0
    return c.edge_count() == c.n - comps


def classify_class(c: Multigraph) -> ClassKind:
    deg = c.degrees()
    if (deg > 2).any():
        return ClassKind.INVALID
    if _is_acyclic(c):
        return ClassKind.PATH_FOREST
    if c.n and (deg == 2).all():
        if len(set(component_labels(c).tolist())) == 1:
            return ClassKind.HAMILTONIAN_CYCLE
        return ClassKind.TWO_FACTOR
    return ClassKind.PATHS_AND_CYCLES


def path_count(c: Multigraph) -> int:
    """Number of maximal paths (trivial ones included) in a class of max degree 2."""
    labels = component_labels(c)
    deg = c.degrees()
    count = 0
    for comp in set(labels.tolist()):
        members = labels == comp
        if not (deg[members] == 2).all():
            count += 1
    return count


class Decomposition:
    """An ordered list of colour classes whose sum is ``base``.

    ``base`` defaults to the sum of the classes. Passing it explicitly makes
    the constructor check that the classes partition it exactly.
    """

    def __init__(self, classes: Sequence[Multigraph], base: Multigraph | None = None):
        if not classes:
            raise ValueError("a decomposition needs at least one class")
        n = classes[0].n
        if any(c.n != n for c in classes):
            raise ValueError("all classes must share the vertex set")
        total = Multigraph(n)
        for c in classes:
            total = total + c
        if base is not None and total != base:
            raise ValueError("classes do not sum to the base multigraph")
        self.classes = [c.copy() for c in classes]
        self.base = total

    @classmethod
    def from_edge_lists(cls, n: int, edge_lists) -> "Decomposition":
        return cls([Multigraph.from_edges(n, edges) for edges in edge_lists])

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def lam(self) -> int | None:
        """Edge multiplicity if the base is a complete multigraph."""
        return uniform_multiplicity(self.base)

    def sizes(self) -> list[int]:
        return [c.edge_count() for c in self.classes]

    def kinds(self) -> list[ClassKind]:
        return [classify_class(c) for c in self.classes]

    def edge_lists(self) -> list[list[tuple[int, int]]]:
        return [list(c.edges()) for c in self.classes]

    def copy(self) -> "Decomposition":
        return Decomposition(self.classes)

    def with_class(self, i: int, c: Multigraph) -> "Decomposition":
        classes = list(self.classes)
        classes[i] = c
        return Decomposition(classes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.k == other.k and all(a == b for a, b in zip(self.classes, other.classes))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Decomposition(n={self.n}, classes={self.edge_lists()})"


@dataclass
class DecompositionProfile:
    n: int
    s: Counter = field(default_factory=Counter)
    s1_pair: dict[tuple[int, int], int] = field(default_factory=dict)
    two_factor_count: int = 0
    cycle_free_count: int = 0

    def count(self, i: int) -> int:
        """``|S_i|``: classes with exactly ``i`` edges."""
        return self.s.get(i, 0)

    def pair_count(self, u: int, v: int) -> int:
        return self.s1_pair.get((min(u, v), max(u, v)), 0)

    def max_pair_count(self) -> int:
        return max(self.s1_pair.values(), default=0)


def profile(a: Decomposition) -> DecompositionProfile:
    prof = DecompositionProfile(n=a.n)
    for i, c in enumerate(a.classes):
        kind = classify_class(c)
        if kind is ClassKind.INVALID:
            raise ValueError(f"class {i} has a vertex of degree above 2")
        size = c.edge_count()
        prof.s[size] += 1
        if size == 1:
            (u, v), = c.edges()
            key = (min(u, v), max(u, v))
            prof.s1_pair[key] = prof.s1_pair.get(key, 0) + 1
        if kind.is_two_factor:
            prof.two_factor_count += 1
        if kind is ClassKind.PATH_FOREST:
            prof.cycle_free_count += 1
    return prof


@dataclass(frozen=True)
class Validation:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(a: Decomposition, strong: bool = False) -> Validation:
    """Accept path decompositions; with ``strong`` also demand cycle-free classes."""
    for i, c in enumerate(a.classes):
        kind = classify_class(c)
        if kind is ClassKind.INVALID:
            return Validation(False, i, "vertex of degree above 2")
        if strong and kind is not ClassKind.PATH_FOREST:
            return Validation(False, i, "class contains a cycle")
    return Validation(True)


def is_strong_path_class(c: Multigraph) -> bool:
    return classify_class(c) is ClassKind.PATH_FOREST

