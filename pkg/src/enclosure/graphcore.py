"""Loop-aware undirected multigraphs on dense integer vertices."""

from __future__ import annotations

from typing import Iterator

import numpy as np


class Multigraph:
    """Multigraph on vertices ``0..n-1``.

    ``mult`` is a symmetric ``n x n`` table of edge multiplicities with a zero
    diagonal; loops live in the separate ``loops`` vector.
    """

    __slots__ = ("n", "mult", "loops")

    def __init__(self, n: int, mult=None, loops=None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = int(n)
        if mult is None:
            mult = np.zeros((n, n), dtype=np.int64)
        else:
            mult = np.array(mult, dtype=np.int64, copy=True)
        if loops is None:
            loops = np.zeros(n, dtype=np.int64)
        else:
            loops = np.array(loops, dtype=np.int64, copy=True)
        if mult.shape != (n, n) or loops.shape != (n,):
            raise ValueError("table shapes do not match vertex count")
        if (mult < 0).any() or (loops < 0).any():
            raise ValueError("multiplicities must be nonnegative")
        if not np.array_equal(mult, mult.T):
            raise ValueError("multiplicity table must be symmetric")
        if np.diagonal(mult).any():
            raise ValueError("loops belong in the loop vector, not the diagonal")
        self.mult = mult
        self.loops = loops

    @classmethod
    def from_edges(cls, n: int, edges) -> "Multigraph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def copy(self) -> "Multigraph":
        return Multigraph(self.n, self.mult, self.loops)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def add_edge(self, u: int, v: int, count: int = 1) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            self.loops[u] += count
        else:
            self.mult[u, v] += count
            self.mult[v, u] += count

    def remove_edge(self, u: int, v: int, count: int = 1) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        have = self.loops[u] if u == v else self.mult[u, v]
        if have < count:
            raise ValueError(f"cannot remove {count} copies of {u}{v}: only {have} present")
        self.add_edge(u, v, -count)

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return int(self.loops[u])
        return int(self.mult[u, v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.mult[v].sum() + 2 * self.loops[v])

    def degrees(self) -> np.ndarray:
        return self.mult.sum(axis=1) + 2 * self.loops

    def edge_count(self) -> int:
        return int(np.triu(self.mult, 1).sum() + self.loops.sum())

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge as ``(u, v)`` with ``u <= v``, parallel copies repeated."""
        for u in range(self.n):
            for _ in range(int(self.loops[u])):
                yield (u, u)
            for v in range(u + 1, self.n):
                for _ in range(int(self.mult[u, v])):
                    yield (u, v)

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Vertex pairs ``u < v`` carrying at least one edge."""
        us, vs = np.nonzero(np.triu(self.mult, 1))
        return zip(us.tolist(), vs.tolist())

    def is_loopless(self) -> bool:
        return not self.loops.any()

    def is_subgraph_of(self, other: "Multigraph") -> bool:
        return (
            self.n == other.n
            and bool((self.mult <= other.mult).all())
            and bool((self.loops <= other.loops).all())
        )

    def __add__(self, other: "Multigraph") -> "Multigraph":
        if self.n != other.n:
            raise ValueError("vertex counts differ")
        return Multigraph(self.n, self.mult + other.mult, self.loops + other.loops)

    def __sub__(self, other: "Multigraph") -> "Multigraph":
        if self.n != other.n:
            raise ValueError("vertex counts differ")
        mult = self.mult - other.mult
        loops = self.loops - other.loops
        if (mult < 0).any() or (loops < 0).any():
            raise ValueError("multigraph subtraction underflow")
        return Multigraph(self.n, mult, loops)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.mult, other.mult)
            and np.array_equal(self.loops, other.loops)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, edges={list(self.edges())})"


def complete_multigraph(n: int, lam: int) -> Multigraph:
    """``lam`` copies of every edge of the complete graph on ``n`` vertices."""
    if n < 1 or lam < 1:
        raise ValueError("complete multigraph needs n >= 1 and lambda >= 1")
    mult = np.full((n, n), lam, dtype=np.int64)
    np.fill_diagonal(mult, 0)
    return Multigraph(n, mult)


def degree(g: Multigraph, v: int) -> int:
    """Degree of ``v``, loops counted twice."""
    return g.degree(v)


def component_labels(g: Multigraph) -> np.ndarray:
    """Connected-component label per vertex (labels are the smallest member)."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.pairs():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return np.array([find(x) for x in range(g.n)], dtype=np.int64)


def component_count(g: Multigraph) -> int:
    """Number of connected components; isolated vertices count individually."""
    if g.n == 0:
        return 0
    return int(len(set(component_labels(g).tolist())))


def uniform_multiplicity(g: Multigraph) -> int | None:
    """Return ``lam`` if ``g`` is exactly ``lam`` K_n, else ``None``."""
    if g.loops.any():
        return None
    if g.n < 2:
        return None
    off = g.mult[~np.eye(g.n, dtype=bool)]
    lam = int(off[0])
    if lam < 1 or (off != lam).any():
        return None
    return lam
