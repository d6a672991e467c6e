"""Dense binary directed graphs with no self-links, plus text serialization."""

from __future__ import annotations

import numpy as np

__all__ = [
    "DirectedGraph",
    "read_matrix",
    "write_matrix",
    "read_arclist",
    "write_arclist",
]


class DirectedGraph:
    """A directed graph on n units stored as a dense 0/1 adjacency matrix.

    Entry (i, j) is 1 iff the arc i -> j exists.  Self-links are forbidden.
    Mutation goes through explicit arc operations; instances are not safe
    for concurrent mutation, but distinct instances can be used in parallel.
    """

    __slots__ = ("a",)

    def __init__(self, adjacency):
        a = np.asarray(adjacency, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if np.diagonal(a).any():
            raise ValueError("self-links are not allowed (diagonal must be 0)")
        self.a = a

    @classmethod
    def empty(cls, n: int) -> "DirectedGraph":
        if n < 1:
            raise ValueError("n must be positive")
        return cls(np.zeros((n, n), dtype=np.uint8))

    @classmethod
    def complete(cls, n: int) -> "DirectedGraph":
        g = cls.empty(n)
        g.a[:] = 1
        np.fill_diagonal(g.a, 0)
        return g

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "DirectedGraph":
        g = cls.empty(n)
        for i, j in arcs:
            g.add_arc(i, j)
        return g

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def copy(self) -> "DirectedGraph":
        g = DirectedGraph.__new__(DirectedGraph)
        g.a = self.a.copy()
        return g

    def has_arc(self, i: int, j: int) -> bool:
        return bool(self.a[i, j])

    def add_arc(self, i: int, j: int) -> None:
        if i == j:
            raise ValueError("self-links are not allowed")
        if self.a[i, j]:
            raise ValueError(f"arc {i}->{j} already present")
        self.a[i, j] = 1

    def remove_arc(self, i: int, j: int) -> None:
        if not self.a[i, j]:
            raise ValueError(f"arc {i}->{j} not present")
        self.a[i, j] = 0

    def arc_count(self) -> int:
        return int(self.a.sum())

    def density(self) -> float:
        """Arc count over the n^2 - n possible off-diagonal slots."""
        n = self.n
        if n < 2:
            raise ValueError("density requires n >= 2")
        return self.arc_count() / (n * n - n)

    def arcs(self) -> np.ndarray:
        """All arcs as an (m, 2) array in row-major order."""
        return np.argwhere(self.a == 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, DirectedGraph) and np.array_equal(self.a, other.a)

    def __hash__(self):
        raise TypeError("DirectedGraph is mutable and unhashable")

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, arcs={self.arc_count()})"


def write_matrix(g: DirectedGraph, path) -> None:
    """Write the matrix text format: first line n, then n rows of 0/1 digits."""
    lines = [str(g.n)]
    for row in g.a:
        lines.append(" ".join(str(int(x)) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path) -> DirectedGraph:
    with open(path) as fh:
        tokens = fh.read().split("\n")
    header = tokens[0].strip()
    if not header.isdigit():
        raise ValueError(f"bad header line {header!r}, expected unit count")
    n = int(header)
    rows = []
    for line in tokens[1 : n + 1]:
        row = [int(x) for x in line.split()]
        if len(row) != n:
            raise ValueError(f"expected {n} entries per row, got {len(row)}")
        rows.append(row)
    if len(rows) != n:
        raise ValueError(f"expected {n} rows, got {len(rows)}")
    return DirectedGraph(np.array(rows, dtype=np.uint8))


def write_arclist(g: DirectedGraph, path) -> None:
    """Write the arc-list format: one 'i j' line per arc, 1-based indices."""
    with open(path, "w") as fh:
        for i, j in g.arcs():
            fh.write(f"{i + 1} {j + 1}\n")


def read_arclist(path, n: int | None = None) -> DirectedGraph:
    """Read the arc-list format; n defaults to the largest index seen."""
    pairs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            i, j = (int(x) for x in line.split())
            pairs.append((i - 1, j - 1))
    if n is None:
        if not pairs:
            raise ValueError("cannot infer n from an empty arc list")
        n = 1 + max(max(i, j) for i, j in pairs)
    return DirectedGraph.from_arcs(n, pairs)
