"""Labeled graphs over F_p and generalized local complementation."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from graphconcat.algebra import FieldError, FpMatrix, IntArray, check_prime


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph operations."""


class LabeledGraph:
    """Simple undirected graph with edge labels in F_p.

    The adjacency matrix is symmetric with zero diagonal; label 0 means no edge.
    """

    __slots__ = ("adjacency",)

    def __init__(self, adjacency: FpMatrix | npt.ArrayLike, p: int | None = None) -> None:
        if not isinstance(adjacency, FpMatrix):
            if p is None:
                raise GraphError("a modulus is required when building from a raw array")
            adjacency = FpMatrix(adjacency, p)
        elif p is not None and p != adjacency.p:
            raise FieldError(f"cannot mix moduli {adjacency.p} and {p}")
        a = adjacency.array
        if a.shape[0] != a.shape[1]:
            raise GraphError(f"adjacency must be square, got {a.shape}")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency matrix is not symmetric")
        if np.any(np.diag(a)):
            raise GraphError("adjacency matrix has a nonzero diagonal")
        object.__setattr__(self, "adjacency", adjacency)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LabeledGraph is immutable")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int] | tuple[int, int, int]], p: int = 2
    ) -> LabeledGraph:
        """Build from (u, v) or (u, v, label) tuples; labels default to 1."""
        p = check_prime(p)
        a = np.zeros((n, n), dtype=np.int64)
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            label = int(edge[2]) if len(edge) > 2 else 1
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            a[u, v] = a[v, u] = label % p
        return cls(FpMatrix(a, p))

    @classmethod
    def empty(cls, n: int, p: int = 2) -> LabeledGraph:
        return cls(FpMatrix.zeros(n, n, p))

    @property
    def n(self) -> int:
        return self.adjacency.rows

    @property
    def p(self) -> int:
        return self.adjacency.p

    @property
    def array(self) -> IntArray:
        return self.adjacency.array

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges (u, v, label) with u < v, sorted."""
        rows, cols = np.nonzero(np.triu(self.array, 1))
        return [(int(u), int(v), int(self.array[u, v])) for u, v in zip(rows, cols)]

    def neighbors(self, i: int) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.array[i])]

    def permuted(self, order: Sequence[int]) -> LabeledGraph:
        """Graph whose vertex t is the old vertex order[t]."""
        order = np.asarray(order, dtype=np.int64)
        return LabeledGraph(FpMatrix(self.array[np.ix_(order, order)], self.p))

    def induced(self, vertices: Sequence[int]) -> LabeledGraph:
        return self.permuted(vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.n}, p={self.p}, edges={self.edges()})"


@dataclass(frozen=True)
class GlcMove:
    """A generalized local complementation at `vertex` with support vector `support`."""

    vertex: int
    support: tuple[int, ...]

    @classmethod
    def from_set(cls, vertex: int, support: Iterable[int], n: int) -> GlcMove:
        """Binary-style move whose support is the indicator vector of a vertex set."""
        v = [0] * n
        for j in support:
            v[j] = 1
        return cls(vertex, tuple(v))

    def vector(self, p: int) -> IntArray:
        return np.mod(np.asarray(self.support, dtype=np.int64), p)

    def validate(self, g: LabeledGraph) -> None:
        if not 0 <= self.vertex < g.n:
            raise GraphError(f"vertex {self.vertex} out of range for {g.n} vertices")
        if len(self.support) != g.n:
            raise GraphError(f"support has length {len(self.support)}, expected {g.n}")
        v = self.vector(g.p)
        if v[self.vertex]:
            raise GraphError("support must vanish on the move's own vertex")
        clash = np.flatnonzero((v != 0) & (g.array[self.vertex] != 0))
        if clash.size:
            raise GraphError(
                f"support overlaps the neighborhood of {self.vertex} at {clash.tolist()}"
            )


def glc(g: LabeledGraph, move: GlcMove) -> LabeledGraph:
    """Generalized local complementation: F -> F + v^T f_i + f_i^T v."""
    move.validate(g)
    v = move.vector(g.p)
    f_i = g.array[move.vertex]
    update = np.outer(v, f_i)
    return LabeledGraph(FpMatrix(g.array + update + update.T, g.p))


def glc_array(adjacency: IntArray, vertex: int, support: IntArray, p: int) -> IntArray:
    """In-place kernel used by the concatenation pass; assumes the move is valid."""
    f_i = adjacency[vertex].copy()
    update = np.outer(support, f_i)
    adjacency += update + update.T
    np.mod(adjacency, p, out=adjacency)
    return adjacency


def delete_vertex(g: LabeledGraph, i: int) -> LabeledGraph:
    """Induced subgraph on all vertices except i, keeping the relative order."""
    if not 0 <= i < g.n:
        raise GraphError(f"vertex {i} out of range for {g.n} vertices")
    keep = [j for j in range(g.n) if j != i]
    return g.induced(keep)


def delete_vertices(g: LabeledGraph, vertices: Iterable[int]) -> LabeledGraph:
    drop = set(vertices)
    for i in drop:
        if not 0 <= i < g.n:
            raise GraphError(f"vertex {i} out of range for {g.n} vertices")
    return g.induced([j for j in range(g.n) if j not in drop])


ROLE_COLORS = {"input": "white", "auxiliary": "green", "output": "black"}


def export_dot(
    g: LabeledGraph,
    roles: Mapping[int, str] | Sequence[str] | None = None,
    names: Mapping[int, str] | Sequence[str] | None = None,
    graph_name: str = "G",
) -> str:
    """Render as undirected DOT; labels other than 1 become edge labels."""
    if roles is not None and not isinstance(roles, Mapping):
        roles = dict(enumerate(roles))
    if names is not None and not isinstance(names, Mapping):
        names = dict(enumerate(names))
    lines = [f"graph {graph_name} {{"]
    for v in range(g.n):
        attrs = []
        if names and v in names:
            attrs.append(f'label="{names[v]}"')
        if roles and v in roles:
            color = ROLE_COLORS.get(roles[v])
            if color is None:
                raise GraphError(f"unknown role {roles[v]!r}")
            font = "white" if color == "black" else "black"
            attrs.append(f'style=filled, fillcolor={color}, fontcolor={font}')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {v}{suffix};")
    for u, v, label in g.edges():
        suffix = f' [label="{label}"]' if label != 1 else ""
        lines.append(f"  {u} -- {v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
