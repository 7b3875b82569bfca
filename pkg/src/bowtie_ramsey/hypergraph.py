"""Linear r-uniform hypergraphs, their underlying graphs and configurations.

Vertices are dense ids ``0..n-1``; an edge id is the edge's position in the
input list.  Every edge is stored as a sorted vertex tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import LhgFormatError, LinearityViolation, NonUniformEdge

Pair = tuple[int, int]


def pair_key(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


class LinearRGraph:
    """An immutable linear r-graph with an eager pair -> edge index.

    ``parent_ids`` is set when the graph is a sub-hypergraph (e.g. a colour
    class) of a larger one; ``parent_ids[e]`` is the id of local edge ``e``
    in the parent.
    """

    __slots__ = ("r", "n", "edges", "pair_index", "incidence", "parent_ids")

    def __init__(
        self,
        r: int,
        n: int,
        edges: Iterable[Iterable[int]],
        parent_ids: Sequence[int] | None = None,
    ):
        if r < 2:
            raise ValueError(f"uniformity r must be >= 2, got {r}")
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        canon: list[tuple[int, ...]] = []
        pair_index: dict[Pair, int] = {}
        incidence: list[list[int]] = [[] for _ in range(n)]
        for idx, raw in enumerate(edges):
            edge = tuple(sorted(raw))
            if len(edge) != r or len(set(edge)) != r:
                raise NonUniformEdge(idx, edge, r)
            for v in edge:
                if not 0 <= v < n:
                    raise ValueError(f"edge {idx} has vertex {v} outside [0, {n})")
            for p in combinations(edge, 2):
                other = pair_index.get(p)
                if other is not None:
                    raise LinearityViolation(p, other, idx)
                pair_index[p] = idx
            for v in edge:
                incidence[v].append(idx)
            canon.append(edge)
        if parent_ids is not None and len(parent_ids) != len(canon):
            raise ValueError("parent_ids must have one entry per edge")
        self.r = r
        self.n = n
        self.edges: tuple[tuple[int, ...], ...] = tuple(canon)
        self.pair_index = pair_index
        self.incidence: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in incidence)
        self.parent_ids: tuple[int, ...] | None = tuple(parent_ids) if parent_ids is not None else None

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"LinearRGraph(r={self.r}, n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearRGraph):
            return NotImplemented
        return (self.r, self.n, self.edges) == (other.r, other.n, other.edges)

    def __hash__(self) -> int:
        return hash((self.r, self.n, self.edges))

    def edge_through(self, u: int, v: int) -> int | None:
        """Id of the unique edge containing both ``u`` and ``v``, if any."""
        return self.pair_index.get(pair_key(u, v))

    def degree(self, u: int) -> int:
        """Hypergraph degree: number of edges through ``u``."""
        return len(self.incidence[u])

    def edge_set(self, e: int) -> frozenset[int]:
        return frozenset(self.edges[e])

    def intersection(self, e1: int, e2: int) -> int | None:
        """The vertex shared by two distinct edges, or None if disjoint."""
        common = set(self.edges[e1]).intersection(self.edges[e2])
        return next(iter(common)) if common else None

    def sub(self, edge_ids: Iterable[int]) -> LinearRGraph:
        """Sub-hypergraph on the same vertex set, remembering parent ids."""
        ids = sorted(edge_ids)
        base = self.parent_ids
        parents = [base[e] for e in ids] if base is not None else ids
        return LinearRGraph(self.r, self.n, (self.edges[e] for e in ids), parent_ids=parents)

    def to_parent(self, edge_ids: Iterable[int]) -> list[int]:
        if self.parent_ids is None:
            return sorted(edge_ids)
        return sorted(self.parent_ids[e] for e in edge_ids)

    def underlying(self) -> UnderlyingGraph:
        return UnderlyingGraph.from_hypergraph(self)


def build(r: int, n: int, edge_list: Iterable[Iterable[int]]) -> LinearRGraph:
    """Validate and index an edge list."""
    return LinearRGraph(r, n, edge_list)


def is_complete(g: LinearRGraph) -> bool:
    return len(g.pair_index) == g.n * (g.n - 1) // 2


def span(g: LinearRGraph, edge_ids: Iterable[int]) -> int:
    covered: set[int] = set()
    for e in edge_ids:
        covered.update(g.edges[e])
    return len(covered)


def classify_triple(g: LinearRGraph, e1: int, e2: int, e3: int) -> tuple[int, int, int] | None:
    """Return the three pairwise intersection vertices if the edges form a C3.

    Three edges form the 3-edge configuration on 3r-3 vertices exactly when
    they pairwise meet in three distinct vertices.  ``None`` otherwise.
    """
    if len({e1, e2, e3}) != 3:
        return None
    a = g.intersection(e1, e2)
    b = g.intersection(e1, e3)
    c = g.intersection(e2, e3)
    if a is None or b is None or c is None or len({a, b, c}) != 3:
        return None
    return (a, b, c)


@dataclass(frozen=True)
class UnderlyingGraph:
    n: int
    adjacency: tuple[frozenset[int], ...]

    @classmethod
    def from_hypergraph(cls, g: LinearRGraph) -> UnderlyingGraph:
        adj: list[set[int]] = [set() for _ in range(g.n)]
        for u, v in g.pair_index:
            adj[u].add(v)
            adj[v].add(u)
        return cls(g.n, tuple(frozenset(a) for a in adj))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Pair]) -> UnderlyingGraph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in pairs:
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @property
    def degree(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def triangles_per_vertex(self) -> list[int]:
        """Triangle count through each vertex (sorted-adjacency intersection per edge)."""
        nbrs = [sorted(a) for a in self.adjacency]
        higher = [set(x for x in nb if x > u) for u, nb in enumerate(nbrs)]
        per = [0] * self.n
        for u in range(self.n):
            hu = higher[u]
            for v in nbrs[u]:
                if v <= u:
                    continue
                for w in hu.intersection(higher[v]):
                    per[u] += 1
                    per[v] += 1
                    per[w] += 1
        return per

    def triangle_count(self) -> int:
        return sum(self.triangles_per_vertex()) // 3

    def cherry_count(self) -> int:
        return sum(d * (d - 1) // 2 for d in self.degree)


@dataclass(frozen=True)
class Configuration:
    """A set of hyperedges with its cached vertex span."""

    edge_ids: frozenset[int]
    span: int = field(compare=False)

    @classmethod
    def of(cls, g: LinearRGraph, edge_ids: Iterable[int]) -> Configuration:
        ids = frozenset(edge_ids)
        return cls(ids, span(g, ids))

    @property
    def k(self) -> int:
        return len(self.edge_ids)

    def is_configuration(self, v: int) -> bool:
        return self.span <= v

    def sorted_ids(self) -> list[int]:
        return sorted(self.edge_ids)


# --- .lhg text format -------------------------------------------------------


def parse_lhg(text: str) -> LinearRGraph:
    """Parse ``r n m`` followed by m lines of r vertex ids."""
    lines = text.splitlines()
    if not lines:
        raise LhgFormatError(1, "empty input, expected header 'r n m'")
    header = lines[0].split()
    if len(header) != 3:
        raise LhgFormatError(1, f"expected 'r n m', got {lines[0]!r}")
    try:
        r, n, m = (int(x) for x in header)
    except ValueError:
        raise LhgFormatError(1, f"non-integer header {lines[0]!r}") from None
    if r < 2 or n < 0 or m < 0:
        raise LhgFormatError(1, f"invalid header values r={r} n={n} m={m}")
    edges = []
    for i in range(m):
        lineno = i + 2
        if lineno > len(lines):
            raise LhgFormatError(lineno, f"expected {m} edges, file ended after {i}")
        tokens = lines[i + 1].split()
        if len(tokens) != r:
            raise LhgFormatError(lineno, f"expected {r} vertex ids, got {len(tokens)}")
        try:
            edge = [int(t) for t in tokens]
        except ValueError:
            raise LhgFormatError(lineno, f"non-integer vertex id in {lines[i + 1]!r}") from None
        for v in edge:
            if not 0 <= v < n:
                raise LhgFormatError(lineno, f"vertex id {v} out of range [0, {n})")
        edges.append(edge)
    for j in range(m + 1, len(lines)):
        if lines[j].strip():
            raise LhgFormatError(j + 1, f"trailing garbage {lines[j]!r}")
    try:
        return LinearRGraph(r, n, edges)
    except NonUniformEdge as exc:
        raise LhgFormatError(exc.index + 2, str(exc)) from exc
    except LinearityViolation as exc:
        raise LhgFormatError(exc.edges[1] + 2, str(exc)) from exc


def format_lhg(g: LinearRGraph) -> str:
    out = [f"{g.r} {g.n} {g.m}"]
    out.extend(" ".join(map(str, e)) for e in g.edges)
    return "\n".join(out) + "\n"


def read_lhg(path: str | Path) -> LinearRGraph:
    return parse_lhg(Path(path).read_text())


def write_lhg(g: LinearRGraph, path: str | Path) -> None:
    Path(path).write_text(format_lhg(g))
