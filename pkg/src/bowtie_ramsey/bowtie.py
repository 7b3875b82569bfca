"""The bowtie graph of a linear r-graph and its structural identities.

A bowtie is a pair of hyperedges meeting in exactly one vertex (its centre).
Two bowties ``{S1, T}`` and ``{S2, T}`` are adjacent when ``S1`` and ``S2``
meet in a vertex outside ``T``, i.e. when ``{S1, S2, T}`` is a copy of C3
(three edges pairwise meeting in three distinct vertices).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Iterable

from .errors import IdentityViolation, NotATriangle
from .hypergraph import LinearRGraph, classify_triple

EdgePair = tuple[int, int]


def _ordered(a: int, b: int) -> EdgePair:
    return (a, b) if a < b else (b, a)


class BowtieGraph:
    """Bowties of a linear r-graph, adjacency as sorted neighbour tuples.

    Bowtie ids follow centre-group order: centre vertex ascending, then the
    sorted hyperedge-id pair.
    """

    def __init__(
        self,
        r: int,
        bowties: Iterable[EdgePair],
        centres: Iterable[int],
        adjacency: Iterable[Iterable[int]],
        source: LinearRGraph | None = None,
    ):
        self.r = r
        self.bowties: tuple[EdgePair, ...] = tuple(_ordered(*b) for b in bowties)
        self.centres: tuple[int, ...] = tuple(centres)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adjacency)
        if not len(self.bowties) == len(self.centres) == len(self.adjacency):
            raise ValueError("bowties, centres and adjacency must have equal length")
        self.index: dict[EdgePair, int] = {b: i for i, b in enumerate(self.bowties)}
        groups: dict[int, list[int]] = {}
        for i, u in enumerate(self.centres):
            groups.setdefault(u, []).append(i)
        self.centre_groups: dict[int, tuple[int, ...]] = {u: tuple(v) for u, v in groups.items()}
        self.source = source

    def __len__(self) -> int:
        return len(self.bowties)

    def __repr__(self) -> str:
        return f"BowtieGraph(r={self.r}, bowties={len(self)}, edges={self.edge_count()})"

    def degree(self, b: int) -> int:
        return len(self.adjacency[b])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> Iterable[tuple[int, int]]:
        for a, nbrs in enumerate(self.adjacency):
            for b in nbrs:
                if a < b:
                    yield a, b

    def bowtie_id(self, e1: int, e2: int) -> int | None:
        return self.index.get(_ordered(e1, e2))

    def max_degree_bound(self) -> int:
        return 2 * (self.r - 1) ** 2

    def degree_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees()).items()))

    def to_dict(self) -> dict[str, Any]:
        """JSON form; hyperedge ids are reported in the parent graph's numbering."""
        parents = self.source.parent_ids if self.source is not None else None

        def ext(e: int) -> int:
            return parents[e] if parents is not None else e

        return {
            "r": self.r,
            "bowties": [[ext(s), ext(t), u] for (s, t), u in zip(self.bowties, self.centres)],
            "adjacency": [list(a) for a in self.adjacency],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> BowtieGraph:
        bows = d["bowties"]
        return cls(
            d["r"],
            ((s, t) for s, t, _ in bows),
            (u for _, _, u in bows),
            d["adjacency"],
        )


def build_bowtie_graph(g: LinearRGraph) -> BowtieGraph:
    """Build B(g) by scanning the (r-1)^2 cross pairs of every bowtie."""
    bowties: list[EdgePair] = []
    centres: list[int] = []
    for u in range(g.n):
        for s, t in combinations(g.incidence[u], 2):
            bowties.append(_ordered(s, t))
            centres.append(u)
    index = {b: i for i, b in enumerate(bowties)}
    adjacency: list[list[int]] = [[] for _ in bowties]
    edges = g.edges
    for i, (s, t) in enumerate(bowties):
        u = centres[i]
        s_rest = [x for x in edges[s] if x != u]
        t_rest = [y for y in edges[t] if y != u]
        nbrs = adjacency[i]
        for x in s_rest:
            for y in t_rest:
                q = g.edge_through(x, y)
                if q is None:
                    continue
                # q meets s in x and t in y, so it avoids u: {q, s, t} is a C3
                nbrs.append(index[_ordered(q, s)])
                nbrs.append(index[_ordered(q, t)])
    bg = BowtieGraph(g.r, bowties, centres, adjacency, source=g)
    for a, nbrs in enumerate(bg.adjacency):
        if len(set(nbrs)) != len(nbrs):
            raise IdentityViolation("bowtie neighbour uniqueness", detail=f"bowtie {a}")
        for b in nbrs:
            if a not in bg.adjacency[b]:
                raise IdentityViolation("bowtie adjacency symmetry", detail=f"{a} -> {b} not mirrored")
    return bg


def adjacent_by_definition(g: LinearRGraph, b1: EdgePair, b2: EdgePair) -> bool:
    """Direct test of the adjacency rule, used as a brute-force reference."""
    shared = set(b1) & set(b2)
    if len(shared) != 1 or b1 == b2:
        return False
    (t,) = shared
    (s1,) = set(b1) - shared
    (s2,) = set(b2) - shared
    e_s1, e_s2, e_t = set(g.edges[s1]), set(g.edges[s2]), set(g.edges[t])
    return len(e_s1 & e_s2) == 1 and not (e_s1 & e_s2 & e_t)


@dataclass
class BowtieInvariantReport:
    passed: bool
    degrees_even: bool
    max_degree: int
    max_degree_bound: int
    centre_groups_independent: bool
    degree_sum_identity: bool
    failures: list[dict[str, Any]] = field(default_factory=list)
    per_vertex: dict[int, tuple[int, int]] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "degrees_even": self.degrees_even,
            "max_degree": self.max_degree,
            "max_degree_bound": self.max_degree_bound,
            "centre_groups_independent": self.centre_groups_independent,
            "degree_sum_identity": self.degree_sum_identity,
            "failures": self.failures,
        }


def check_bowtie_invariants(bg: BowtieGraph, raise_on_failure: bool = True) -> BowtieInvariantReport:
    """Check degree parity and bound, independence of every B_u, and the
    per-vertex degree-sum identity

        sum_{b in B_u} d_B(b) = 2 (t(u) - C(r-1, 2) d(u))

    where t(u) counts triangles through u in the underlying graph of the
    source hypergraph and d(u) is its hyperedge degree.  Triangles are counted
    independently of the bowtie adjacency.
    """
    g = bg.source
    if g is None:
        raise ValueError("check_bowtie_invariants needs the source hypergraph")
    r = bg.r
    failures: list[dict[str, Any]] = []
    degs = bg.degrees()
    bound = bg.max_degree_bound()

    odd = [b for b, d in enumerate(degs) if d % 2]
    if odd:
        failures.append({"check": "degrees_even", "bowtie": odd[0], "vertex": bg.centres[odd[0]]})
    max_deg = max(degs, default=0)
    if max_deg > bound:
        b = degs.index(max_deg)
        failures.append({"check": "max_degree", "bowtie": b, "vertex": bg.centres[b]})

    independent = True
    for u, group in bg.centre_groups.items():
        members = set(group)
        if any(nb in members for b in group for nb in bg.adjacency[b]):
            independent = False
            failures.append({"check": "centre_group_independent", "vertex": u})

    tri = g.underlying().triangles_per_vertex()
    cr = comb(r - 1, 2)
    identity = True
    per_vertex = {}
    for u in range(g.n):
        lhs = sum(degs[b] for b in bg.centre_groups.get(u, ()))
        rhs = 2 * (tri[u] - cr * g.degree(u))
        per_vertex[u] = (lhs, rhs)
        if lhs != rhs:
            identity = False
            failures.append({"check": "degree_sum_identity", "vertex": u, "lhs": lhs, "rhs": rhs})

    report = BowtieInvariantReport(
        passed=not failures,
        degrees_even=not odd,
        max_degree=max_deg,
        max_degree_bound=bound,
        centre_groups_independent=independent,
        degree_sum_identity=identity,
        failures=failures,
        per_vertex=per_vertex,
    )
    if failures and raise_on_failure:
        f = failures[0]
        raise IdentityViolation(f["check"], f.get("vertex"), str(f))
    return report


@dataclass(frozen=True)
class TriangleSupport:
    """How a triangle of the underlying graph sits in the hypergraph.

    ``in_edge`` is set when one hyperedge covers all three vertices;
    otherwise ``c3 = (Q, S, T)`` with {u,v} in Q, {u,w} in S, {v,w} in T and
    ``b_triangle`` holds the bowtie ids of {Q,S}, {Q,T}, {S,T}.
    """

    in_edge: int | None = None
    c3: tuple[int, int, int] | None = None
    b_triangle: tuple[int, int, int] | None = None


def triangle_to_c3(g: LinearRGraph, triangle: Iterable[int], bg: BowtieGraph | None = None) -> TriangleSupport:
    u, v, w = triangle
    q, s, t = g.edge_through(u, v), g.edge_through(u, w), g.edge_through(v, w)
    if q is None or s is None or t is None or len({u, v, w}) != 3:
        raise NotATriangle(f"{{{u}, {v}, {w}}} is not a triangle of the underlying graph")
    if q == s == t:
        return TriangleSupport(in_edge=q)
    if classify_triple(g, q, s, t) is None:
        raise IdentityViolation("triangle support", detail=f"edges {q}, {s}, {t} are not a C3")
    btri = None
    if bg is not None:
        ids = (bg.bowtie_id(q, s), bg.bowtie_id(q, t), bg.bowtie_id(s, t))
        if None in ids:
            raise IdentityViolation("triangle support", detail="missing bowtie")
        btri = ids  # type: ignore[assignment]
        a, b, c = ids
        if not (b in bg.adjacency[a] and c in bg.adjacency[a] and c in bg.adjacency[b]):
            raise IdentityViolation("triangle support", detail="bowties do not form a B-triangle")
    return TriangleSupport(c3=(q, s, t), b_triangle=btri)


def b_triangles(bg: BowtieGraph) -> Iterable[tuple[int, int, int]]:
    adj = [set(a) for a in bg.adjacency]
    for a, b in bg.edges():
        for c in adj[a] & adj[b]:
            if c > b:
                yield a, b, c


@dataclass
class BTriangleClassification:
    c3_count: int
    non_c3_count: int
    pasch_witnesses: list[tuple[int, ...]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "c3_count": self.c3_count,
            "non_c3_count": self.non_c3_count,
            "pasch_witnesses": [list(w) for w in self.pasch_witnesses],
        }


def classify_b_triangles(bg: BowtieGraph) -> BTriangleClassification:
    """Split triangles of B into those supported by three hyperedges forming a
    C3 and all others; for r = 3 the others come with their hyperedge set."""
    g = bg.source
    c3 = 0
    others: list[tuple[int, ...]] = []
    for a, b, c in b_triangles(bg):
        support = sorted(set(bg.bowties[a]) | set(bg.bowties[b]) | set(bg.bowties[c]))
        if len(support) == 3 and (g is None or classify_triple(g, *support) is not None):
            c3 += 1
        else:
            others.append(tuple(support))
    witnesses = sorted(set(others)) if bg.r == 3 else []
    return BTriangleClassification(c3, len(others), witnesses)


def natural_decomposition(bg: BowtieGraph) -> dict[tuple[int, int, int], list[tuple[int, int]]]:
    """Map each C3 (sorted hyperedge triple) to the B-edges it induces."""
    out: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    for a, b in bg.edges():
        key = tuple(sorted(set(bg.bowties[a]) | set(bg.bowties[b])))
        out.setdefault(key, []).append((a, b))  # type: ignore[arg-type]
    return out


def bowtie_count_from_degrees(g: LinearRGraph) -> int:
    """Number of bowties from degrees alone: sum_u C(d_G(u)/(r-1), 2)."""
    ug = g.underlying()
    total = 0
    for d in ug.degree:
        if d % (g.r - 1):
            raise IdentityViolation("degree divisibility", detail=f"d_G = {d} not divisible by r-1")
        total += comb(d // (g.r - 1), 2)
    return total


def bowtie_summary(bg: BowtieGraph, invariants: BowtieInvariantReport | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "bowtie_count": len(bg),
        "edge_count": bg.edge_count(),
        "degree_histogram": {str(k): v for k, v in bg.degree_histogram().items()},
    }
    if invariants is not None:
        out["invariants"] = invariants.to_dict()
    return out
