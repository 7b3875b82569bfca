from __future__ import annotations

from itertools import combinations

import pytest

from bowtie_ramsey.generators import affine_plane, bose_sts, fano, projective_plane, skolem_sts
from bowtie_ramsey.hypergraph import LinearRGraph

ACCEPTANCE_LINES: list[str] = []


def zoo() -> list[tuple[str, LinearRGraph]]:
    out = [("fano", fano())]
    out += [(f"bose{n}", bose_sts(n)) for n in (9, 15, 21, 27, 33)]
    out += [(f"skolem{n}", skolem_sts(n)) for n in (13, 19, 25, 31)]
    for q in (2, 3, 5, 7):
        out.append((f"AG(2,{q})", affine_plane(q)))
        out.append((f"PG(2,{q})", projective_plane(q)))
    return out


def book(base: LinearRGraph, pages: int, spine: int = 0) -> LinearRGraph:
    """Copies of ``base`` glued along the edge ``spine`` (kept as edge 0)."""
    spine_v = base.edges[spine]
    others = [v for v in range(base.n) if v not in spine_v]
    n = base.r + pages * len(others)
    edges = [list(range(base.r))]
    for p in range(pages):
        relabel = {v: i for i, v in enumerate(spine_v)}
        relabel.update({v: base.r + p * len(others) + i for i, v in enumerate(others)})
        for e, edge in enumerate(base.edges):
            if e != spine:
                edges.append([relabel[x] for x in edge])
    return LinearRGraph(base.r, n, edges)


# --- brute-force references, independent of the package's fast paths ----------


def brute_bowties(g: LinearRGraph) -> set[frozenset[int]]:
    return {
        frozenset((a, b))
        for a, b in combinations(range(g.m), 2)
        if len(set(g.edges[a]) & set(g.edges[b])) == 1
    }


def brute_b_edges(g: LinearRGraph) -> set[frozenset[frozenset[int]]]:
    """Adjacency by the defining rule, tested on every pair of bowties."""
    bows = sorted(brute_bowties(g), key=sorted)
    out = set()
    for b1, b2 in combinations(bows, 2):
        shared = b1 & b2
        if len(shared) != 1:
            continue
        (t,) = shared
        (s1,) = b1 - shared
        (s2,) = b2 - shared
        e1, e2, et = set(g.edges[s1]), set(g.edges[s2]), set(g.edges[t])
        if len(e1 & e2) == 1 and not (e1 & e2 & et):
            out.add(frozenset((b1, b2)))
    return out


def brute_triangles(n: int, pairs: set[tuple[int, int]]) -> list[tuple[int, int, int]]:
    adj = {tuple(sorted(p)) for p in pairs}
    return [t for t in combinations(range(n), 3) if all(p in adj for p in combinations(t, 2))]


def brute_config_count(g: LinearRGraph, v: int, k: int, pool=None) -> int:
    ids = range(g.m) if pool is None else pool
    return sum(1 for sub in combinations(ids, k) if len(set().union(*(g.edges[e] for e in sub))) <= v)


@pytest.fixture(scope="session")
def acceptance_log() -> list[str]:
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
