"""Extraction of ((r-2)k+3, k)-configurations from a bowtie graph.

Two procedures are provided:

* ``pathwalk_extract`` walks a long simple path of B and collects the
  hyperedges of the bowties on it; every new hyperedge adds at most r-2
  new vertices, so the edge count passes through k with a small span.
* ``run_induction`` grows a configuration from an anchor (a vertex ``u0``,
  an edge ``T0`` through it, and partners ``T0_l`` whose bowties with
  ``T0`` lie in distinct dense components), alternating between a
  "Type 1" state (span at most (r-2)i+2, contains ``T0``) and a "Type 2"
  state that grows an inductive core ``E_sub`` inside one dense component
  ``C`` while tracking ``A``, the bowties of ``C`` made of two core edges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Any, Iterable, Sequence

from .bowtie import BowtieGraph
from .components import Anchor, ComponentReport
from .errors import (
    CrucialViolation,
    InvariantBroken,
    NoLongPath,
    StuckNoBoundary,
    StuckNoPartner,
)
from .hypergraph import Configuration, LinearRGraph, classify_triple, span

TYPE1 = "type1"
TYPE2 = "type2"


def target_span(r: int, k: int) -> int:
    return (r - 2) * k + 3


# --- path walk ----------------------------------------------------------------


def find_long_path(
    bg: BowtieGraph,
    target: int,
    rng: random.Random,
    restarts: int = 32,
    node_limit: int = 20_000,
) -> list[int]:
    """Randomized DFS with restarts; returns the longest simple path seen.

    Stops early once a path with ``target`` vertices is found.  Each restart
    expands at most ``node_limit`` DFS nodes.
    """
    n = len(bg)
    best: list[int] = []
    if n == 0:
        return best
    for _ in range(restarts):
        start = rng.randrange(n)
        path = [start]
        on_path = {start}
        first = list(bg.adjacency[start])
        rng.shuffle(first)
        stack = [iter(first)]
        expanded = 1
        while stack:
            if len(path) > len(best):
                best = list(path)
                if len(best) >= target:
                    return best
            nxt = None
            for cand in stack[-1]:
                if cand not in on_path:
                    nxt = cand
                    break
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if expanded >= node_limit:
                break
            expanded += 1
            path.append(nxt)
            on_path.add(nxt)
            nbrs = list(bg.adjacency[nxt])
            rng.shuffle(nbrs)
            stack.append(iter(nbrs))
    return best


@dataclass
class PathStep:
    index: int
    bowtie: int
    added: int | None
    m: int
    span: int

    def to_dict(self) -> dict[str, Any]:
        return {"i": self.index, "bowtie": self.bowtie, "added": self.added, "m": self.m, "span": self.span}


@dataclass
class PathWalkResult:
    config: Configuration
    path: list[int]
    steps: list[PathStep]
    order: list[int]


def walk_path(g: LinearRGraph, bg: BowtieGraph, path: Sequence[int], k: int) -> tuple[list[int], list[PathStep]]:
    """Consume ``path`` until the collected edge set reaches ``k`` edges.

    Returns the edges in collection order and the per-step trace; asserts
    the loop invariant span <= (r-2)m + 3 and unit increments of m.
    """
    r = g.r
    order: list[int] = []
    in_f: set[int] = set()
    verts: set[int] = set()
    steps: list[PathStep] = []
    prev_m = 0
    for i, b in enumerate(path):
        if i == 0:
            new_edges = list(bg.bowties[b])
        else:
            shared = set(bg.bowties[b]) & set(bg.bowties[path[i - 1]])
            if len(shared) != 1 or b not in bg.adjacency[path[i - 1]]:
                raise InvariantBroken("path adjacency", detail=f"bowties {path[i - 1]} and {b}")
            new_edges = [e for e in bg.bowties[b] if e not in shared]
        added = None
        for e in new_edges:
            if e not in in_f:
                in_f.add(e)
                order.append(e)
                verts.update(g.edges[e])
                added = e
        m = len(order)
        if i > 0 and m - prev_m > 1:
            raise InvariantBroken("unit increment", detail=f"m jumped {prev_m} -> {m}")
        if len(verts) > target_span(r, m):
            raise InvariantBroken("path-walk span", detail=f"span {len(verts)} > {target_span(r, m)} at m={m}")
        steps.append(PathStep(i, b, added, m, len(verts)))
        prev_m = m
        if m >= k:
            # k = 1 never reaches here: the first bowtie already gives m = 2
            break
    return order, steps


def pathwalk_extract(
    bg: BowtieGraph,
    k: int,
    seed: int = 0,
    restarts: int = 32,
    node_limit: int = 20_000,
) -> PathWalkResult:
    if k < 2:
        raise ValueError("k must be >= 2")
    g = bg.source
    if g is None:
        raise ValueError("path walk needs the source hypergraph")
    rng = random.Random(seed)
    path = find_long_path(bg, k * k, rng, restarts, node_limit)
    order, steps = walk_path(g, bg, path, k)
    if len(order) < k:
        raise NoLongPath(len(path), k)
    config = Configuration.of(g, order)
    if config.span > target_span(g.r, k):
        raise InvariantBroken("final span", detail=f"{config.span} > {target_span(g.r, k)}")
    return PathWalkResult(config, path[: len(steps)], steps, order)


# --- inductive configurations ---------------------------------------------------


@dataclass(frozen=True)
class InductiveCertificate:
    peel_order: tuple[int, ...]
    base: tuple[int, int]


def _degree_one_count(g: LinearRGraph, edge: int, current: Iterable[int]) -> int:
    deg: dict[int, int] = {}
    for e in current:
        for x in g.edges[e]:
            deg[x] = deg.get(x, 0) + 1
    return sum(1 for x in g.edges[edge] if deg[x] == 1)


def _in_c3(g: LinearRGraph, edge: int, current: Sequence[int]) -> bool:
    others = [e for e in current if e != edge]
    return any(classify_triple(g, edge, a, b) is not None for a, b in combinations(others, 2))


def peelable(g: LinearRGraph, edge: int, current: Sequence[int]) -> bool:
    return _in_c3(g, edge, current) and _degree_one_count(g, edge, current) == g.r - 2


def inductive_check(
    g: LinearRGraph, config: Iterable[int], T0: int | None = None
) -> InductiveCertificate | None:
    """Search for a peel order witnessing that ``config`` is inductive.

    Candidates are tried greedily by edge id with backtracking on failure.
    ``T0`` (if given) is never peeled.  Returns None when no order exists.
    """
    start = tuple(sorted(set(config)))
    if len(start) < 2:
        return None
    failed: set[tuple[int, ...]] = set()

    def search(cur: tuple[int, ...]) -> list[int] | None:
        i = len(cur)
        if span(g, cur) > target_span(g.r, i):
            return None
        if i == 2:
            return [] if g.intersection(*cur) is not None else None
        if cur in failed:
            return None
        for t in cur:
            if t == T0 or not peelable(g, t, cur):
                continue
            rest = search(tuple(e for e in cur if e != t))
            if rest is not None:
                return [t, *rest]
        failed.add(cur)
        return None

    order = search(start)
    if order is None:
        return None
    base = tuple(e for e in start if e not in order)
    return InductiveCertificate(tuple(order), base)  # type: ignore[arg-type]


def replay_certificate(g: LinearRGraph, config: Iterable[int], cert: InductiveCertificate) -> bool:
    cur = sorted(set(config))
    for t in cert.peel_order:
        if t not in cur or span(g, cur) > target_span(g.r, len(cur)) or not peelable(g, t, cur):
            return False
        cur.remove(t)
    return (
        len(cur) == 2
        and tuple(cur) == tuple(sorted(cert.base))
        and g.intersection(*cur) is not None
    )


# --- induction engine ------------------------------------------------------------


@dataclass(frozen=True)
class ExtractionState:
    kind: str
    i: int
    F: tuple[int, ...]
    E_sub: tuple[int, ...] = ()
    component: int | None = None
    A: frozenset[int] = frozenset()
    step: dict[str, Any] | None = field(default=None, compare=False)

    @property
    def j(self) -> int:
        return len(self.E_sub)

    def to_dict(self, g: LinearRGraph | None = None) -> dict[str, Any]:
        def ext(ids: Iterable[int]) -> list[int]:
            return [g.parent_ids[e] for e in ids] if g is not None and g.parent_ids is not None else list(ids)

        out: dict[str, Any] = {"type": self.kind, "i": self.i, "F": ext(self.F)}
        if g is not None:
            out["span"] = span(g, self.F)
        if self.kind == TYPE2:
            out.update(E_sub=ext(self.E_sub), j=self.j, component=self.component, A=sorted(self.A))
        if self.step is not None:
            step = dict(self.step)
            for key in ("T", "Q1", "Q2", "partner"):
                if key in step and g is not None and g.parent_ids is not None:
                    step[key] = g.parent_ids[step[key]]
            out["step"] = step
        return out


def compute_A(bg: BowtieGraph, report: ComponentReport, E_sub: Iterable[int], component: int) -> frozenset[int]:
    """Bowties of ``component`` whose two hyperedges both lie in ``E_sub``."""
    out = set()
    for s, t in combinations(sorted(set(E_sub)), 2):
        b = bg.bowtie_id(s, t)
        if b is not None and report.label[b] == component:
            out.add(b)
    return frozenset(out)


def induced_edge_count(bg: BowtieGraph, A: Iterable[int]) -> int:
    aset = set(A)
    return sum(1 for a in aset for b in bg.adjacency[a] if b in aset) // 2


def cross_edge_count(bg: BowtieGraph, X: Iterable[int], Y: Iterable[int]) -> int:
    yset = set(Y)
    return sum(1 for a in set(X) for b in bg.adjacency[a] if b in yset)


def base_state(bg: BowtieGraph, report: ComponentReport, anchor: Anchor) -> ExtractionState:
    if not anchor.partners:
        raise StuckNoPartner(ExtractionState(TYPE1, 1, (anchor.T0,)), "anchor has no partners")
    t1 = anchor.partners[0]
    b = bg.bowtie_id(anchor.T0, t1)
    if b is None:
        raise InvariantBroken("anchor bowtie", detail=f"{{T0, {t1}}} is not a bowtie")
    return ExtractionState(
        TYPE2,
        2,
        (anchor.T0, t1),
        (anchor.T0, t1),
        anchor.component_ids[0],
        frozenset({b}),
        step={"case": "base", "partner": t1, "component": anchor.component_ids[0]},
    )


def _vertices(g: LinearRGraph, ids: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for e in ids:
        out.update(g.edges[e])
    return out


def induction_step(
    g: LinearRGraph,
    bg: BowtieGraph,
    report: ComponentReport,
    anchor: Anchor,
    state: ExtractionState,
    checked: bool = True,
) -> ExtractionState:
    """Advance from i to i+1 edges (Case 1, 2.1 or 2.2)."""
    vf = _vertices(g, state.F)
    if state.kind == TYPE1:
        for ell, (t, cid) in enumerate(zip(anchor.partners, anchor.component_ids)):
            if set(g.edges[t]) & vf == {anchor.u0}:
                b = bg.bowtie_id(anchor.T0, t)
                return ExtractionState(
                    TYPE2,
                    state.i + 1,
                    state.F + (t,),
                    (anchor.T0, t),
                    cid,
                    frozenset({b}),  # type: ignore[arg-type]
                    step={"case": "1", "partner": t, "ell": ell, "component": cid},
                )
        raise StuckNoPartner(state, f"all {len(anchor.partners)} partners meet V(F) beyond u0")

    # Type 2: find b outside A adjacent to some b' in A
    found = None
    for b_in in sorted(state.A):
        for b_out in bg.adjacency[b_in]:
            if b_out not in state.A:
                found = (b_out, b_in)
                break
        if found:
            break
    if found is None:
        raise StuckNoBoundary(state, f"A covers all of component {state.component}")
    b_out, b_in = found
    if report.label[b_out] != state.component:
        raise InvariantBroken("boundary component", state)
    (shared,) = set(bg.bowties[b_out]) & set(bg.bowties[b_in])
    (t,) = set(bg.bowties[b_out]) - {shared}
    q1, q2 = sorted(bg.bowties[b_in])
    w1, w2 = g.intersection(t, q1), g.intersection(t, q2)
    if t in state.F:
        raise InvariantBroken("new edge outside F", state, f"T={t} already in F")
    meet = set(g.edges[t]) & vf
    step: dict[str, Any] = {
        "boundary": b_out,
        "inner": b_in,
        "T": t,
        "Q1": q1,
        "Q2": q2,
        "w1": w1,
        "w2": w2,
        "meet": len(meet),
    }
    if len(meet) >= 3:
        step["case"] = "2.1"
        return ExtractionState(TYPE1, state.i + 1, state.F + (t,), step=step)
    if meet != {w1, w2}:
        raise InvariantBroken("case 2.2 intersection", state, f"T meets V(F) in {sorted(meet)}")
    step["case"] = "2.2"
    e_sub = set(state.E_sub)
    cid = state.component
    a1: set[int] = set()
    a2: set[int] = set()
    for s in e_sub:
        b = bg.bowtie_id(s, t)
        if b is None or report.label[b] != cid:
            continue
        if w1 in g.edges[s]:
            a1.add(b)
        if w2 in g.edges[s]:
            a2.add(b)
    new_a = frozenset(state.A | a1 | a2)
    step["A1"] = sorted(a1)
    step["A2"] = sorted(a2)
    new_state = ExtractionState(TYPE2, state.i + 1, state.F + (t,), state.E_sub + (t,), cid, new_a, step=step)
    if checked and cid is not None:
        recomputed = compute_A(bg, report, new_state.E_sub, cid)
        if recomputed != new_a:
            raise InvariantBroken("incremental A", new_state, f"incremental {sorted(new_a)} != {sorted(recomputed)}")
    return new_state


def check_state(
    g: LinearRGraph,
    bg: BowtieGraph,
    report: ComponentReport,
    anchor: Anchor,
    state: ExtractionState,
) -> None:
    """Re-validate a state from scratch; raise InvariantBroken on failure."""
    r, i = g.r, state.i
    if len(state.F) != i or len(set(state.F)) != i:
        raise InvariantBroken("edge count", state, f"|F| = {len(set(state.F))}, i = {i}")
    if anchor.T0 not in state.F:
        raise InvariantBroken("T0 in F", state)
    sp = span(g, state.F)
    if state.kind == TYPE1:
        if sp > (r - 2) * i + 2:
            raise InvariantBroken("type1 span", state, f"{sp} > {(r - 2) * i + 2}")
        return
    if sp > target_span(r, i):
        raise InvariantBroken("type2 span", state, f"{sp} > {target_span(r, i)}")
    e_sub = set(state.E_sub)
    if not e_sub <= set(state.F) or len(e_sub) != len(state.E_sub):
        raise InvariantBroken("E_sub subset of F", state)
    if anchor.T0 not in e_sub or state.j < 2:
        raise InvariantBroken("P1", state, "T0 missing from E_sub or j < 2")
    if inductive_check(g, e_sub, anchor.T0) is None:
        raise InvariantBroken("P1", state, "E_sub is not inductive")
    rest = [e for e in state.F if e not in e_sub]
    shared = _vertices(g, e_sub) & _vertices(g, rest)
    if not shared <= set(g.edges[anchor.T0]):
        raise InvariantBroken("P2", state, f"shared vertices {sorted(shared)} not in T0")
    if state.component not in anchor.component_ids or not report.dense_flags[state.component]:
        raise InvariantBroken("component", state, f"{state.component} is not an anchor dense component")
    a_full = compute_A(bg, report, e_sub, state.component)
    if a_full != state.A:
        raise InvariantBroken("P3", state, "A differs from its recomputation")
    if not a_full:
        raise InvariantBroken("P3", state, "A is empty")
    e_a = induced_edge_count(bg, a_full)
    if not 2 * e_a < 3 * (r - 1) * len(a_full):
        raise InvariantBroken("P3", state, f"2 e(B[A]) = {2 * e_a} >= 3(r-1)|A| = {3 * (r - 1) * len(a_full)}")


@dataclass
class NiceReport:
    A1: list[int]
    A2: list[int]
    e_A_A1: int
    e_A_A2: int
    e_A1_A2: int
    e_A1: int
    e_A2: int
    common_vertices: int
    nice: list[tuple[int, int, int]]
    tripartite_edges: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "A1": self.A1,
            "A2": self.A2,
            "e_A_A1": self.e_A_A1,
            "e_A_A2": self.e_A_A2,
            "e_A1_A2": self.e_A1_A2,
            "e_A1": self.e_A1,
            "e_A2": self.e_A2,
            "common_vertices": self.common_vertices,
            "nice_count": len(self.nice),
            "tripartite_edges": self.tripartite_edges,
        }


def nice_count_check(
    g: LinearRGraph,
    bg: BowtieGraph,
    report: ComponentReport,
    before: ExtractionState,
    after: ExtractionState,
) -> NiceReport:
    """Recompute the bookkeeping of a Case 2.2 transition from first principles.

    Checks that the three bipartite edge counts between A, A1 and A2 all
    equal the number of vertices shared by M1 and M2 (the (r-1)-sets left by
    removing w1, w2 from the A1, A2 hyperedges) and the number of "nice"
    C3s, that those C3s decompose the tripartite graph into edge-disjoint
    triangles, and that A1, A2 are independent.
    """
    step = after.step or {}
    if step.get("case") != "2.2":
        raise ValueError("nice_count_check applies to Case 2.2 transitions only")
    t, w1, w2 = step["T"], step["w1"], step["w2"]
    cid = before.component
    e_sub = sorted(set(before.E_sub))
    a = compute_A(bg, report, e_sub, cid)  # type: ignore[arg-type]

    def side(w: int) -> tuple[set[int], list[frozenset[int]]]:
        bows, tsets = set(), []
        for s in e_sub:
            if w in g.edges[s]:
                b = bg.bowtie_id(s, t)
                if b is not None and report.label[b] == cid:
                    bows.add(b)
                    tsets.append(frozenset(g.edges[s]) - {w})
        return bows, tsets

    a1, m1 = side(w1)
    a2, m2 = side(w2)
    v_m1 = set().union(*m1) if m1 else set()
    v_m2 = set().union(*m2) if m2 else set()
    common = len(v_m1 & v_m2)

    nice = []
    for s1 in e_sub:
        if w1 not in g.edges[s1]:
            continue
        for s2 in e_sub:
            if s2 == s1 or w2 not in g.edges[s2]:
                continue
            if classify_triple(g, t, s1, s2) is None:
                continue
            ids = (bg.bowtie_id(s1, s2), bg.bowtie_id(s1, t), bg.bowtie_id(s2, t))
            if None in ids or any(report.label[x] != cid for x in ids):  # type: ignore[index]
                continue
            nice.append(ids)

    res = NiceReport(
        A1=sorted(a1),
        A2=sorted(a2),
        e_A_A1=cross_edge_count(bg, a, a1),
        e_A_A2=cross_edge_count(bg, a, a2),
        e_A1_A2=cross_edge_count(bg, a1, a2),
        e_A1=induced_edge_count(bg, a1),
        e_A2=induced_edge_count(bg, a2),
        common_vertices=common,
        nice=nice,  # type: ignore[arg-type]
        tripartite_edges=0,
    )
    res.tripartite_edges = res.e_A_A1 + res.e_A_A2 + res.e_A1_A2

    def fail(msg: str) -> None:
        raise CrucialViolation(msg, res)

    if len(m1) != len(a1) or len(m2) != len(a2):
        fail("|M_x| != |A'_x|")
    if a & a1 or a & a2 or a1 & a2:
        fail("A, A1, A2 are not pairwise disjoint")
    if after.A != a | a1 | a2:
        fail("A after the step is not A u A1 u A2")
    counts = {res.e_A_A1, res.e_A_A2, res.e_A1_A2, common, len(nice)}
    if len(counts) != 1:
        fail(
            f"crucial equalities fail: e(A,A1)={res.e_A_A1} e(A,A2)={res.e_A_A2} "
            f"e(A1,A2)={res.e_A1_A2} |V(M1)&V(M2)|={common} |N|={len(nice)}"
        )
    if res.e_A1 or res.e_A2:
        fail(f"A1/A2 not independent: e(A1)={res.e_A1} e(A2)={res.e_A2}")
    if 3 * len(nice) != res.tripartite_edges:
        fail(f"3|N| = {3 * len(nice)} != tripartite edge count {res.tripartite_edges}")
    covered: set[frozenset[int]] = set()
    for b, b1, b2 in nice:
        for x, y in ((b, b1), (b, b2), (b1, b2)):
            if y not in bg.adjacency[x]:
                fail(f"nice configuration bowties {x}, {y} not adjacent")
            key = frozenset((x, y))
            if key in covered:
                fail("nice triangles are not edge-disjoint")
            covered.add(key)
    tri_edges = {
        frozenset((x, y))
        for xs, ys in ((a, a1), (a, a2), (a1, a2))
        for x in xs
        for y in bg.adjacency[x]
        if y in ys
    }
    if covered != tri_edges:
        fail("nice triangles do not cover the tripartite graph")
    return res


@dataclass
class InductionResult:
    config: Configuration
    states: list[ExtractionState]
    nice_reports: list[NiceReport]
    counts: dict[str, int]


def run_induction(
    g: LinearRGraph,
    bg: BowtieGraph,
    report: ComponentReport,
    anchor: Anchor,
    k: int,
    checked: bool = True,
) -> InductionResult:
    """Iterate ``induction_step`` from the base state until i = k.

    With ``checked`` every state is re-validated from scratch and every
    Case 2.2 transition is run through ``nice_count_check``.  A ``Stuck``
    exception carries the trace so far as ``exc.trace``.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    state = base_state(bg, report, anchor)
    states = [state]
    nice_reports: list[NiceReport] = []
    counts = {"1": 0, "2.1": 0, "2.2": 0}
    if checked:
        check_state(g, bg, report, anchor, state)
    while state.i < k:
        try:
            nxt = induction_step(g, bg, report, anchor, state, checked=checked)
        except (StuckNoPartner, StuckNoBoundary) as exc:
            exc.trace = states  # type: ignore[attr-defined]
            raise
        counts[nxt.step["case"]] += 1  # type: ignore[index]
        if checked:
            check_state(g, bg, report, anchor, nxt)
            if nxt.step and nxt.step["case"] == "2.2":
                nice_reports.append(nice_count_check(g, bg, report, state, nxt))
        state = nxt
        states.append(state)
    config = Configuration.of(g, state.F)
    if config.k != k or config.span > target_span(g.r, k):
        raise InvariantBroken("final configuration", state, f"k={config.k}, span={config.span}")
    return InductionResult(config, states, nice_reports, counts)


def with_anchor_partners(anchor: Anchor, limit: int) -> Anchor:
    return replace(anchor, partners=anchor.partners[:limit], component_ids=anchor.component_ids[:limit])
