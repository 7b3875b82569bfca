"""Connected components of the bowtie graph, density, and anchor selection."""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .bowtie import BowtieGraph
from .errors import InsufficientAnchors


@dataclass(frozen=True)
class Component:
    id: int
    bowties: tuple[int, ...]
    edge_count: int

    @property
    def size(self) -> int:
        return len(self.bowties)

    @property
    def avg_degree(self) -> Fraction:
        return Fraction(2 * self.edge_count, self.size)


@dataclass
class ComponentReport:
    r: int
    components: list[Component]
    label: list[int]
    dense_flags: list[bool]

    @property
    def dense_count(self) -> int:
        return sum(self.dense_flags)

    @property
    def largest_size(self) -> int:
        return max((c.size for c in self.components), default=0)

    @property
    def total_size(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def total_edges(self) -> int:
        return sum(c.edge_count for c in self.components)

    @property
    def avg_degree_overall(self) -> Fraction:
        size = self.total_size
        return Fraction(2 * self.total_edges, size) if size else Fraction(0)

    def is_dense(self, comp_id: int) -> bool:
        return self.dense_flags[comp_id]

    def to_dict(self, k: int | None = None) -> dict[str, Any]:
        out: dict[str, Any] = {
            "component_count": len(self.components),
            "dense_count": self.dense_count,
            "largest_size": self.largest_size,
            "avg_degree_overall": float(self.avg_degree_overall),
            "dense_threshold": 3 * (self.r - 1),
            "components": [
                {
                    "id": c.id,
                    "size": c.size,
                    "edge_count": c.edge_count,
                    "avg_degree": float(c.avg_degree),
                    "threshold_3r_minus_3_met": self.dense_flags[c.id],
                }
                for c in self.components
            ],
        }
        if k is not None:
            cap = self.r ** (10 * k * k)
            out["large_component_threshold"] = str(cap)
            out["has_large_component"] = self.largest_size >= cap
        return out


def is_dense(edge_count: int, size: int, r: int) -> bool:
    # average degree 2e/size >= 3(r-1), compared without division
    return size > 0 and 2 * edge_count >= 3 * (r - 1) * size


def components(bg: BowtieGraph) -> ComponentReport:
    n = len(bg)
    label = [-1] * n
    comps: list[Component] = []
    for start in range(n):
        if label[start] != -1:
            continue
        cid = len(comps)
        label[start] = cid
        members = [start]
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in bg.adjacency[a]:
                if label[b] == -1:
                    label[b] = cid
                    members.append(b)
                    queue.append(b)
        members.sort()
        edges = sum(len(bg.adjacency[a]) for a in members) // 2
        comps.append(Component(cid, tuple(members), edges))
    dense = [is_dense(c.edge_count, c.size, bg.r) for c in comps]
    return ComponentReport(bg.r, comps, label, dense)


@dataclass(frozen=True)
class Anchor:
    u0: int
    T0: int
    partners: tuple[int, ...]
    component_ids: tuple[int, ...]

    def to_dict(self, parent_ids: tuple[int, ...] | None = None) -> dict[str, Any]:
        def ext(e: int) -> int:
            return parent_ids[e] if parent_ids is not None else e

        return {
            "u0": self.u0,
            "T0": ext(self.T0),
            "partners": [ext(p) for p in self.partners],
            "component_ids": list(self.component_ids),
        }


def _dense_pool(bg: BowtieGraph, report: ComponentReport, size_cap: int | None) -> set[int]:
    pool = set()
    for c in report.components:
        if report.dense_flags[c.id] and (size_cap is None or c.size <= size_cap):
            pool.update(c.bowties)
    return pool


def _other(bg: BowtieGraph, b: int, e: int) -> int:
    s, t = bg.bowties[b]
    return t if s == e else s


def select_anchor(
    bg: BowtieGraph,
    report: ComponentReport,
    required: int = 1,
    size_cap: int | None = None,
) -> Anchor:
    """Deterministic anchor: pick by repeated maximisation.

    Among bowties of dense components (of size at most ``size_cap``), take
    the centre ``u0`` carrying the most of them, then the hyperedge ``T0``
    through ``u0`` appearing in the most, then keep the first partner per
    distinct component.  Ties go to the smallest id.
    """
    if required < 1:
        raise ValueError("required must be >= 1")
    pool = _dense_pool(bg, report, size_cap)
    if not pool:
        raise InsufficientAnchors(0, required)
    per_centre: dict[int, list[int]] = defaultdict(list)
    for b in sorted(pool):
        per_centre[bg.centres[b]].append(b)
    u0 = max(per_centre, key=lambda u: (len(per_centre[u]), -u))
    per_edge: dict[int, list[int]] = defaultdict(list)
    for b in per_centre[u0]:
        for e in bg.bowties[b]:
            per_edge[e].append(b)
    t0 = max(per_edge, key=lambda e: (len(per_edge[e]), -e))
    partners, comp_ids = [], []
    seen: set[int] = set()
    for b in sorted(per_edge[t0], key=lambda b: _other(bg, b, t0)):
        cid = report.label[b]
        if cid in seen:
            continue
        seen.add(cid)
        partners.append(_other(bg, b, t0))
        comp_ids.append(cid)
    if len(partners) < required:
        raise InsufficientAnchors(len(partners), required)
    return Anchor(u0, t0, tuple(partners), tuple(comp_ids))


def random_anchor(
    bg: BowtieGraph,
    report: ComponentReport,
    rng: random.Random,
    size_cap: int | None = None,
) -> Anchor:
    """An anchor with a uniformly chosen dense bowtie as seed.

    The seed bowtie fixes ``u0`` (its centre) and ``T0`` (one of its edges);
    partners are then drawn at random, one per distinct dense component.
    """
    pool = sorted(_dense_pool(bg, report, size_cap))
    if not pool:
        raise InsufficientAnchors(0, 1)
    seed_b = rng.choice(pool)
    u0 = bg.centres[seed_b]
    t0 = rng.choice(bg.bowties[seed_b])
    by_comp: dict[int, list[int]] = defaultdict(list)
    pool_set = set(pool)
    for b in bg.centre_groups[u0]:
        if b in pool_set and t0 in bg.bowties[b]:
            by_comp[report.label[b]].append(_other(bg, b, t0))
    comp_ids = sorted(by_comp)
    rng.shuffle(comp_ids)
    partners = tuple(rng.choice(sorted(by_comp[c])) for c in comp_ids)
    return Anchor(u0, t0, partners, tuple(comp_ids))


def check_anchor(bg: BowtieGraph, report: ComponentReport, anchor: Anchor) -> None:
    """Raise AssertionError unless every anchor invariant holds."""
    g = bg.source
    if len(set(anchor.partners)) != len(anchor.partners):
        raise AssertionError("anchor partners not distinct")
    if len(set(anchor.component_ids)) != len(anchor.component_ids):
        raise AssertionError("anchor components not distinct")
    if g is not None and anchor.u0 not in g.edges[anchor.T0]:
        raise AssertionError("u0 not in T0")
    for p, cid in zip(anchor.partners, anchor.component_ids):
        if g is not None and anchor.u0 not in g.edges[p]:
            raise AssertionError(f"partner {p} misses u0")
        b = bg.bowtie_id(anchor.T0, p)
        if b is None or report.label[b] != cid:
            raise AssertionError(f"bowtie {{T0, {p}}} not in component {cid}")
        if bg.centres[b] != anchor.u0:
            raise AssertionError(f"bowtie {{T0, {p}}} not centred at u0")
        if not report.dense_flags[cid]:
            raise AssertionError(f"component {cid} is not dense")
